#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace radlab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Philox4x32-10 block cipher (Salmon et al.), used as a counter-based
// generator: output is a pure function of (counter, key), so streams can be
// materialized in any order, or in parallel, with identical results.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
      ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
             std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// One logical random stream addressed by (seed, tag, index). The tag
// separates roles (families, operand slots, restart lines) so that streams
// never alias each other.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t tag, std::uint64_t index)
      : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
        tag_(tag),
        index_lo_(std::uint32_t(index)),
        index_hi_(std::uint32_t(index >> 32)) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      buf_ = Philox4x32::block({draw_++, tag_, index_lo_, index_hi_}, key_);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // Uniform on the open interval (0,1); never returns an endpoint.
  double uniform01() {
    return (double(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u));
    const double ang = kTwoPi * v;
    cached_ = rad * std::sin(ang);
    has_cached_ = true;
    return rad * std::cos(ang);
  }

  // Standard complex normal, E|z|^2 = 1.
  std::complex<double> complex_normal() {
    const double u = uniform01();
    const double v = uniform01();
    const double rad = std::sqrt(-std::log(u));
    const double ang = kTwoPi * v;
    return {rad * std::cos(ang), rad * std::sin(ang)};
  }

  // Uniform on the closed unit disk of the complex plane.
  std::complex<double> unit_disk() {
    const double r = std::sqrt(uniform01());
    const double ang = kTwoPi * uniform01();
    return {r * std::cos(ang), r * std::sin(ang)};
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t tag_;
  std::uint32_t index_lo_, index_hi_;
  std::uint32_t draw_ = 0;
  Philox4x32::Counter buf_{};
  int pos_ = 4;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace radlab

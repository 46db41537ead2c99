#include <catch2/catch_amalgamated.hpp>

#include "radlab/rng.hpp"

using namespace radlab;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // reference vectors from the Random123 test suite
  {
    const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    const auto out = Philox4x32::block(
        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
        {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
  {
    const auto out = Philox4x32::block(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
        {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
  }
}

TEST_CASE("streams are pure functions of (seed, tag, index)") {
  CounterRng a(42, 7, 3), b(42, 7, 3);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u32() == b.next_u32());

  CounterRng c(42, 7, 4), d(42, 8, 3), e(43, 7, 3);
  CounterRng ref(42, 7, 3);
  const auto r0 = ref.next_u64();
  CHECK(c.next_u64() != r0);
  CHECK(d.next_u64() != r0);
  CHECK(e.next_u64() != r0);
}

TEST_CASE("uniform01 stays inside the open interval") {
  CounterRng rng(1, 1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal and complex normal have sane first moments") {
  CounterRng rng(5, 2, 0);
  double sum = 0.0, sumsq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sumsq / n - 1.0) < 0.02);

  double e2 = 0.0;
  for (int i = 0; i < n; ++i) e2 += std::norm(rng.complex_normal());
  CHECK(std::abs(e2 / n - 1.0) < 0.02);
}

TEST_CASE("unit disk samples stay in the disk") {
  CounterRng rng(9, 3, 1);
  for (int i = 0; i < 10000; ++i) REQUIRE(std::abs(rng.unit_disk()) <= 1.0 + 1e-15);
}

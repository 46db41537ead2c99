#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "radlab/matrix.hpp"
#include "radlab/numrad.hpp"

namespace radlab {

namespace detail {

// Full-precision decimal rendering: 17 significant digits round-trip any
// double exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Matrix file format: {"n": int, "re": [[...]], "im": [[...]]}, row-major;
// "im" may be omitted for real matrices.
inline CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re"))
    throw ParseError("matrix json: expected object with \"n\" and \"re\"");
  if (!j["n"].is_number_integer())
    throw ParseError("matrix json: \"n\" must be an integer");
  const long long n = j["n"].get<long long>();
  if (n < 1 || n > kMaxDim)
    throw UnsupportedDim("matrix json: n must be in [1, " +
                         std::to_string(kMaxDim) + "]");
  const bool has_im = j.contains("im");
  auto read_plane = [&](const nlohmann::json& plane, const char* name,
                        auto&& setter) {
    if (!plane.is_array() || (long long)plane.size() != n)
      throw ParseError(std::string("matrix json: \"") + name + "\" must be an " +
                       std::to_string(n) + "x" + std::to_string(n) + " array");
    for (long long i = 0; i < n; ++i) {
      const auto& row = plane[std::size_t(i)];
      if (!row.is_array() || (long long)row.size() != n)
        throw ParseError(std::string("matrix json: ragged row in \"") + name + "\"");
      for (long long k = 0; k < n; ++k) {
        if (!row[std::size_t(k)].is_number())
          throw ParseError(std::string("matrix json: non-numeric entry in \"") +
                           name + "\"");
        setter(i, k, row[std::size_t(k)].get<double>());
      }
    }
  };
  CMatrix m = CMatrix::Zero(n, n);
  read_plane(j["re"], "re", [&](long long i, long long k, double v) {
    m(i, k) = Complex(v, m(i, k).imag());
  });
  if (has_im)
    read_plane(j["im"], "im", [&](long long i, long long k, double v) {
      m(i, k) = Complex(m(i, k).real(), v);
    });
  if (!m.allFinite()) throw ParseError("matrix json: non-finite entry");
  return m;
}

inline nlohmann::ordered_json matrix_to_json(const CMatrix& m) {
  validate_operand(m);
  nlohmann::ordered_json j;
  j["n"] = m.rows();
  auto plane = [&](auto&& get) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(get(i, k));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["re"] = plane([&](Eigen::Index i, Eigen::Index k) { return m(i, k).real(); });
  if (!is_real(m))
    j["im"] = plane([&](Eigen::Index i, Eigen::Index k) { return m(i, k).imag(); });
  return j;
}

// Standalone matrix file with 17-significant-digit entries.
inline std::string matrix_to_text(const CMatrix& m) {
  validate_operand(m);
  std::ostringstream out;
  auto plane = [&](auto&& get) {
    out << "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out << (i ? ",\n         [" : "[");
      for (Eigen::Index k = 0; k < m.cols(); ++k)
        out << (k ? ", " : "") << detail::fmt17(get(i, k));
      out << "]";
    }
    out << "]";
  };
  out << "{\"n\": " << m.rows() << ",\n  \"re\": ";
  plane([&](Eigen::Index i, Eigen::Index k) { return m(i, k).real(); });
  if (!is_real(m)) {
    out << ",\n  \"im\": ";
    plane([&](Eigen::Index i, Eigen::Index k) { return m(i, k).imag(); });
  }
  out << "}\n";
  return out.str();
}

inline CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("matrix file " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

inline void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for write: " + path);
  out << matrix_to_text(m);
  if (!out) throw IoError("write failed: " + path);
}

// Boundary-sample export: "theta,re,im" rows, then a final summary row
// labelled "w" carrying w(T) and ||T||.
inline void write_fov_csv(const std::string& path, const std::vector<FovPoint>& pts,
                          double w, double opnorm) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for write: " + path);
  out << "theta,re,im\n";
  for (const auto& p : pts)
    out << detail::fmt17(p.theta) << "," << detail::fmt17(p.value.real()) << ","
        << detail::fmt17(p.value.imag()) << "\n";
  out << "w," << detail::fmt17(w) << "," << detail::fmt17(opnorm) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace radlab

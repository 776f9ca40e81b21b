#pragma once

#include "framekit/linalg.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace framekit {

struct LoadedMatrix {
  Matrix matrix;
  std::string kind;  // empty when the file carries no kind tag
};

/// MatrixFile JSON: {"rows": int, "cols": int, "kind": string?, "data":
/// [[re, im], ...]} with data row-major. Entries must be finite; doubles are
/// emitted with shortest round-trip precision, so parse(serialize(M)) == M
/// bit for bit.
inline nlohmann::json matrix_to_json(const Matrix& m, const std::string& kind = {}) {
  if (m.rows() < 1 || m.cols() < 1)
    throw std::invalid_argument("matrix_to_json: matrix must be nonempty");
  if (!m.allFinite())
    throw std::invalid_argument("matrix_to_json: non-finite entries");
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  if (!kind.empty()) j["kind"] = kind;
  nlohmann::json data = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k)
      data.push_back({m(i, k).real(), m(i, k).imag()});
  j["data"] = std::move(data);
  return j;
}

inline LoadedMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw std::invalid_argument("matrix file: top level must be an object");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw std::invalid_argument("matrix file: rows, cols and data are required");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw std::invalid_argument("matrix file: rows and cols must be integers");
  const auto rows = j["rows"].get<std::int64_t>();
  const auto cols = j["cols"].get<std::int64_t>();
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("matrix file: rows and cols must be positive");
  std::string kind;
  if (j.contains("kind")) {
    if (!j["kind"].is_string())
      throw std::invalid_argument("matrix file: kind must be a string");
    kind = j["kind"].get<std::string>();
    if (kind != "frame" && kind != "subspace_basis" && kind != "vector")
      throw std::invalid_argument("matrix file: unknown kind '" + kind + "'");
  }
  const auto& data = j["data"];
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols))
    throw std::invalid_argument("matrix file: data length must equal rows * cols");
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (std::int64_t i = 0; i < rows; ++i)
    for (std::int64_t k = 0; k < cols; ++k, ++idx) {
      const auto& entry = data[idx];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        throw std::invalid_argument("matrix file: each entry must be an [re, im] pair");
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument("matrix file: non-finite entry");
      m(i, k) = Complex(re, im);
    }
  return {std::move(m), std::move(kind)};
}

inline void write_matrix_file(const std::filesystem::path& path, const Matrix& m,
                              const std::string& kind = {}) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << matrix_to_json(m, kind).dump(2) << '\n';
  out.flush();
  if (!out)
    throw std::runtime_error("write failed: " + path.string());
}

inline LoadedMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open: " + path.string());
  return matrix_from_json(nlohmann::json::parse(in));
}

/// Trajectory CSV: header "iteration,fp", one row per accepted step, 17
/// significant digits.
inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const std::vector<double>& fp_values) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << "iteration,fp\n";
  char line[64];
  for (std::size_t i = 0; i < fp_values.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.17g\n", i + 1, fp_values[i]);
    out << line;
  }
  out.flush();
  if (!out)
    throw std::runtime_error("write failed: " + path.string());
}

}  // namespace framekit

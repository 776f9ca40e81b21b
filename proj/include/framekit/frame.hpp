#pragma once

#include "framekit/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <utility>

namespace framekit {

inline constexpr double kDefaultTolerance = 1e-8;

/// An ordered tuple of s vectors in C^dim, stored as the dim x s matrix whose
/// columns are the vectors. Immutable; the frame operator S = Phi Phi* is
/// computed at most once (compute-then-publish) and shared between copies.
class Frame {
 public:
  explicit Frame(Matrix vectors)
      : mat_(std::move(vectors)), cache_(std::make_shared<OperatorCache>()) {
    if (mat_.rows() < 1 || mat_.cols() < 1)
      throw std::invalid_argument("Frame: need at least one vector of dimension >= 1");
    if (!mat_.allFinite())
      throw std::invalid_argument("Frame: vectors contain non-finite entries");
  }

  Index dim() const { return mat_.rows(); }
  Index size() const { return mat_.cols(); }
  const Matrix& matrix() const { return mat_; }
  Vector vector(Index j) const { return mat_.col(j); }

  const Matrix& frame_operator() const {
    std::call_once(cache_->once, [this] { cache_->s = mat_ * mat_.adjoint(); });
    return cache_->s;
  }

 private:
  struct OperatorCache {
    std::once_flag once;
    Matrix s;
  };

  Matrix mat_;
  std::shared_ptr<OperatorCache> cache_;
};

/// Optimal constants of the two-sided energy inequality: the extremal
/// eigenvalues of the frame operator.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct FrameReport {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool is_frame = false;
  bool is_tight = false;
  bool is_unit_norm = false;
  bool is_funtf = false;
  bool is_onb = false;
  double tolerance = 0.0;
};

/// Coefficient sequence {<f, phi_j>}_j, i.e. Phi* f.
inline Vector analysis(const Frame& phi, const Vector& f) {
  if (f.size() != phi.dim())
    throw std::invalid_argument("analysis: vector dimension mismatch");
  return phi.matrix().adjoint() * f;
}

/// Linear combination sum_j c_j phi_j, i.e. Phi c. Adjoint of analysis.
inline Vector synthesis(const Frame& phi, const Vector& coefficients) {
  if (coefficients.size() != phi.size())
    throw std::invalid_argument("synthesis: coefficient length mismatch");
  return phi.matrix() * coefficients;
}

inline FrameBounds frame_bounds(const Frame& phi) {
  const RealVector eig = hermitian_eigenvalues(phi.frame_operator());
  // S is positive semidefinite; negative rounding noise is clamped to zero.
  return {std::max(eig(0), 0.0), std::max(eig(eig.size() - 1), 0.0)};
}

inline FrameReport classify(const Frame& phi, double tol = kDefaultTolerance) {
  if (!(tol > 0.0))
    throw std::invalid_argument("classify: tolerance must be positive");
  const FrameBounds bounds = frame_bounds(phi);
  FrameReport report;
  report.lower_bound = bounds.lower;
  report.upper_bound = bounds.upper;
  report.tolerance = tol;
  report.is_frame = bounds.lower > tol;
  report.is_tight = (bounds.upper - bounds.lower) / std::max(bounds.upper, tol) <= tol;
  double worst_norm_deviation = 0.0;
  for (Index j = 0; j < phi.size(); ++j)
    worst_norm_deviation =
        std::max(worst_norm_deviation, std::abs(phi.matrix().col(j).norm() - 1.0));
  report.is_unit_norm = worst_norm_deviation <= tol;
  report.is_funtf = report.is_frame && report.is_tight && report.is_unit_norm;
  report.is_onb = report.is_funtf && std::abs(bounds.lower - 1.0) <= tol;
  return report;
}

/// Dual frame {S^-1 phi_j}. Near-singular inputs (lower bound <= tol) are
/// refused rather than regularized.
inline Frame dual_frame(const Frame& phi, double tol = kDefaultTolerance) {
  const FrameBounds bounds = frame_bounds(phi);
  if (!(bounds.lower > tol))
    throw not_invertible_error("dual_frame: not a frame (lower bound " +
                               std::to_string(bounds.lower) + " <= tolerance)");
  return Frame(solve_hpd(phi.frame_operator(), phi.matrix()));
}

/// sum_j <f, dual_j> phi_j. With dual = dual_frame(phi) this recovers f; the
/// swapped form is reconstruct(dual, phi, f).
inline Vector reconstruct(const Frame& phi, const Frame& dual, const Vector& f) {
  if (phi.dim() != dual.dim() || phi.size() != dual.size())
    throw std::invalid_argument("reconstruct: frame and dual have mismatched shapes");
  return synthesis(phi, analysis(dual, f));
}

/// Deterministic FUNTF generator: phi_j[k] = exp(2*pi*i*j*k/s)/sqrt(n). Its
/// frame operator is (s/n) I, an ONB when s == n.
inline Frame harmonic_frame(Index s, Index n) {
  if (n < 1 || s < n)
    throw std::invalid_argument("harmonic_frame: s < N (need s >= N >= 1)");
  Matrix m(n, s);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index j = 0; j < s; ++j)
    for (Index k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi *
                           static_cast<double>((j * k) % s) / static_cast<double>(s);
      m(k, j) = std::polar(scale, angle);
    }
  return Frame(std::move(m));
}

namespace detail {

// Standard complex Gaussian entries via Box-Muller over raw mt19937_64 draws,
// so a seed pins the output independent of the standard library.
inline Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& gen) {
  auto canonical = [&gen] {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
  };
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double u1 = 1.0 - canonical();  // (0, 1]
      const double u2 = canonical();
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      m(i, j) = Complex(radius * std::cos(angle), radius * std::sin(angle));
    }
  return m;
}

}  // namespace detail

/// s independent complex Gaussian vectors normalized to the unit sphere.
/// Deterministic given the seed.
inline Frame random_unit_frame(Index s, Index dim, std::uint64_t seed) {
  if (s < 1 || dim < 1)
    throw std::invalid_argument("random_unit_frame: s and dim must be >= 1");
  std::mt19937_64 gen(seed);
  Matrix m = detail::gaussian_matrix(dim, s, gen);
  for (Index j = 0; j < s; ++j) {
    double norm = m.col(j).norm();
    while (norm == 0.0) {
      m.col(j) = detail::gaussian_matrix(dim, 1, gen);
      norm = m.col(j).norm();
    }
    m.col(j) /= norm;
  }
  return Frame(std::move(m));
}

}  // namespace framekit

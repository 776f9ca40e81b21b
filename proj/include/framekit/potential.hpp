#pragma once

#include "framekit/subspace.hpp"

#include <cstddef>
#include <vector>

namespace framekit {

/// Frame potential FP(Phi) = sum_j sum_k |<phi_j, phi_k>|^2, evaluated as the
/// literal double sum.
inline double frame_potential(const Frame& phi) {
  double fp = 0.0;
  const Matrix& m = phi.matrix();
  for (Index j = 0; j < phi.size(); ++j)
    for (Index k = 0; k < phi.size(); ++k)
      fp += std::norm(inner(m.col(j), m.col(k)));
  return fp;
}

/// The same quantity through the frame operator: Tr(S^2). Serves as an
/// algebraically independent route for cross-checking frame_potential.
inline double frame_potential_via_trace(const Frame& phi) {
  const Matrix& s = phi.frame_operator();
  return (s * s).trace().real();
}

/// Frame potential of a system constrained to W. Equals FP(Phi) and, through
/// the coordinate reduction, FP(Phi_W). Requires containment.
inline double restricted_frame_potential(const Frame& phi, const Subspace& w,
                                         double tol = kDefaultTolerance) {
  require_contained(phi, w, tol);
  return frame_potential(phi);
}

/// Theoretical minimum of the frame potential over s unit vectors in
/// dimension d: s when s <= d (orthonormal sequences), s^2/d otherwise
/// (FUNTFs).
inline double fp_minimum(Index s, Index d) {
  if (s < 1 || d < 1)
    throw std::invalid_argument("fp_minimum: s and d must be >= 1");
  if (s <= d) return static_cast<double>(s);
  return static_cast<double>(s) * static_cast<double>(s) / static_cast<double>(d);
}

struct MinimizerConfig {
  std::uint64_t seed = 0;
  std::size_t max_iters = 10000;
  double grad_tol = 1e-9;
  // FP converges quadratically in the distance from the minimizing manifold
  // (FP - min = |S - AI|_F^2), so a classification quality of 1e-6 needs an
  // FP tolerance near its square.
  double fp_tol = 1e-14;
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;
};

struct MinimizerResult {
  Frame frame;
  double final_fp = 0.0;
  std::vector<double> fp_trajectory;  // FP after each accepted step
  std::size_t iterations = 0;
  bool converged = false;
  double target_fp = 0.0;
};

namespace detail {

inline double fp_of_matrix(const Matrix& m) {
  return Matrix(m.adjoint() * m).squaredNorm();  // |Gram|_F^2 = double sum
}

inline void validate(const MinimizerConfig& cfg) {
  if (!(cfg.grad_tol > 0.0) || !(cfg.fp_tol > 0.0) || !(cfg.initial_step > 0.0) ||
      !(cfg.armijo_c > 0.0))
    throw std::invalid_argument("MinimizerConfig: tolerances and steps must be positive");
  if (!(cfg.backtrack_factor > 0.0) || !(cfg.backtrack_factor < 1.0))
    throw std::invalid_argument("MinimizerConfig: backtrack_factor must lie in (0,1)");
}

}  // namespace detail

/// Projected gradient descent on the product of unit spheres. Euclidean
/// gradient of FP at phi_j is 4 S phi_j; the Riemannian gradient projects out
/// the phi_j component; the retraction renormalizes. Steps are chosen by
/// Armijo backtracking restarted from initial_step. Converged means the
/// Riemannian gradient max-norm fell below grad_tol or FP reached the known
/// theoretical minimum within fp_tol.
inline MinimizerResult minimize_fp(Index s, Index n, const MinimizerConfig& cfg) {
  detail::validate(cfg);
  constexpr double kMinStep = 1e-20;
  const double target = fp_minimum(s, n);

  Matrix phi = random_unit_frame(s, n, cfg.seed).matrix();
  double fp = detail::fp_of_matrix(phi);
  std::vector<double> trajectory;
  trajectory.reserve(std::min<std::size_t>(cfg.max_iters, 4096));
  std::size_t iterations = 0;
  bool converged = false;

  while (true) {
    if (std::abs(fp - target) <= cfg.fp_tol * std::max(1.0, target)) {
      converged = true;
      break;
    }
    const Matrix s_op = phi * phi.adjoint();
    const Matrix euclid_grad = 4.0 * (s_op * phi);
    Matrix grad = euclid_grad;
    for (Index j = 0; j < s; ++j)
      grad.col(j) -= phi.col(j) * phi.col(j).dot(euclid_grad.col(j));
    if (max_abs(grad) <= cfg.grad_tol) {
      converged = true;
      break;
    }
    if (iterations >= cfg.max_iters) break;

    const double grad_sq = grad.squaredNorm();
    double step = cfg.initial_step;
    bool accepted = false;
    while (step >= kMinStep) {
      Matrix candidate = phi - step * grad;
      for (Index j = 0; j < s; ++j) candidate.col(j).normalize();
      const double candidate_fp = detail::fp_of_matrix(candidate);
      if (candidate_fp <= fp - cfg.armijo_c * step * grad_sq) {
        phi = std::move(candidate);
        fp = candidate_fp;
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) break;  // line search exhausted: gradient numerically flat
    ++iterations;
    if (trajectory.size() < cfg.max_iters) trajectory.push_back(fp);
  }

  return {Frame(std::move(phi)), fp, std::move(trajectory), iterations, converged, target};
}

/// Restricted minimization over unit vectors in W: run in C^r coordinates
/// (the coordinate reduction preserves FP exactly) and lift by the basis of
/// W, which keeps the vectors unit norm and inside W.
inline MinimizerResult minimize_fp_subspace(Index s, const Subspace& w,
                                            const MinimizerConfig& cfg) {
  MinimizerResult coord = minimize_fp(s, w.dim(), cfg);
  Frame lifted(w.basis() * coord.frame.matrix());
  return {std::move(lifted),     coord.final_fp,  std::move(coord.fp_trajectory),
          coord.iterations,      coord.converged, coord.target_fp};
}

}  // namespace framekit

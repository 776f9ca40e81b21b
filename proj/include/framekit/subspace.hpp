#pragma once

#include "framekit/frame.hpp"

namespace framekit {

/// Thrown when vectors required to lie in a subspace do not, carrying the
/// offending residual norm.
class containment_error : public std::domain_error {
 public:
  containment_error(const std::string& what, double residual)
      : std::domain_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An r-dimensional subspace of C^N, carried as an explicit N x r matrix with
/// orthonormal columns. All construction funnels through from_spanning, which
/// accepts any spanning set. r == N is permitted as a degenerate convenience
/// and flagged via is_full_space().
class Subspace {
 public:
  static Subspace from_spanning(const Matrix& vectors, double rank_tol = 0.0) {
    return Subspace(orthonormalize(vectors, rank_tol).q);
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  bool is_full_space() const { return dim() == ambient_dim(); }
  const Matrix& basis() const { return basis_; }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Orthogonal projection W_on W_on* f. Fixes W pointwise, annihilates its
/// orthogonal complement.
inline Vector project(const Subspace& w, const Vector& f) {
  if (f.size() != w.ambient_dim())
    throw std::invalid_argument("project: vector dimension mismatch");
  return w.basis() * (w.basis().adjoint() * f);
}

/// Coordinates of Phi in the basis of W: the r x s system W_on* Phi. A frame
/// for C^r exactly when Phi spans W.
inline Frame coordinate_frame(const Frame& phi, const Subspace& w) {
  if (phi.dim() != w.ambient_dim())
    throw std::invalid_argument("coordinate_frame: ambient dimension mismatch");
  return Frame(w.basis().adjoint() * phi.matrix());
}

/// Worst out-of-subspace residual over the frame vectors, relative to the
/// vector scale: max_j |phi_j - P phi_j| / max(1, |phi_j|).
inline double containment_residual(const Frame& phi, const Subspace& w) {
  if (phi.dim() != w.ambient_dim())
    throw std::invalid_argument("containment_residual: ambient dimension mismatch");
  const Matrix residual =
      phi.matrix() - w.basis() * (w.basis().adjoint() * phi.matrix());
  double worst = 0.0;
  for (Index j = 0; j < phi.size(); ++j)
    worst = std::max(worst,
                     residual.col(j).norm() / std::max(1.0, phi.matrix().col(j).norm()));
  return worst;
}

inline void require_contained(const Frame& phi, const Subspace& w, double tol) {
  const double residual = containment_residual(phi, w);
  if (residual > tol)
    throw containment_error("frame vectors leave the subspace (worst relative residual " +
                                std::to_string(residual) + ")",
                            residual);
}

struct SubspaceFrameReport {
  FrameReport coordinate;  // report of Phi_W as a frame for C^r
  bool contained_in_w = false;
  bool spans_w = false;
  bool is_subspace_frame = false;
  bool is_subspace_funtf = false;
  bool full_space = false;  // degenerate r == N case
  double tolerance = 0.0;
};

/// Decides span(Phi) = W as containment plus full rank of the coordinate
/// frame, and classifies the coordinate frame along the way.
inline SubspaceFrameReport classify_subspace(const Frame& phi, const Subspace& w,
                                             double tol = kDefaultTolerance) {
  if (!(tol > 0.0))
    throw std::invalid_argument("classify_subspace: tolerance must be positive");
  SubspaceFrameReport report;
  report.tolerance = tol;
  report.full_space = w.is_full_space();
  report.contained_in_w = containment_residual(phi, w) <= tol;
  report.coordinate = classify(coordinate_frame(phi, w), tol);
  report.spans_w = report.coordinate.is_frame;
  report.is_subspace_frame = report.contained_in_w && report.spans_w;
  report.is_subspace_funtf = report.contained_in_w && report.coordinate.is_funtf;
  return report;
}

/// Optimal bounds of the restricted energy inequality: extremal eigenvalues of
/// S_W = Phi_W Phi_W*. Requires containment.
inline FrameBounds subspace_frame_bounds(const Frame& phi, const Subspace& w,
                                         double tol = kDefaultTolerance) {
  require_contained(phi, w, tol);
  return frame_bounds(coordinate_frame(phi, w));
}

struct SubspaceFuntfCheck {
  bool is_subspace_funtf = false;
  double bound = 0.0;
};

/// Phi is a subspace FUNTF for W iff Phi_W is a FUNTF for C^r, with the same
/// bound (s/r when true).
inline SubspaceFuntfCheck is_subspace_funtf(const Frame& phi, const Subspace& w,
                                            double tol = kDefaultTolerance) {
  require_contained(phi, w, tol);
  const FrameReport report = classify(coordinate_frame(phi, w), tol);
  return {report.is_funtf, report.lower_bound};
}

/// Dual subspace frame W_on S_W^-1 W_on* Phi. The result is itself a subspace
/// frame for W and is independent of the basis carried by w.
inline Frame dual_subspace_frame(const Frame& phi, const Subspace& w,
                                 double tol = kDefaultTolerance) {
  require_contained(phi, w, tol);
  const Frame coords = coordinate_frame(phi, w);
  const FrameBounds bounds = frame_bounds(coords);
  if (!(bounds.lower > tol))
    throw not_invertible_error("dual_subspace_frame: frame does not span the subspace (S_W lower bound " +
                               std::to_string(bounds.lower) + " <= tolerance)");
  const Matrix dual_coords = solve_hpd(coords.frame_operator(), coords.matrix());
  return Frame(w.basis() * dual_coords);
}

struct SubspaceReconstruction {
  Vector from_dual_coefficients;   // sum_j <f, dual_j> phi_j
  Vector from_frame_coefficients;  // sum_j <f, phi_j> dual_j
};

/// Both representation formulas for f in W. The vector must lie in W within
/// tol (relative to its norm); callers holding an ambient vector can project
/// first.
inline SubspaceReconstruction subspace_reconstruct(const Frame& phi, const Subspace& w,
                                                   const Vector& f,
                                                   double tol = kDefaultTolerance) {
  if (f.size() != w.ambient_dim())
    throw std::invalid_argument("subspace_reconstruct: vector dimension mismatch");
  const double residual = (f - project(w, f)).norm();
  if (residual > tol * std::max(1.0, f.norm()))
    throw containment_error("subspace_reconstruct: vector lies outside the subspace (residual norm " +
                                std::to_string(residual) + ")",
                            residual);
  const Frame dual = dual_subspace_frame(phi, w, tol);
  return {synthesis(phi, analysis(dual, f)), synthesis(dual, analysis(phi, f))};
}

/// Uniformly random r-dimensional subspace of C^N (span of Gaussian vectors).
/// Deterministic given the seed.
inline Subspace random_subspace(Index ambient_dim, Index dim, std::uint64_t seed) {
  if (dim < 1 || ambient_dim < dim)
    throw std::invalid_argument("random_subspace: need 1 <= dim <= ambient_dim");
  std::mt19937_64 gen(seed);
  const Subspace w =
      Subspace::from_spanning(detail::gaussian_matrix(ambient_dim, dim, gen));
  if (w.dim() != dim)
    throw std::runtime_error("random_subspace: sampled vectors were rank deficient");
  return w;
}

}  // namespace framekit

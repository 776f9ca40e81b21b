#pragma once

#include <framekit/framekit.hpp>

#include <cstdint>
#include <random>

namespace testutil {

inline framekit::Matrix random_matrix(framekit::Index rows, framekit::Index cols,
                                      std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return framekit::detail::gaussian_matrix(rows, cols, gen);
}

inline framekit::Vector random_vector(framekit::Index dim, std::uint64_t seed) {
  return framekit::Vector(random_matrix(dim, 1, seed));
}

inline framekit::Matrix random_hermitian(framekit::Index n, std::uint64_t seed) {
  const framekit::Matrix g = random_matrix(n, n, seed);
  return 0.5 * (g + g.adjoint());
}

// Random HPD matrix with bounded conditioning.
inline framekit::Matrix random_hpd(framekit::Index n, std::uint64_t seed) {
  const framekit::Matrix g = random_matrix(n, n, seed);
  return framekit::Matrix(g * g.adjoint()) + 0.5 * framekit::Matrix::Identity(n, n);
}

inline double rel_err(const framekit::Vector& got, const framekit::Vector& want) {
  const double denom = want.norm();
  return denom == 0.0 ? got.norm() : (got - want).norm() / denom;
}

inline framekit::Vector unit_basis(framekit::Index dim, framekit::Index k) {
  framekit::Vector e = framekit::Vector::Zero(dim);
  e(k) = 1.0;
  return e;
}

}  // namespace testutil

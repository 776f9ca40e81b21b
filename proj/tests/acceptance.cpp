// Acceptance suite. Each criterion prints one pass/fail line; the process
// exits nonzero if any criterion fails. The CLI criterion needs the binary
// path: acceptance <path-to-framekit-binary>

#include "subprocess.hpp"

#include <framekit/framekit.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace framekit;
using testutil::read_text_file;
using testutil::run_command;

namespace {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return detail::gaussian_matrix(rows, cols, gen);
}

Vector random_vector(Index dim, std::uint64_t seed) {
  return Vector(random_matrix(dim, 1, seed));
}

double rel_err(const Vector& got, const Vector& want) {
  const double denom = want.norm();
  return denom == 0.0 ? got.norm() : (got - want).norm() / denom;
}

double fp_double_sum(const Matrix& m) {
  double fp = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index k = 0; k < m.cols(); ++k) {
      Complex ip = 0.0;
      for (Index i = 0; i < m.rows(); ++i) ip += m(i, j) * std::conj(m(i, k));
      fp += std::norm(ip);
    }
  return fp;
}

// 1. Harmonic frames are FUNTFs with bound s/N.
bool funtf_bound_value() {
  const Index cases[][2] = {{4, 2}, {5, 3}, {8, 5}};
  for (const auto& c : cases) {
    const FrameReport r = classify(harmonic_frame(c[0], c[1]));
    const double expected = static_cast<double>(c[0]) / static_cast<double>(c[1]);
    if (!r.is_funtf) return false;
    if (std::abs(r.lower_bound - expected) > 1e-10) return false;
    if (std::abs(r.upper_bound - expected) > 1e-10) return false;
  }
  return true;
}

// 2. Both representation formulas round trip on random frames.
bool representation_round_trip() {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 5);        // N <= 6
    const Index s = n + static_cast<Index>((seed / 5) % 7);  // N <= s <= 12
    const Frame phi = random_unit_frame(s, n, 100000 + seed);
    const Frame dual = dual_frame(phi);
    for (std::uint64_t fs = 0; fs < 10; ++fs) {
      const Vector f = random_vector(n, 200000 + 10 * seed + fs);
      if (rel_err(reconstruct(phi, dual, f), f) > 1e-9) return false;
      if (rel_err(reconstruct(dual, phi, f), f) > 1e-9) return false;
    }
  }
  return true;
}

// 3. Lifted FUNTFs are tight on W with the same bound.
bool subspace_funtf_forward() {
  const Frame harmonic = harmonic_frame(6, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Subspace w = random_subspace(6, 3, 300000 + seed);
    const Frame phi(Matrix(w.basis() * harmonic.matrix()));
    for (std::uint64_t fs = 0; fs < 10; ++fs) {
      const Vector f = w.basis() * random_vector(3, 310000 + 10 * seed + fs);
      double energy = 0.0;
      for (Index j = 0; j < phi.size(); ++j)
        energy += std::norm(inner(f, phi.vector(j)));
      if (std::abs(energy - 2.0 * f.squaredNorm()) > 1e-9 * f.squaredNorm())
        return false;
    }
    const auto check = is_subspace_funtf(phi, w);
    if (!check.is_subspace_funtf) return false;
    if (std::abs(check.bound - 2.0) > 1e-8) return false;
  }
  return true;
}

// 4. Coordinate operators of those lifts are 2I.
bool subspace_funtf_reverse() {
  const Frame harmonic = harmonic_frame(6, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Subspace w = random_subspace(6, 3, 300000 + seed);
    const Frame phi(Matrix(w.basis() * harmonic.matrix()));
    const Matrix s_w = coordinate_frame(phi, w).frame_operator();
    if (max_abs(s_w - Matrix(2.0 * Matrix::Identity(3, 3))) > 1e-8) return false;
  }
  return true;
}

// 5. Subspace representation formulas round trip.
bool subspace_round_trip() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 6);  // N <= 8
    const Index r = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(
                                                      std::min<Index>(4, n - 1)));
    const Index s = r + 1 + static_cast<Index>(seed % 4);
    const Subspace w = random_subspace(n, r, 400000 + seed);
    const Frame phi(Matrix(w.basis() * random_matrix(r, s, 410000 + seed)));
    const Vector f = w.basis() * random_vector(r, 420000 + seed);
    const auto rec = subspace_reconstruct(phi, w, f);
    if (rel_err(rec.from_dual_coefficients, f) > 1e-9) return false;
    if (rel_err(rec.from_frame_coefficients, f) > 1e-9) return false;
  }
  return true;
}

// 6. Kernel, image and rank behaviour of the subspace frame operators.
bool operator_properties() {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index n = 4 + static_cast<Index>(seed % 5);  // N <= 8
    const Index r = 1 + static_cast<Index>(seed % (n - 1));
    const Index s = r + 2;
    const Subspace w = random_subspace(n, r, 500000 + seed);
    const Frame phi(Matrix(w.basis() * random_matrix(r, s, 510000 + seed)));

    Vector g = random_vector(n, 520000 + seed);
    g -= project(w, g);
    if (analysis(phi, g).norm() > 1e-10 * g.norm()) return false;

    const Vector c = random_vector(s, 530000 + seed);
    const Vector v = synthesis(phi, c);
    if ((v - project(w, v)).norm() > 1e-10 * std::max(1.0, v.norm())) return false;

    const RealVector eig = hermitian_eigenvalues(phi.frame_operator());
    Index negligible = 0;
    for (Index i = 0; i < eig.size(); ++i)
      if (eig(i) <= 1e-10) ++negligible;
    if (negligible < n - r) return false;
  }
  return true;
}

// 7. FP double sum vs Tr(S^2), and the restricted FP coordinate identity.
bool trace_identity() {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Index dim = 1 + static_cast<Index>(seed % 5);
    const Index s = 1 + static_cast<Index>(seed % 10);
    const Frame phi(random_matrix(dim, s, 600000 + seed));
    const double direct = frame_potential(phi);
    if (std::abs(direct - fp_double_sum(phi.matrix())) >
        1e-10 * std::max(1.0, direct))
      return false;
    if (std::abs(direct - frame_potential_via_trace(phi)) >
        1e-10 * std::max(1.0, direct))
      return false;
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 5);
    const Index r = 1 + static_cast<Index>(seed % (n - 1));
    const Subspace w = random_subspace(n, r, 610000 + seed);
    const Frame phi(Matrix(w.basis() * random_matrix(r, r + 2, 620000 + seed)));
    const double restricted = restricted_frame_potential(phi, w);
    const double coords = frame_potential(coordinate_frame(phi, w));
    if (std::abs(restricted - coords) > 1e-10 * std::max(1.0, restricted))
      return false;
  }
  return true;
}

// 8. The minimizer reaches the unconstrained minima of the frame potential.
bool minimizer_reaches_minima() {
  int converged_52 = 0;
  int converged_35 = 0;
  std::vector<std::uint64_t> missed;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    MinimizerConfig cfg;
    cfg.seed = seed;
    const MinimizerResult funtf = minimize_fp(5, 2, cfg);
    if (funtf.converged) {
      if (std::abs(funtf.final_fp - 12.5) > 1e-6) return false;
      if (funtf.iterations > 10000) return false;
      ++converged_52;
    } else {
      missed.push_back(seed);
    }
    const MinimizerResult ortho = minimize_fp(3, 5, cfg);
    if (ortho.converged) {
      if (std::abs(ortho.final_fp - 3.0) > 1e-6) return false;
      const Matrix gram = ortho.frame.matrix().adjoint() * ortho.frame.matrix();
      if (max_abs(gram - Matrix::Identity(3, 3)) > 1e-6) return false;
      ++converged_35;
    } else {
      missed.push_back(seed);
    }
  }
  for (const auto seed : missed)
    std::printf("          note: seed %llu did not converge\n",
                static_cast<unsigned long long>(seed));
  return converged_52 >= 48 && converged_35 >= 48;
}

// 9. The restricted minimizer produces subspace FUNTFs.
bool subspace_minimizer_reaches_minima() {
  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Subspace w = random_subspace(5, 3, 700000 + seed);
    MinimizerConfig cfg;
    cfg.seed = seed;
    const MinimizerResult res = minimize_fp_subspace(6, w, cfg);
    if (!res.converged) {
      std::printf("          note: seed %llu did not converge\n",
                  static_cast<unsigned long long>(seed));
      continue;
    }
    if (std::abs(res.final_fp - 12.0) > 1e-6) return false;
    const auto check = is_subspace_funtf(res.frame, w, 1e-6);
    if (!check.is_subspace_funtf) return false;
    if (std::abs(check.bound - 2.0) > 1e-6) return false;
    ++converged;
  }
  return converged >= 48;
}

// 10. Analytic FP gradient vs central finite differences.
bool gradient_correctness() {
  const double h = 1e-5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index dim = 2 + static_cast<Index>(seed % 3);
    const Index s = 2 + static_cast<Index>(seed % 5);
    const Matrix m = random_unit_frame(s, dim, 800000 + seed).matrix();
    const Matrix analytic = 4.0 * Matrix(m * m.adjoint()) * m;
    const double scale = std::max(1.0, max_abs(analytic));
    for (Index j = 0; j < s; ++j)
      for (Index i = 0; i < dim; ++i)
        for (int part = 0; part < 2; ++part) {
          const Complex delta = part == 0 ? Complex(h, 0) : Complex(0, h);
          Matrix plus = m, minus = m;
          plus(i, j) += delta;
          minus(i, j) -= delta;
          const double fd = (fp_double_sum(plus) - fp_double_sum(minus)) / (2.0 * h);
          const double an = part == 0 ? analytic(i, j).real() : analytic(i, j).imag();
          if (std::abs(fd - an) > 1e-5 * scale) return false;
        }
  }
  return true;
}

// 11. CLI pipeline exit codes and bit-exact file round trips.
bool cli_pipeline(const std::string& cli) {
  if (cli.empty()) {
    std::printf("          note: no CLI binary path given\n");
    return false;
  }
  const auto dir = testutil::fresh_work_dir("framekit_acceptance");
  const auto path = [&dir](const std::string& name) { return (dir / name).string(); };

  if (run_command(cli + " gen harmonic --s 4 --n 2 --out " + path("f.json")).exit_code != 0)
    return false;
  if (run_command(cli + " dual --frame " + path("f.json") + " --out " + path("d.json"))
          .exit_code != 0)
    return false;
  Matrix f(2, 1);
  f << Complex(0.25, -1.0), Complex(0.5, 2.0);
  write_matrix_file(path("v.json"), f, "vector");
  if (run_command(cli + " reconstruct --frame " + path("f.json") + " --dual " +
                  path("d.json") + " --vector " + path("v.json"))
          .exit_code != 0)
    return false;

  Matrix deficient = Matrix::Zero(3, 2);
  deficient(0, 0) = 1.0;
  deficient(1, 1) = 1.0;
  write_matrix_file(path("e1e2.json"), deficient, "frame");
  if (run_command(cli + " dual --frame " + path("e1e2.json") + " --out " +
                  path("nope.json"))
          .exit_code != 1)
    return false;
  if (run_command(cli + " classify --frame " + path("e1e2.json")).exit_code != 1)
    return false;

  // Bit-exact round trips: identical seeded generation, and a parse/serialize
  // cycle that reproduces the emitted bytes.
  if (run_command(cli + " gen random --s 6 --dim 3 --seed 11 --out " + path("a.json"))
          .exit_code != 0)
    return false;
  if (run_command(cli + " gen random --s 6 --dim 3 --seed 11 --out " + path("b.json"))
          .exit_code != 0)
    return false;
  if (read_text_file(path("a.json")) != read_text_file(path("b.json"))) return false;
  const LoadedMatrix loaded = read_matrix_file(path("a.json"));
  write_matrix_file(path("c.json"), loaded.matrix, loaded.kind);
  if (read_text_file(path("a.json")) != read_text_file(path("c.json"))) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  int failures = 0;
  const auto criterion = [&failures](int id, const char* name, bool ok) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, name);
    if (!ok) ++failures;
  };
  const auto guarded = [](const std::function<bool()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      std::printf("          note: exception: %s\n", e.what());
      return false;
    }
  };

  criterion(1, "FUNTF bound value A = s/N", guarded(funtf_bound_value));
  criterion(2, "representation formulas round trip", guarded(representation_round_trip));
  criterion(3, "subspace FUNTF equivalence, forward", guarded(subspace_funtf_forward));
  criterion(4, "subspace FUNTF equivalence, reverse", guarded(subspace_funtf_reverse));
  criterion(5, "subspace representation round trip", guarded(subspace_round_trip));
  criterion(6, "kernel/image/rank operator properties", guarded(operator_properties));
  criterion(7, "frame potential trace identity", guarded(trace_identity));
  criterion(8, "minimizer reaches s^2/N and s", guarded(minimizer_reaches_minima));
  criterion(9, "restricted minimizer reaches s^2/r", guarded(subspace_minimizer_reaches_minima));
  criterion(10, "analytic FP gradient matches finite differences", guarded(gradient_correctness));
  criterion(11, "CLI pipeline exit codes and bit-exact files",
            guarded([&cli] { return cli_pipeline(cli); }));

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}

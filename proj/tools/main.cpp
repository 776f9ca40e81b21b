// framekit CLI: generation, classification, dualization, reconstruction and
// frame-potential tools over the JSON matrix interchange format.
//
// Exit codes: 0 success, 1 semantic failure (not a frame, not converged,
// residual too large), 2 usage or parse error.

#include <framekit/framekit.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace framekit;
using nlohmann::json;

namespace {

constexpr int kSuccess = 0;
constexpr int kSemanticFailure = 1;
constexpr int kUsageError = 2;

Frame load_frame(const std::string& path) {
  return Frame(read_matrix_file(path).matrix);
}

Subspace load_subspace(const std::string& path) {
  return Subspace::from_spanning(read_matrix_file(path).matrix);
}

Vector load_vector(const std::string& path) {
  const Matrix m = read_matrix_file(path).matrix;
  if (m.cols() != 1)
    throw std::invalid_argument("vector file must have cols == 1, got " +
                                std::to_string(m.cols()));
  return Vector(m);
}

void write_report(const std::string& path, const json& report) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << report.dump(2) << '\n';
}

json to_json(const FrameReport& r) {
  return {{"lower_bound", r.lower_bound}, {"upper_bound", r.upper_bound},
          {"is_frame", r.is_frame},       {"is_tight", r.is_tight},
          {"is_unit_norm", r.is_unit_norm}, {"is_funtf", r.is_funtf},
          {"is_onb", r.is_onb},           {"tolerance", r.tolerance}};
}

json to_json(const SubspaceFrameReport& r) {
  return {{"coordinate", to_json(r.coordinate)},
          {"contained_in_w", r.contained_in_w},
          {"spans_w", r.spans_w},
          {"is_subspace_frame", r.is_subspace_frame},
          {"is_subspace_funtf", r.is_subspace_funtf},
          {"full_space", r.full_space},
          {"tolerance", r.tolerance}};
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

struct GenOptions {
  std::int64_t s = 0;
  std::int64_t n = 0;
  std::int64_t dim = 0;
  std::int64_t r = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_harmonic(const GenOptions& opt) {
  const Frame phi = harmonic_frame(opt.s, opt.n);
  write_matrix_file(opt.out, phi.matrix(), "frame");
  std::cout << "wrote " << phi.dim() << "x" << phi.size() << " harmonic frame to "
            << opt.out << "\n";
  return kSuccess;
}

int run_gen_random(const GenOptions& opt) {
  const Frame phi = random_unit_frame(opt.s, opt.dim, opt.seed);
  write_matrix_file(opt.out, phi.matrix(), "frame");
  std::cout << "wrote " << phi.dim() << "x" << phi.size()
            << " random unit-norm frame (seed " << opt.seed << ") to " << opt.out
            << "\n";
  return kSuccess;
}

int run_gen_subspace(const GenOptions& opt) {
  if (opt.r >= opt.n)
    throw std::invalid_argument("subspace generation requires r < N");
  const Subspace w = random_subspace(opt.n, opt.r, opt.seed);
  write_matrix_file(opt.out, w.basis(), "subspace_basis");
  std::cout << "wrote " << w.ambient_dim() << "x" << w.dim()
            << " subspace basis (seed " << opt.seed << ") to " << opt.out << "\n";
  return kSuccess;
}

struct ClassifyOptions {
  std::string frame;
  std::string subspace;
  std::string report;
  double tol = kDefaultTolerance;
};

int run_classify(const ClassifyOptions& opt) {
  const Frame phi = load_frame(opt.frame);
  json report = {{"command", "classify"},
                 {"params", {{"frame", opt.frame},
                             {"subspace", opt.subspace.empty() ? json() : json(opt.subspace)},
                             {"tolerance", opt.tol}}}};
  bool ok = false;
  if (opt.subspace.empty()) {
    const FrameReport r = classify(phi, opt.tol);
    report["frame_report"] = to_json(r);
    std::cout << "frame: " << phi.size() << " vectors in C^" << phi.dim() << "\n"
              << "bounds: A = " << r.lower_bound << ", B = " << r.upper_bound << "\n"
              << "frame: " << yesno(r.is_frame) << ", tight: " << yesno(r.is_tight)
              << ", unit norm: " << yesno(r.is_unit_norm) << ", FUNTF: "
              << yesno(r.is_funtf) << ", ONB: " << yesno(r.is_onb) << "\n";
    ok = r.is_frame;
  } else {
    const Subspace w = load_subspace(opt.subspace);
    const SubspaceFrameReport r = classify_subspace(phi, w, opt.tol);
    report["subspace_report"] = to_json(r);
    std::cout << "frame: " << phi.size() << " vectors in C^" << phi.dim()
              << ", subspace dimension " << w.dim() << "\n"
              << "coordinate bounds: A = " << r.coordinate.lower_bound
              << ", B = " << r.coordinate.upper_bound << "\n"
              << "contained in W: " << yesno(r.contained_in_w) << ", spans W: "
              << yesno(r.spans_w) << "\n"
              << "subspace frame: " << yesno(r.is_subspace_frame)
              << ", subspace FUNTF: " << yesno(r.is_subspace_funtf) << "\n";
    ok = r.is_subspace_frame;
  }
  write_report(opt.report, report);
  return ok ? kSuccess : kSemanticFailure;
}

struct DualOptions {
  std::string frame;
  std::string subspace;
  std::string out;
  double tol = kDefaultTolerance;
};

int run_dual(const DualOptions& opt) {
  const Frame phi = load_frame(opt.frame);
  Frame dual = opt.subspace.empty()
                   ? dual_frame(phi, opt.tol)
                   : dual_subspace_frame(phi, load_subspace(opt.subspace), opt.tol);
  write_matrix_file(opt.out, dual.matrix(), "frame");
  std::cout << "wrote " << (opt.subspace.empty() ? "dual frame" : "dual subspace frame")
            << " to " << opt.out << "\n";
  return kSuccess;
}

struct ReconstructOptions {
  std::string frame;
  std::string dual;
  std::string vector;
  std::string subspace;
  std::string report;
  double tol = kDefaultTolerance;
};

int run_reconstruct(const ReconstructOptions& opt) {
  const Frame phi = load_frame(opt.frame);
  const Frame dual = load_frame(opt.dual);
  const Vector f = load_vector(opt.vector);
  if (!opt.subspace.empty()) {
    const Subspace w = load_subspace(opt.subspace);
    const double residual = (f - project(w, f)).norm();
    if (residual > opt.tol * std::max(1.0, f.norm()))
      throw containment_error("vector lies outside the subspace (residual norm " +
                                  std::to_string(residual) + ")",
                              residual);
  }
  const double scale = f.norm();
  const Vector from_dual = reconstruct(phi, dual, f);
  const Vector from_frame = reconstruct(dual, phi, f);
  const double err_dual =
      scale == 0.0 ? from_dual.norm() : (from_dual - f).norm() / scale;
  const double err_frame =
      scale == 0.0 ? from_frame.norm() : (from_frame - f).norm() / scale;
  const bool ok = err_dual <= opt.tol && err_frame <= opt.tol;

  std::cout << "relative error, dual coefficients:  " << err_dual << "\n"
            << "relative error, frame coefficients: " << err_frame << "\n"
            << (ok ? "reconstruction ok" : "residual too large") << "\n";
  write_report(opt.report,
               {{"command", "reconstruct"},
                {"params", {{"frame", opt.frame},
                            {"dual", opt.dual},
                            {"vector", opt.vector},
                            {"subspace", opt.subspace.empty() ? json() : json(opt.subspace)},
                            {"tolerance", opt.tol}}},
                {"residual_from_dual_coefficients", err_dual},
                {"residual_from_frame_coefficients", err_frame},
                {"pass", ok}});
  return ok ? kSuccess : kSemanticFailure;
}

struct PotentialOptions {
  std::string frame;
  std::string subspace;
  std::string report;
  double tol = kDefaultTolerance;
};

int run_potential(const PotentialOptions& opt) {
  const Frame phi = load_frame(opt.frame);
  double fp = 0.0;
  Index dimension = 0;
  bool restricted = false;
  if (opt.subspace.empty()) {
    fp = frame_potential(phi);
    dimension = phi.dim();
  } else {
    const Subspace w = load_subspace(opt.subspace);
    fp = restricted_frame_potential(phi, w, opt.tol);
    dimension = w.dim();
    restricted = true;
  }
  const double via_trace = frame_potential_via_trace(phi);
  const double minimum = fp_minimum(phi.size(), dimension);
  std::cout << "frame potential:    " << fp << "\n"
            << "via trace of S^2:   " << via_trace << "\n"
            << "difference:         " << std::abs(fp - via_trace) << "\n"
            << "theoretical minimum (s = " << phi.size() << ", d = " << dimension
            << "): " << minimum << "\n";
  write_report(opt.report,
               {{"command", "potential"},
                {"params", {{"frame", opt.frame},
                            {"subspace", opt.subspace.empty() ? json() : json(opt.subspace)},
                            {"tolerance", opt.tol}}},
                {"fp", fp},
                {"fp_via_trace", via_trace},
                {"difference", std::abs(fp - via_trace)},
                {"minimum", minimum},
                {"s", phi.size()},
                {"dimension", dimension},
                {"restricted", restricted}});
  return kSuccess;
}

struct MinimizeOptions {
  std::int64_t s = 0;
  std::int64_t dim = 0;
  std::string subspace;
  std::string out;
  std::string trajectory_out;
  std::string report;
  std::uint64_t seed = 0;
  std::uint64_t max_iters = 10000;
  double tol = MinimizerConfig{}.fp_tol;
};

int run_minimize(const MinimizeOptions& opt) {
  MinimizerConfig cfg;
  cfg.seed = opt.seed;
  cfg.max_iters = opt.max_iters;
  cfg.fp_tol = opt.tol;

  std::optional<Subspace> w;
  if (!opt.subspace.empty()) w = load_subspace(opt.subspace);
  const MinimizerResult res =
      w ? minimize_fp_subspace(opt.s, *w, cfg) : minimize_fp(opt.s, opt.dim, cfg);

  write_matrix_file(opt.out, res.frame.matrix(), "frame");
  if (!opt.trajectory_out.empty())
    write_trajectory_csv(opt.trajectory_out, res.fp_trajectory);

  json classification;
  if (w)
    classification = to_json(classify_subspace(res.frame, *w, 1e-6));
  else
    classification = to_json(classify(res.frame, 1e-6));

  std::cout << (res.converged ? "converged" : "did not converge") << " after "
            << res.iterations << " accepted steps\n"
            << "final FP:  " << res.final_fp << "\n"
            << "target FP: " << res.target_fp << "\n";
  write_report(opt.report,
               {{"command", "minimize"},
                {"params", {{"s", opt.s},
                            {"dim", opt.subspace.empty() ? json(opt.dim) : json()},
                            {"subspace", opt.subspace.empty() ? json() : json(opt.subspace)},
                            {"seed", opt.seed},
                            {"max_iters", opt.max_iters},
                            {"fp_tol", cfg.fp_tol},
                            {"grad_tol", cfg.grad_tol}}},
                {"converged", res.converged},
                {"iterations", res.iterations},
                {"final_fp", res.final_fp},
                {"target_fp", res.target_fp},
                {"classification", classification},
                {"outputs", {{"frame", opt.out},
                             {"trajectory", opt.trajectory_out.empty()
                                                ? json()
                                                : json(opt.trajectory_out)}}}});
  return res.converged ? kSuccess : kSemanticFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite frames for C^N and subspaces: operators, duals, "
               "reconstruction, frame potential"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "generate frames and subspace bases");
  gen->require_subcommand(1);
  auto* gen_harmonic = gen->add_subcommand("harmonic", "deterministic FUNTF (DFT rows)");
  gen_harmonic->add_option("--s", gen_opt.s, "number of vectors")->required();
  gen_harmonic->add_option("--n", gen_opt.n, "ambient dimension N")->required();
  gen_harmonic->add_option("--out", gen_opt.out, "output matrix file")->required();
  auto* gen_random = gen->add_subcommand("random", "random unit-norm frame");
  gen_random->add_option("--s", gen_opt.s, "number of vectors")->required();
  gen_random->add_option("--dim", gen_opt.dim, "ambient dimension")->required();
  gen_random->add_option("--seed", gen_opt.seed, "RNG seed");
  gen_random->add_option("--out", gen_opt.out, "output matrix file")->required();
  auto* gen_subspace = gen->add_subcommand("subspace", "random subspace basis");
  gen_subspace->add_option("--n", gen_opt.n, "ambient dimension N")->required();
  gen_subspace->add_option("--r", gen_opt.r, "subspace dimension r < N")->required();
  gen_subspace->add_option("--seed", gen_opt.seed, "RNG seed");
  gen_subspace->add_option("--out", gen_opt.out, "output matrix file")->required();

  ClassifyOptions classify_opt;
  auto* classify_cmd = app.add_subcommand("classify", "frame / subspace frame report");
  classify_cmd->add_option("--frame", classify_opt.frame, "frame matrix file")->required();
  classify_cmd->add_option("--subspace", classify_opt.subspace, "subspace basis file");
  classify_cmd->add_option("--tol", classify_opt.tol, "classification tolerance");
  classify_cmd->add_option("--report", classify_opt.report, "machine-readable report path");

  DualOptions dual_opt;
  auto* dual_cmd = app.add_subcommand("dual", "dual frame / dual subspace frame");
  dual_cmd->add_option("--frame", dual_opt.frame, "frame matrix file")->required();
  dual_cmd->add_option("--subspace", dual_opt.subspace, "subspace basis file");
  dual_cmd->add_option("--tol", dual_opt.tol, "frame-bound tolerance");
  dual_cmd->add_option("--out", dual_opt.out, "output matrix file")->required();

  ReconstructOptions rec_opt;
  auto* rec_cmd = app.add_subcommand("reconstruct", "check both representation formulas");
  rec_cmd->add_option("--frame", rec_opt.frame, "frame matrix file")->required();
  rec_cmd->add_option("--dual", rec_opt.dual, "dual frame matrix file")->required();
  rec_cmd->add_option("--vector", rec_opt.vector, "vector file (cols == 1)")->required();
  rec_cmd->add_option("--subspace", rec_opt.subspace, "subspace basis file");
  rec_cmd->add_option("--tol", rec_opt.tol, "residual tolerance");
  rec_cmd->add_option("--report", rec_opt.report, "machine-readable report path");

  PotentialOptions pot_opt;
  auto* pot_cmd = app.add_subcommand("potential", "frame potential and Tr(S^2) cross-check");
  pot_cmd->add_option("--frame", pot_opt.frame, "frame matrix file")->required();
  pot_cmd->add_option("--subspace", pot_opt.subspace, "subspace basis file");
  pot_cmd->add_option("--tol", pot_opt.tol, "containment tolerance");
  pot_cmd->add_option("--report", pot_opt.report, "machine-readable report path");

  MinimizeOptions min_opt;
  auto* min_cmd = app.add_subcommand("minimize", "construct a minimizer of the frame potential");
  min_cmd->add_option("--s", min_opt.s, "number of vectors")->required();
  auto* dim_opt = min_cmd->add_option("--dim", min_opt.dim, "ambient dimension");
  auto* sub_opt = min_cmd->add_option("--subspace", min_opt.subspace, "subspace basis file");
  dim_opt->excludes(sub_opt);
  sub_opt->excludes(dim_opt);
  min_cmd->add_option("--seed", min_opt.seed, "RNG seed");
  min_cmd->add_option("--max-iters", min_opt.max_iters, "iteration budget");
  min_cmd->add_option("--tol", min_opt.tol,
                      "FP convergence tolerance, relative to the target minimum");
  min_cmd->add_option("--out", min_opt.out, "output frame file")->required();
  min_cmd->add_option("--trajectory-out", min_opt.trajectory_out, "FP trajectory CSV path");
  min_cmd->add_option("--report", min_opt.report, "machine-readable report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (gen_harmonic->parsed()) return run_gen_harmonic(gen_opt);
    if (gen_random->parsed()) return run_gen_random(gen_opt);
    if (gen_subspace->parsed()) return run_gen_subspace(gen_opt);
    if (classify_cmd->parsed()) return run_classify(classify_opt);
    if (dual_cmd->parsed()) return run_dual(dual_opt);
    if (rec_cmd->parsed()) return run_reconstruct(rec_opt);
    if (pot_cmd->parsed()) return run_potential(pot_opt);
    if (min_cmd->parsed()) return run_minimize(min_opt);
    std::cerr << "no subcommand selected\n";
    return kUsageError;
  } catch (const not_invertible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemanticFailure;
  } catch (const containment_error& e) {
    // Containment is a semantic failure only for `dual`; elsewhere it is a
    // violated precondition.
    std::cerr << "error: " << e.what() << "\n";
    return dual_cmd->parsed() ? kSemanticFailure : kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

// Command-line front end: means, divergences, barycenters, instance
// generation, and the property-verification suite over JSON matrix files.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spdmeans/barycenter.hpp"
#include "spdmeans/divergence.hpp"
#include "spdmeans/io.hpp"
#include "spdmeans/linalg.hpp"
#include "spdmeans/means.hpp"
#include "spdmeans/verify.hpp"

namespace {

using namespace spdmeans;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNotConverged = 4;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void emit(const RunReport& report, const std::string& format) {
  if (format == "structured") {
    std::cout << report.to_json().dump(2) << '\n';
  } else {
    std::cout << report.to_text();
  }
}

std::vector<double> parse_weights(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidParameter("cannot parse weight '" + item + "'");
    }
  }
  if (out.empty()) {
    throw InvalidParameter("empty weight list");
  }
  return out;
}

std::pair<int, int> parse_dims(const std::string& spec) {
  const auto sep = spec.find("..");
  try {
    if (sep == std::string::npos) {
      const int d = std::stoi(spec);
      return {d, d};
    }
    return {std::stoi(spec.substr(0, sep)), std::stoi(spec.substr(sep + 2))};
  } catch (const std::exception&) {
    throw InvalidParameter("cannot parse dims '" + spec + "' (expected N or N..M)");
  }
}

int run_mean(const std::string& kind, const std::string& file_a, const std::string& file_b,
             double t, std::optional<double> z, const std::string& out_path,
             const std::string& format) {
  Clock clock;
  const nlohmann::json ja = [&] {
    std::ifstream in(file_a);
    if (!in) throw InvalidParameter("cannot open " + file_a);
    nlohmann::json j;
    in >> j;
    return j;
  }();
  const nlohmann::json jb = [&] {
    std::ifstream in(file_b);
    if (!in) throw InvalidParameter("cannot open " + file_b);
    nlohmann::json j;
    in >> j;
    return j;
  }();
  const SpdMatrix a = spd_from_json(ja);
  const SpdMatrix b = spd_from_json(jb);

  SpdMatrix result = [&] {
    if (kind == "arithmetic") return arithmetic_mean(a, b, t);
    if (kind == "harmonic") return harmonic_mean(a, b, t);
    if (kind == "geometric") return metric_geometric_mean(a, b, t);
    if (kind == "spectral") return spectral_geometric_mean(a, b, t);
    if (kind == "f") return f_mean(a, b, t);
    if (kind == "renyi") {
      if (!z.has_value()) {
        throw InvalidParameter("kind 'renyi' requires --z");
      }
      return renyi_quantity(a, b, t, *z);
    }
    if (kind == "wasserstein") return wasserstein_mean(a, b, t);
    if (kind == "logeuclidean") return log_euclidean_mean(a, b, t);
    throw InvalidParameter("unknown mean kind '" + kind + "'");
  }();

  RunReport report;
  report.command = "mean " + kind + " --t " + format_scalar(t) +
                   (z ? " --z " + format_scalar(*z) : "");
  report.inputs_digest = digest(nlohmann::json{ja, jb});
  report.outputs["result"] = matrix_to_json(result.entries());
  report.outputs["trace"] = result.trace();
  report.outputs["operator_norm"] = result.operator_norm();
  if (!out_path.empty()) {
    save_matrix(out_path, result.entries());
    report.outputs["written_to"] = out_path;
  }
  report.wall_seconds = clock.seconds();
  emit(report, format);
  return kExitOk;
}

int run_divergence(const std::string& file_a, const std::string& file_b, double t,
                   const std::string& format) {
  Clock clock;
  const SpdMatrix a = load_spd(file_a);
  const SpdMatrix b = load_spd(file_b);
  const DivergenceValue v = divergence(a, b, t);

  RunReport report;
  report.command = "divergence --t " + format_scalar(t);
  report.inputs_digest =
      digest(nlohmann::json{matrix_to_json(a.entries()), matrix_to_json(b.entries())});
  report.outputs["divergence"] = v.value;
  report.wall_seconds = clock.seconds();
  std::cout << format_scalar(v.value) << '\n';
  emit(report, format);
  return kExitOk;
}

int run_barycenter(const std::vector<std::string>& files, const std::string& weights_csv,
                   double t, int max_iters, double grad_tol, int nodes, bool check,
                   const std::string& out_path, const std::string& format) {
  Clock clock;
  std::vector<SpdMatrix> mats;
  nlohmann::json inputs = nlohmann::json::array();
  for (const std::string& f : files) {
    mats.push_back(load_spd(f));
    inputs.push_back(matrix_to_json(mats.back().entries()));
  }

  std::vector<double> w;
  if (weights_csv.empty()) {
    w.assign(mats.size(), 1.0 / static_cast<double>(mats.size()));
  } else {
    w = parse_weights(weights_csv);
  }
  if (w.size() != mats.size()) {
    throw InvalidParameter("weight count does not match the number of input files");
  }
  double sum = 0.0;
  for (double v : w) {
    if (!(v > 0.0)) throw InvalidParameter("weights must be positive");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw InvalidParameter("weights must be normalized within 1e-6, got sum " +
                           format_scalar(sum));
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::cerr << "warning: renormalizing weights (sum " << format_scalar(sum) << ")\n";
  }
  for (double& v : w) {
    v /= sum;
  }
  // exact unit sum for the strict weight invariant
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) partial += w[i];
  w.back() = 1.0 - partial;

  BarycenterProblem problem(std::move(mats), WeightVector(w), t);
  SolverConfig cfg;
  cfg.max_iters = max_iters;
  cfg.grad_tol = grad_tol;
  auto [x, solver_report] = solve(problem, cfg);

  RunReport report;
  report.command = "barycenter --t " + format_scalar(t);
  report.inputs_digest = digest(inputs);
  report.outputs["result"] = matrix_to_json(x.entries());
  report.outputs["iterations"] = solver_report.iterations;
  report.outputs["final_grad_norm"] = solver_report.final_grad_norm;
  report.outputs["converged"] = solver_report.converged;
  if (check) {
    const double residual = gradient_quadrature(problem, x, nodes).frobenius_norm();
    report.verdicts["stationarity_residual"] = residual;
    report.verdicts["stationarity_bound"] = 10.0 * grad_tol * (1.0 + x.frobenius_norm());
  }
  if (!out_path.empty()) {
    save_matrix(out_path, x.entries());
    report.outputs["written_to"] = out_path;
  }
  report.wall_seconds = clock.seconds();
  emit(report, format);
  return solver_report.converged ? kExitOk : kExitNotConverged;
}

int run_verify(const std::string& suite, const std::string& dims, long samples,
               std::uint64_t seed, double tol_scale, bool serial, const std::string& out_path,
               const std::string& format) {
  Clock clock;
  VerifyOptions opts;
  opts.suite = suite_from_string(suite);
  std::tie(opts.dim_min, opts.dim_max) = parse_dims(dims);
  if (opts.dim_min < 1 || opts.dim_max < opts.dim_min) {
    throw InvalidParameter("invalid dimension range");
  }
  if (samples < 1) {
    throw InvalidParameter("samples must be >= 1");
  }
  opts.samples = samples;
  opts.seed = seed;
  opts.tol_scale = tol_scale;
  opts.exec = serial ? Execution::Serial : Execution::Parallel;

  const VerifyReport verify_report = run_verification(opts);

  RunReport report;
  report.command = "verify --suite " + suite + " --dims " + dims + " --samples " +
                   std::to_string(samples) + " --seed " + std::to_string(seed);
  report.inputs_digest = digest(nlohmann::json{suite, dims, samples, seed});
  nlohmann::json rows = nlohmann::json::array();
  long violations = 0;
  for (const PropertyResult& p : verify_report.properties) {
    nlohmann::json row{{"property", p.name},       {"samples", p.samples},
                       {"passes", p.passes},       {"skips", p.skips},
                       {"violations", p.violations}, {"worst_margin", p.worst_margin}};
    if (!p.note.empty()) row["note"] = p.note;
    rows.push_back(std::move(row));
    violations += p.violations;
  }
  report.verdicts["properties"] = std::move(rows);
  report.verdicts["total_violations"] = violations;
  report.wall_seconds = clock.seconds();

  if (violations > 0) {
    // replay bundle: offending seeds and serialized inputs, for offline replay
    nlohmann::json bundle = nlohmann::json::array();
    for (const PropertyResult& p : verify_report.properties) {
      for (const ReplayRecord& r : p.replays) {
        nlohmann::json inputs = nlohmann::json::object();
        if (!r.params.empty()) {
          inputs = nlohmann::json::parse(r.params, nullptr, false);
        }
        bundle.push_back(nlohmann::json{{"property", r.property},
                                        {"sample_seed", r.sample_seed},
                                        {"dim", r.dim},
                                        {"margin", r.margin},
                                        {"detail", r.detail},
                                        {"inputs", std::move(inputs)}});
      }
    }
    const std::string bundle_path =
        out_path.empty() ? ("replay_" + std::to_string(seed) + ".json") : out_path;
    std::ofstream out(bundle_path);
    out << bundle.dump(2) << '\n';
    report.outputs["replay_bundle"] = bundle_path;
  }
  emit(report, format);
  return violations > 0 ? kExitViolation : kExitOk;
}

int run_gen(int m, double cond, std::uint64_t seed, int count, const std::string& out_prefix,
            const std::string& format) {
  Clock clock;
  if (count < 1) {
    throw InvalidParameter("count must be >= 1");
  }
  RunReport report;
  report.command = "gen --m " + std::to_string(m) + " --cond " + format_scalar(cond) +
                   " --seed " + std::to_string(seed) + " --count " + std::to_string(count);
  nlohmann::json files = nlohmann::json::array();
  for (int i = 0; i < count; ++i) {
    const SpdMatrix a = random_spd(m, cond, seed + static_cast<std::uint64_t>(i));
    std::string path;
    if (count == 1 && out_prefix.ends_with(".json")) {
      path = out_prefix;
    } else {
      path = out_prefix + std::to_string(i) + ".json";
    }
    save_matrix(path, a.entries());
    files.push_back(path);
  }
  report.inputs_digest = digest(nlohmann::json{m, cond, seed, count});
  report.outputs["files"] = std::move(files);
  report.wall_seconds = clock.seconds();
  emit(report, format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"means, divergences and barycenters of positive definite matrices"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "structured"}));

  // mean
  auto* mean_cmd = app.add_subcommand("mean", "two-matrix mean");
  std::string mean_kind, mean_a, mean_b, mean_out;
  double mean_t = 0.5;
  std::optional<double> mean_z;
  mean_cmd->add_option("kind", mean_kind, "one of arithmetic|harmonic|geometric|spectral|f|renyi|wasserstein|logeuclidean")
      ->required();
  mean_cmd->add_option("fileA", mean_a)->required();
  mean_cmd->add_option("fileB", mean_b)->required();
  mean_cmd->add_option("--t", mean_t, "weight in [0,1]")->required();
  mean_cmd->add_option("--z", mean_z, "order parameter (renyi only)");
  mean_cmd->add_option("--out", mean_out, "write the result matrix here");

  // divergence
  auto* div_cmd = app.add_subcommand("divergence", "divergence between two matrices");
  std::string div_a, div_b;
  double div_t = 0.5;
  div_cmd->add_option("fileA", div_a)->required();
  div_cmd->add_option("fileB", div_b)->required();
  div_cmd->add_option("--t", div_t, "weight in [0,1]")->required();

  // barycenter
  auto* bary_cmd = app.add_subcommand("barycenter", "divergence barycenter of n matrices");
  std::vector<std::string> bary_files;
  std::string bary_weights, bary_out;
  double bary_t = 0.5, bary_grad_tol = 1e-9;
  int bary_max_iters = 500, bary_nodes = 256;
  bool bary_check = false;
  bary_cmd->add_option("files", bary_files, "input matrix files")->required()->expected(-1);
  bary_cmd->add_option("--weights", bary_weights, "comma-separated positive weights");
  bary_cmd->add_option("--t", bary_t, "weight in (0,1)")->required();
  bary_cmd->add_option("--max-iters", bary_max_iters);
  bary_cmd->add_option("--grad-tol", bary_grad_tol);
  bary_cmd->add_option("--nodes", bary_nodes, "quadrature nodes for --check");
  bary_cmd->add_flag("--check", bary_check, "re-verify the stationarity equation by quadrature");
  bary_cmd->add_option("--out", bary_out, "write the barycenter here");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the property-verification suites");
  std::string verify_suite = "all", verify_dims = "2..6", verify_out;
  long verify_samples = 200;
  std::uint64_t verify_seed = 1;
  double verify_tol_scale = 1.0;
  bool verify_serial = false;
  verify_cmd->add_option("--suite", verify_suite)
      ->check(CLI::IsMember({"properties", "order", "divergence", "barycenter", "all"}));
  verify_cmd->add_option("--dims", verify_dims, "dimension range, N or N..M");
  verify_cmd->add_option("--samples", verify_samples);
  verify_cmd->add_option("--seed", verify_seed);
  verify_cmd->add_flag("--serial", verify_serial, "disable the parallel sweep path");
  verify_cmd->add_option("--out", verify_out, "replay bundle path on violation");
  verify_cmd->add_option("--corrupt-tolerance-scale", verify_tol_scale)->group("");  // test hook

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate random positive definite matrices");
  int gen_m = 3, gen_count = 1;
  double gen_cond = 10.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "gen_";
  gen_cmd->add_option("--m", gen_m, "dimension")->required();
  gen_cmd->add_option("--cond", gen_cond, "target condition number bound (>= 1)");
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--count", gen_count);
  gen_cmd->add_option("--out", gen_out, "output path (count == 1) or path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (mean_cmd->parsed()) {
      return run_mean(mean_kind, mean_a, mean_b, mean_t, mean_z, mean_out, format);
    }
    if (div_cmd->parsed()) {
      return run_divergence(div_a, div_b, div_t, format);
    }
    if (bary_cmd->parsed()) {
      return run_barycenter(bary_files, bary_weights, bary_t, bary_max_iters, bary_grad_tol,
                            bary_nodes, bary_check, bary_out, format);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_suite, verify_dims, verify_samples, verify_seed, verify_tol_scale,
                        verify_serial, verify_out, format);
    }
    if (gen_cmd->parsed()) {
      return run_gen(gen_m, gen_cond, gen_seed, gen_count, gen_out, format);
    }
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NotCommuting& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: cannot parse input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    // IllConditioned, ConvergenceFailure, QuadratureNotConverged, ...
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

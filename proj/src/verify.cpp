#include "spdmeans/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <json.hpp>

#include "spdmeans/barycenter.hpp"
#include "spdmeans/divergence.hpp"
#include "spdmeans/io.hpp"
#include "spdmeans/linalg.hpp"
#include "spdmeans/majorization.hpp"
#include "spdmeans/means.hpp"
#include "spdmeans/order_checks.hpp"
#include "spdmeans/seeding.hpp"

namespace spdmeans {

Suite suite_from_string(const std::string& name) {
  if (name == "properties") return Suite::Properties;
  if (name == "order") return Suite::Order;
  if (name == "divergence") return Suite::Divergence;
  if (name == "barycenter") return Suite::Barycenter;
  if (name == "all") return Suite::All;
  throw InvalidParameter("unknown suite: " + name);
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Properties:
      return "properties";
    case Suite::Order:
      return "order";
    case Suite::Divergence:
      return "divergence";
    case Suite::Barycenter:
      return "barycenter";
    case Suite::All:
      return "all";
  }
  return "all";
}

long VerifyReport::total_violations() const {
  long total = 0;
  for (const PropertyResult& p : properties) {
    total += p.violations;
  }
  return total;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTGrid[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
constexpr double kTInner[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

struct SampleOutcome {
  double margin = kInf;  // >= 0 passes
  bool skip = false;
  long sub_checks = 0;
  long sub_skips = 0;
  double aux = std::numeric_limits<double>::quiet_NaN();  // per-dim statistic
  std::string detail;
  std::string params;
};

/// Seeded source for everything a sample draws: sub-seeds for matrix
/// generators plus scalar parameters.
struct Draw {
  explicit Draw(std::uint64_t seed) : gen(seed) {}

  std::uint64_t sub() { return gen(); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  SpdMatrix spd(int dim, double cond_max) {
    return random_spd(dim, log_uniform(1.0, cond_max), sub());
  }

  HermitianMatrix hermitian_direction(int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix h(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) {
        h(i, j) = Complex(gauss(gen), gauss(gen));
      }
    }
    HermitianMatrix out(h);
    return HermitianMatrix(out.entries() / out.frobenius_norm());
  }

  /// Pair sharing one Haar eigenbasis; commuting by construction.
  std::pair<SpdMatrix, SpdMatrix> commuting_pair(int dim, double spread = 10.0) {
    const Matrix q = haar_unitary(dim, sub());
    RealVector la(dim), lb(dim);
    for (int i = 0; i < dim; ++i) {
      la(i) = log_uniform(1.0 / spread, spread);
      lb(i) = log_uniform(1.0 / spread, spread);
    }
    SpdMatrix a(q * la.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint());
    SpdMatrix b(q * lb.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint());
    return {std::move(a), std::move(b)};
  }

  std::mt19937_64 gen;
};

double rel_diff(const Matrix& x, const Matrix& y) {
  const double denom = y.norm();
  return (x - y).norm() / (denom > 0.0 ? denom : 1.0);
}

std::string params_json(std::uint64_t seed, int dim, nlohmann::json extra) {
  extra["seed"] = seed;
  extra["dim"] = dim;
  return extra.dump();
}

void fold(SampleOutcome& out, double margin) { out.margin = std::min(out.margin, margin); }

// ---------------------------------------------------------------------------
// properties suite (core calculus + means)
// ---------------------------------------------------------------------------

SampleOutcome prop_power_composition(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-11 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 100.0);
  SampleOutcome out;
  constexpr double exps[] = {-1.5, -0.5, 0.5, 2.0};
  for (double p : exps) {
    for (double q : exps) {
      const SpdMatrix inner = spectral_power(a, p);
      const double err = rel_diff(spectral_power(inner, q).entries(),
                                  spectral_power(a, p * q).entries());
      fold(out, tol - err);
      if (out.margin < 0.0 && out.detail.empty()) {
        out.detail = "power composition drifted: p=" + std::to_string(p) +
                     " q=" + std::to_string(q) + " err=" + std::to_string(err);
        out.params = params_json(seed, dim, {{"p", p}, {"q", q}});
      }
    }
  }
  return out;
}

SampleOutcome prop_power_identity(const VerifyOptions& o, std::uint64_t seed, int dim) {
  (void)o;
  Draw d(seed);
  const SpdMatrix a = d.spd(dim, 1000.0);
  SampleOutcome out;
  const double err_one = (spectral_power(a, 1.0).entries() - a.entries()).cwiseAbs().maxCoeff();
  const double err_zero =
      (spectral_power(a, 0.0).entries() - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  fold(out, -err_one);
  fold(out, -err_zero);
  if (out.margin < 0.0) {
    out.detail = "identity power is not exact";
    out.params = params_json(seed, dim, {});
  }
  return out;
}

SampleOutcome prop_frechet_vs_fd(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-6 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const HermitianMatrix k = d.hermitian_direction(dim);
  const double p = d.uniform(-1.0, 2.5);
  const double h = 1e-5;
  const SpdMatrix fwd(a.entries() + h * k.entries());
  const SpdMatrix bwd(a.entries() - h * k.entries());
  const Matrix fd = (spectral_power_matrix(fwd, p) - spectral_power_matrix(bwd, p)) / (2.0 * h);
  const Matrix analytic = frechet_power_derivative(a, p, k).entries();
  const double err = (analytic - fd).norm() / std::max(fd.norm(), 1e-300);
  SampleOutcome out;
  fold(out, tol - err);
  if (out.margin < 0.0) {
    out.detail = "derivative disagrees with finite differences: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"p", p}, {"A", matrix_to_json(a.entries())}});
  }
  return out;
}

SampleOutcome prop_loewner_transitivity(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = kDefaultOrderTol * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 100.0);
  const Matrix p = d.hermitian_direction(dim).entries();
  const Matrix q = d.hermitian_direction(dim).entries();
  const HermitianMatrix b(a.entries() + symmetrized(p * p.adjoint()));
  const HermitianMatrix c(b.entries() + symmetrized(q * q.adjoint()));
  SampleOutcome out;
  if (!order_is_leq(loewner_compare(a.hermitian(), b, tol)) ||
      !order_is_leq(loewner_compare(b, c, tol))) {
    out.margin = -1.0;
    out.detail = "constructed chain failed its own premises";
    out.params = params_json(seed, dim, {});
    return out;
  }
  const double threshold =
      2.0 * tol * (1.0 + a.hermitian().operator_norm() + c.operator_norm());
  fold(out, loewner_margin(a.hermitian(), c) + threshold);
  if (out.margin < 0.0) {
    out.detail = "transitivity failed at doubled tolerance";
    out.params = params_json(seed, dim, {{"A", matrix_to_json(a.entries())}});
  }
  return out;
}

SampleOutcome prop_agh_chain(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  for (double t : kTGrid) {
    const SpdMatrix har = harmonic_mean(a, b, t);
    const SpdMatrix geo = metric_geometric_mean(a, b, t);
    const SpdMatrix ari = arithmetic_mean(a, b, t);
    const double thr_hg = tol * (1.0 + har.operator_norm() + geo.operator_norm());
    const double thr_ga = tol * (1.0 + geo.operator_norm() + ari.operator_norm());
    fold(out, loewner_margin(har.hermitian(), geo.hermitian()) + thr_hg);
    fold(out, loewner_margin(geo.hermitian(), ari.hermitian()) + thr_ga);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "mean chain violated at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_commuting_reduces(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const auto [a, b] = d.commuting_pair(dim);
  SampleOutcome out;
  for (double t : kTGrid) {
    const Matrix target = symmetrized(spectral_power_matrix(a, 1.0 - t) *
                                      spectral_power_matrix(b, t));
    const double err = rel_diff(f_mean(a, b, t).entries(), target);
    fold(out, tol - err);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "commuting case deviates from the power mean at t=" + std::to_string(t);
      out.params = params_json(seed, dim, {{"t", t}});
    }
  }
  return out;
}

SampleOutcome prop_joint_homogeneity(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  constexpr double scales[] = {0.5, 2.0, 10.0};
  SampleOutcome out;
  for (double t : kTGrid) {
    const Matrix base = f_mean(a, b, t).entries();
    for (double sa : scales) {
      for (double sb : scales) {
        const SpdMatrix a2(sa * a.entries());
        const SpdMatrix b2(sb * b.entries());
        const Matrix expected = std::pow(sa, 1.0 - t) * std::pow(sb, t) * base;
        const double err = rel_diff(f_mean(a2, b2, t).entries(), expected);
        fold(out, tol - err);
        if (out.margin < 0.0 && out.detail.empty()) {
          out.detail = "homogeneity failed at t=" + std::to_string(t) +
                       " a=" + std::to_string(sa) + " b=" + std::to_string(sb);
          out.params = params_json(seed, dim, {{"t", t}, {"a", sa}, {"b", sb}});
        }
      }
    }
  }
  return out;
}

SampleOutcome prop_unitary_congruence(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  const Matrix u = haar_unitary(dim, d.sub());
  SampleOutcome out;
  for (double t : kTGrid) {
    const SpdMatrix ua(u * a.entries() * u.adjoint());
    const SpdMatrix ub(u * b.entries() * u.adjoint());
    const Matrix expected = u * f_mean(a, b, t).entries() * u.adjoint();
    const double err = rel_diff(f_mean(ua, ub, t).entries(), expected);
    fold(out, tol - err);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "unitary congruence failed at t=" + std::to_string(t);
      out.params = params_json(seed, dim, {{"t", t}});
    }
  }
  return out;
}

SampleOutcome prop_inversion_symmetry(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  for (double t : kTGrid) {
    const double err = rel_diff(f_mean(inverse(a), inverse(b), t).entries(),
                                spectral_power_matrix(f_mean(a, b, t), -1.0));
    fold(out, tol - err);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "inversion symmetry failed at t=" + std::to_string(t);
      out.params = params_json(seed, dim, {{"t", t}});
    }
  }
  return out;
}

SampleOutcome prop_order_bounds(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 100.0);
  const SpdMatrix b = d.spd(dim, 100.0);
  SampleOutcome out;
  for (double t : kTGrid) {
    const SpdMatrix f = f_mean(a, b, t);
    // lower bound always applies
    const SpdMatrix mix_low = arithmetic_mean(a, inverse(b), t);
    const HermitianMatrix low(2.0 * spectral_power_matrix(mix_low, -0.5) -
                              spectral_power_matrix(a, 2.0 * (t - 1.0)));
    const double thr_low = tol * (1.0 + low.operator_norm() + f.operator_norm());
    fold(out, loewner_margin(low, f.hermitian()) + thr_low);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "lower order bound violated at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
    // upper bound only on samples where the bracket is positive definite
    ++out.sub_checks;
    const SpdMatrix mix_up = arithmetic_mean(inverse(a), b, t);
    const Matrix bracket = 2.0 * spectral_power_matrix(mix_up, -0.5) -
                           spectral_power_matrix(a, 2.0 * (1.0 - t));
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(bracket), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(es.eigenvalues().size() - 1);
    if (!(lo > 1e-10 * std::max(hi, 1.0))) {
      ++out.sub_skips;
      continue;
    }
    const SpdMatrix upper = inverse(SpdMatrix(bracket));
    const double thr_up = tol * (1.0 + f.operator_norm() + upper.operator_norm());
    fold(out, loewner_margin(f.hermitian(), upper.hermitian()) + thr_up);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "upper order bound violated at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_small_exponent_limit(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  constexpr double steps[] = {1e-1, 1e-2, 1e-3};
  SampleOutcome out;
  for (double t : kTGrid) {
    const Matrix target = log_euclidean_mean(a, b, t).entries();
    const double scale = target.norm();
    double errs[3];
    for (int i = 0; i < 3; ++i) {
      const double s = steps[i];
      const SpdMatrix approx =
          spectral_power(f_mean(spectral_power(a, s), spectral_power(b, s), t), 1.0 / s);
      errs[i] = (approx.entries() - target).norm();
    }
    const double noise_floor = 1e-9 * scale;
    for (int i = 0; i + 1 < 3; ++i) {
      // decreasing, except when both sit at the numerical noise floor
      if (errs[i] <= noise_floor && errs[i + 1] <= noise_floor) {
        continue;
      }
      fold(out, (errs[i] - errs[i + 1]) * o.tol_scale);
    }
    fold(out, (1e-2 * o.tol_scale) * scale - errs[2]);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "limit approximation not improving at t=" + std::to_string(t);
      out.params = params_json(seed, dim, {{"t", t}});
    }
  }
  return out;
}

SampleOutcome prop_endpoints_midpoint(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-10 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  fold(out, -(f_mean(a, b, 0.0).entries() - a.entries()).norm());
  fold(out, -(f_mean(a, b, 1.0).entries() - b.entries()).norm());
  fold(out, -(spectral_geometric_mean(a, b, 1.0).entries() - b.entries()).norm());
  const double mid_err =
      rel_diff(f_mean(a, b, 0.5).entries(), spectral_geometric_mean(a, b, 0.5).entries());
  fold(out, tol - mid_err);
  if (out.margin < 0.0) {
    out.detail = "endpoint or midpoint identity failed";
    out.params = params_json(seed, dim, {});
  }
  return out;
}

SampleOutcome prop_tensor_multiplicativity(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const int d1 = 2 + (dim % 2);
  const int d2 = 2 + ((dim / 2) % 2);
  const SpdMatrix a = d.spd(d1, 100.0);
  const SpdMatrix b = d.spd(d1, 100.0);
  const SpdMatrix c = d.spd(d2, 100.0);
  const SpdMatrix e = d.spd(d2, 100.0);
  SampleOutcome out;
  for (double t : {0.3, 0.5, 0.8}) {
    const SpdMatrix left(kron(a.entries(), c.entries()));
    const SpdMatrix right(kron(b.entries(), e.entries()));
    const Matrix expected = kron(f_mean(a, b, t).entries(), f_mean(c, e, t).entries());
    const double err = rel_diff(f_mean(left, right, t).entries(), expected);
    fold(out, tol - err);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "tensor multiplicativity failed at t=" + std::to_string(t);
      out.params = params_json(seed, dim, {{"t", t}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// order suite
// ---------------------------------------------------------------------------

SampleOutcome prop_contraction_equivalence(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = kDefaultOrderTol * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 100.0);
  const SpdMatrix b_raw = d.spd(dim, 100.0);
  // spread the scale so both branches of the predicate occur
  const SpdMatrix b(d.log_uniform(0.05, 20.0) * b_raw.entries());
  SampleOutcome out;
  for (double t : {-0.5, 0.25, 0.5, 0.75, 1.5}) {
    const EquivalenceReport r = check_contraction_equivalence(a, b, t, tol);
    const double boundary_distance = std::min(std::abs(r.lhs_margin), std::abs(r.rhs_margin));
    fold(out, r.agree ? boundary_distance : -boundary_distance);
    if (!r.agree && out.detail.empty()) {
      out.detail = "predicate sides disagree at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_ando_hiai(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = kDefaultOrderTol * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 30.0);
  const SpdMatrix b_raw = d.spd(dim, 30.0);
  constexpr double powers[] = {1.0, 1.5, 2.0, 4.0};
  SampleOutcome out;
  for (double t : kTInner) {
    // scale the second argument until the hypothesis holds by construction
    const SpdMatrix m = f_mean(inverse(a), b_raw, t);
    const Matrix w_inv_root = spectral_power_matrix(a, 1.0 - t);
    const SpdMatrix conj(w_inv_root * m.entries() * w_inv_root);
    const double c = 0.999 * std::pow(1.0 / conj.lambda_max(), 1.0 / t);
    const SpdMatrix b(c * b_raw.entries());
    const ImplicationReport r = check_ando_hiai_implication(a, b, t, powers, tol);
    ++out.sub_checks;
    if (r.skipped) {
      ++out.sub_skips;
      continue;
    }
    fold(out, r.conclusion_holds ? std::max(r.conclusion_margin, 0.0) : r.conclusion_margin);
    if (!r.conclusion_holds && out.detail.empty()) {
      out.detail = "amplified conclusion failed at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  if (out.sub_skips == out.sub_checks) {
    out.skip = true;
  }
  return out;
}

SampleOutcome prop_fixed_point(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  SampleOutcome out;
  for (double t : kTInner) {
    // A^{1/t-1} raises the condition number to the 1/t-1 power; keep it sane
    const double cond_cap = std::min(30.0, std::pow(10.0, 10.0 * t));
    const SpdMatrix a = d.spd(dim, cond_cap);
    const FixedPointReport r = check_fixed_point(a, t, tol);
    fold(out, tol - r.rel_residual);
    fold(out, r.perturbed_rel_residual - 10.0 * tol);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "fixed point characterization failed at t=" + std::to_string(t) +
                   " residual=" + std::to_string(r.rel_residual);
      out.params = params_json(seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_inverse_bound(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = kDefaultOrderTol * o.tol_scale;
  const SpdMatrix raw = d.spd(dim, 100.0);
  const SpdMatrix a(raw.entries() / (raw.lambda_max() * 1.02));  // A <= I strictly
  const SpdMatrix b_raw = d.spd(dim, 100.0);
  SampleOutcome out;
  for (double t : kTInner) {
    const SpdMatrix f = f_mean(a, b_raw, t);
    const Matrix w_inv_root = spectral_power_matrix(a, t - 1.0);
    const SpdMatrix conj(w_inv_root * f.entries() * w_inv_root);
    const double c = 0.999 * std::pow(1.0 / conj.lambda_max(), 1.0 / t);
    const SpdMatrix b(c * b_raw.entries());
    const ImplicationReport r = check_inverse_bound(a, b, t, tol);
    ++out.sub_checks;
    if (r.skipped) {
      ++out.sub_skips;
      continue;
    }
    fold(out, r.conclusion_holds ? std::max(r.conclusion_margin, 0.0) : r.conclusion_margin);
    if (!r.conclusion_holds && out.detail.empty()) {
      out.detail = "inverse bound failed at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  if (out.sub_skips == out.sub_checks) {
    out.skip = true;
  }
  return out;
}

SampleOutcome prop_norm_bound(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double slack = 1e-10 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  for (double t : kTGrid) {
    const NormBoundReport r = check_norm_bound(a, b, t, slack);
    fold(out, r.rel_margin + slack);
    if (!r.holds && out.detail.empty()) {
      out.detail = "operator norm bound violated at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_trace_inequality(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double slack = 1e-10 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  for (double t : kTGrid) {
    const TraceBoundReport r = check_trace_inequality(a, b, t, slack);
    fold(out, r.rel_margin + slack);
    fold(out, 1e-10 * o.tol_scale - r.formula_rel_gap);
    // equality when both arguments coincide
    const double eq_gap = std::abs(f_mean(a, a, t).trace() - a.trace()) / a.trace();
    fold(out, 1e-9 * o.tol_scale - eq_gap);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "trace inequality failed at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_majorization_chain(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  constexpr std::pair<double, double> tz[] = {{0.3, 0.1}, {0.5, 0.5},  {0.6, 0.25},
                                              {0.75, 0.75}, {0.9, 0.6}, {1.0, 1.0},
                                              {1.0, 0.3}};
  SampleOutcome out;
  for (const auto& [t, z] : tz) {
    // the sandwiched quantity raises inputs to powers up to 1/z; keep the
    // inflated condition number clear of the positive-definiteness gate
    const double cond_cap = std::min(1000.0, std::pow(10.0, 10.0 * z));
    const SpdMatrix a = d.spd(dim, cond_cap);
    const SpdMatrix b = d.spd(dim, cond_cap);
    const MajorizationChainReport r = check_log_majorization_chain(a, b, t, z, tol);
    for (const auto& [name, verdict] : r.links) {
      fold(out, verdict.worst_margin + tol);
      const bool weak_link = name.find("weak") != std::string::npos;
      if (!weak_link) {
        fold(out, tol - verdict.det_log_gap);
      }
      if (!verdict.holds && out.detail.empty()) {
        out.detail = "chain link '" + name + "' failed at t=" + std::to_string(t) +
                     " z=" + std::to_string(z);
        out.params = params_json(
            seed, dim,
            {{"t", t}, {"z", z}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
      }
    }
  }
  return out;
}

SampleOutcome prop_majorization_relations(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = kDefaultMajorizationTol * o.tol_scale;
  const SpdMatrix x = d.spd(dim, 1000.0);
  SampleOutcome out;
  // reflexive with zero margin
  const MajorizationVerdict self = log_majorizes(x, x, false, tol);
  fold(out, self.holds ? tol - std::abs(self.worst_margin) : -1.0);
  // antisymmetry up to spectral equality: a rotated copy majorizes both ways
  const Matrix u = haar_unitary(dim, d.sub());
  const SpdMatrix y(u * x.entries() * u.adjoint());
  const MajorizationVerdict fwd_v = log_majorizes(x, y, false, tol);
  const MajorizationVerdict bwd_v = log_majorizes(y, x, false, tol);
  fold(out, (fwd_v.holds && bwd_v.holds) ? std::min(tol - std::abs(fwd_v.worst_margin),
                                                    tol - std::abs(bwd_v.worst_margin))
                                         : -1.0);
  // transitivity through the ordering chain, doubled tolerance on the composite
  const SpdMatrix b = d.spd(dim, 1000.0);
  const double t = 0.5 + 0.5 * d.unit();
  const SpdMatrix f = f_mean(x, b, t);
  const SpdMatrix q = renyi_quantity(x, b, t, t);
  const SpdMatrix s = spectral_geometric_mean(x, b, t);
  if (log_majorizes(f, q, false, tol).holds && log_majorizes(q, s, false, tol).holds) {
    const MajorizationVerdict comp = log_majorizes(f, s, false, 2.0 * tol);
    fold(out, comp.worst_margin + 2.0 * tol);
    // strict implies weak on the same pair
    fold(out, log_majorizes(f, s, true, 2.0 * tol).holds ? kInf : -1.0);
  }
  if (out.margin < 0.0 && out.detail.empty()) {
    out.detail = "majorization relation sanity failed";
    out.params = params_json(seed, dim, {{"t", t}});
  }
  return out;
}

SampleOutcome prop_scalar_majorization(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = kDefaultMajorizationTol * o.tol_scale;
  double s = d.log_uniform(0.2, 5.0);
  double r = d.log_uniform(0.2, 5.0);
  if (std::abs(std::log(s) - std::log(r)) < 1e-6) {
    r *= 2.0;
  }
  const SpdMatrix x(s * Matrix::Identity(dim, dim));
  const SpdMatrix y(r * Matrix::Identity(dim, dim));
  const MajorizationVerdict weak = log_majorizes(x, y, true, tol);
  const MajorizationVerdict strict = log_majorizes(x, y, false, tol);
  SampleOutcome out;
  fold(out, weak.holds == (s < r) ? 1.0 : -1.0);
  fold(out, strict.holds == false ? 1.0 : -1.0);  // distinct scalars never match determinants
  if (out.margin < 0.0) {
    out.detail = "scalar verdict disagrees with the scalar comparison";
    out.params = params_json(seed, dim, {{"s", s}, {"r", r}});
  }
  return out;
}

SampleOutcome prop_trace_chain_upper_half(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double slack = 1e-10 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  for (double t : {0.5, 0.7, 0.9, 1.0}) {
    const double traces[] = {f_mean(a, b, t).trace(), renyi_quantity(a, b, t, t).trace(),
                             spectral_geometric_mean(a, b, t).trace(),
                             wasserstein_mean(a, b, t).trace(), arithmetic_mean(a, b, t).trace()};
    for (int i = 0; i + 1 < 5; ++i) {
      fold(out, (traces[i + 1] - traces[i]) / traces[i + 1] + slack);
    }
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "trace chain violated at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// divergence suite
// ---------------------------------------------------------------------------

SampleOutcome prop_divergence_nonnegative(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  for (double t : kTGrid) {
    const DivergenceValue v = divergence(a, b, t);
    const double scale = a.trace() + b.trace();
    fold(out, (v.value + 1e-10 * o.tol_scale * scale) / scale);
    // never above the mixing trace
    const double mix = (1.0 - t) * a.trace() + t * b.trace();
    fold(out, (mix - v.value) / scale + 1e-12 * o.tol_scale);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "divergence range violated at t=" + std::to_string(t);
      out.params = params_json(
          seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_identity_discrimination(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  SampleOutcome out;
  double min_ratio = kInf;
  for (double t : kTGrid) {
    fold(out, -divergence(a, a, t).value);  // exactly zero on the diagonal
    const double scale = a.trace() + b.trace();
    const double sep = (a.entries() - b.entries()).norm() /
                       (a.frobenius_norm() + b.frobenius_norm());
    if (sep > 1e-4 && t > 0.0 && t < 1.0) {
      const double v = divergence(a, b, t).value;
      fold(out, (v - 1e-10 * o.tol_scale * scale) / scale);
      min_ratio = std::min(min_ratio, v / scale);
      if (out.margin < 0.0 && out.detail.empty()) {
        out.detail = "separated pair produced a vanishing divergence at t=" + std::to_string(t);
        out.params = params_json(
            seed, dim,
            {{"t", t}, {"A", matrix_to_json(a.entries())}, {"B", matrix_to_json(b.entries())}});
      }
    }
  }
  out.aux = min_ratio;  // empirical strictness constant, recorded per dimension
  return out;
}

SampleOutcome prop_gradient_on_diagonal(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  SampleOutcome out;
  for (double t : kTInner) {
    const double norm = divergence_gradient(a, a, t).frobenius_norm();
    fold(out, tol * dim - norm);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "diagonal gradient did not vanish at t=" + std::to_string(t) +
                   ": " + std::to_string(norm);
      out.params = params_json(seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}});
    }
  }
  return out;
}

SampleOutcome prop_hessian_on_diagonal(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-6 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 100.0);
  const HermitianMatrix y = d.hermitian_direction(dim);
  const double t = 0.1 + 0.8 * d.unit();
  const double q = divergence_hessian_quadform(a, a, t, y);
  const double y2 = y.frobenius_norm() * y.frobenius_norm();
  SampleOutcome out;
  fold(out, q + tol * y2);
  if (out.margin < 0.0) {
    out.detail = "diagonal quadratic form negative: " + std::to_string(q);
    out.params = params_json(seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())},
                                         {"Y", matrix_to_json(y.entries())}});
  }
  return out;
}

SampleOutcome prop_density_trace_split(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double slack = 1e-10 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  const SpdMatrix rho(a.entries() / a.trace());
  const SpdMatrix sigma(b.entries() / b.trace());
  const Matrix rho_root = spectral_power_matrix(rho, 0.5);
  const SpdMatrix inner(rho_root * sigma.entries() * rho_root);
  const double fidelity = inner.eig().eigenvalues.array().sqrt().sum();
  SampleOutcome out;
  for (double t : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double tr_f = f_mean(rho, sigma, t).trace();
    const double split = (1.0 - 2.0 * t) + 2.0 * t * fidelity;
    fold(out, split - tr_f + slack);
    fold(out, 1.0 - split + slack);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "density trace split failed at t=" + std::to_string(t);
      out.params = params_json(seed, dim, {{"t", t}});
    }
  }
  return out;
}

SampleOutcome prop_gradient_vs_fd(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-5 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  const HermitianMatrix k = d.hermitian_direction(dim);
  const double t = 0.05 + 0.9 * d.unit();
  const HermitianMatrix g = divergence_gradient(a, b, t);
  const double analytic = (g.entries().adjoint() * k.entries()).trace().real();
  const double h = 1e-5;
  const double fd = (divergence(a, SpdMatrix(b.entries() + h * k.entries()), t).value -
                     divergence(a, SpdMatrix(b.entries() - h * k.entries()), t).value) /
                    (2.0 * h);
  const double scale = std::max(g.frobenius_norm() * k.frobenius_norm(), 1e-300);
  const double err = std::abs(analytic - fd) / scale;
  SampleOutcome out;
  fold(out, tol - err);
  if (out.margin < 0.0) {
    out.detail = "gradient/direction derivative mismatch: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())},
                                         {"B", matrix_to_json(b.entries())}});
  }
  return out;
}

SampleOutcome prop_gradient_vs_quadrature(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-6 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix x = d.spd(dim, 1000.0);
  const double t = 0.1 + 0.8 * d.unit();
  BarycenterProblem p({a}, WeightVector({1.0}), t);
  const Matrix analytic = gradient(p, x).entries();
  const Matrix quad = gradient_quadrature(p, x, 256).entries();
  const double err = (analytic - quad).norm() / std::max(analytic.norm(), 1e-300);
  SampleOutcome out;
  fold(out, tol - err);
  if (out.margin < 0.0) {
    out.detail = "single-term quadrature gradient mismatch: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}});
  }
  return out;
}

SampleOutcome prop_divergence_invariance(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-9 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix b = d.spd(dim, 1000.0);
  const Matrix u = haar_unitary(dim, d.sub());
  const SpdMatrix rho_raw = d.spd(2, 10.0);
  const SpdMatrix rho(rho_raw.entries() / rho_raw.trace());
  const double t = 0.1 + 0.8 * d.unit();
  const InvarianceReport r = check_divergence_invariance(a, b, t, u, rho, tol);
  SampleOutcome out;
  fold(out, tol - r.unitary_rel_gap);
  fold(out, tol - r.tensor_rel_gap);
  if (out.margin < 0.0) {
    out.detail = "invariance gaps: unitary=" + std::to_string(r.unitary_rel_gap) +
                 " tensor=" + std::to_string(r.tensor_rel_gap);
    out.params = params_json(seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())},
                                         {"B", matrix_to_json(b.entries())}});
  }
  return out;
}

SampleOutcome prop_trace_concavity(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-10 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1000.0);
  const SpdMatrix x = d.spd(dim, 1000.0);
  const SpdMatrix y = d.spd(dim, 1000.0);
  const double t = 0.1 + 0.8 * d.unit();
  constexpr double lambdas[] = {0.25, 0.5, 0.75};
  const ConcavityReport r = check_trace_concavity(a, x, y, t, lambdas, tol);
  SampleOutcome out;
  fold(out, r.holds ? r.min_gap + tol : -1.0);
  if (out.margin < 0.0) {
    out.detail = "concavity gap failed: min_gap=" + std::to_string(r.min_gap);
    out.params = params_json(seed, dim, {{"t", t}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// barycenter suite
// ---------------------------------------------------------------------------

WeightVector random_weights(Draw& d, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) {
    v = d.uniform(0.5, 1.5);
    sum += v;
  }
  for (double& v : w) {
    v /= sum;
  }
  // nudge the last weight so the total is exactly representable near 1
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) partial += w[i];
  w[n - 1] = 1.0 - partial;
  return WeightVector(w);
}

SampleOutcome prop_power_integral(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-8 * o.tol_scale;
  const SpdMatrix a = d.spd(dim, 1e4);
  SampleOutcome out;
  for (double t : {0.1, 0.5, 0.9}) {
    const double err =
        rel_diff(power_integral(a, t, 256, o.exec).entries(), spectral_power_matrix(a, t));
    fold(out, tol - err);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "resolvent integral drifted from spectral power at t=" + std::to_string(t) +
                   ": err=" + std::to_string(err);
      out.params = params_json(seed, dim, {{"t", t}, {"A", matrix_to_json(a.entries())}});
    }
  }
  return out;
}

BarycenterProblem random_problem(Draw& d, int dim, std::size_t n, double cond, double t) {
  std::vector<SpdMatrix> mats;
  mats.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    mats.push_back(d.spd(dim, cond));
  }
  WeightVector w = random_weights(d, n);
  return BarycenterProblem(std::move(mats), std::move(w), t);
}

SampleOutcome prop_quadrature_gradient(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-6 * o.tol_scale;
  const std::size_t n = 1 + (seed % 3);
  const double t = 0.1 + 0.8 * d.unit();
  BarycenterProblem p = random_problem(d, std::min(dim, 5), n, 1000.0, t);
  const SpdMatrix x = d.spd(std::min(dim, 5), 1000.0);
  const Matrix analytic = gradient(p, x).entries();
  const Matrix quad = gradient_quadrature(p, x, 256, o.exec).entries();
  const double err = (analytic - quad).norm() / std::max(analytic.norm(), 1e-300);
  SampleOutcome out;
  fold(out, tol - err);
  if (out.margin < 0.0) {
    out.detail = "quadrature gradient mismatch: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
  }
  return out;
}

SampleOutcome prop_commuting_agreement(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-7 * o.tol_scale;
  const int m = std::clamp(dim, 2, 5);
  constexpr std::size_t kCounts[] = {2, 3, 5};
  const std::size_t n = kCounts[seed % 3];
  const double t = 0.1 + 0.8 * d.unit();
  const Matrix q = haar_unitary(m, d.sub());
  std::vector<SpdMatrix> mats;
  for (std::size_t j = 0; j < n; ++j) {
    RealVector lam(m);
    for (int i = 0; i < m; ++i) {
      lam(i) = d.log_uniform(0.2, 5.0);
    }
    mats.emplace_back(q * lam.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint());
  }
  BarycenterProblem p(mats, random_weights(d, n), t);
  const SpdMatrix closed = commuting_closed_form(p);
  auto [solved, report] = solve(p);
  SampleOutcome out;
  if (!report.converged) {
    out.margin = -1.0;
    out.detail = "solver did not converge on a commuting problem";
    out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
    return out;
  }
  const double err = rel_diff(solved.entries(), closed.entries());
  fold(out, tol - err);
  if (out.margin < 0.0) {
    out.detail = "closed form disagreement: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
  }
  return out;
}

SampleOutcome prop_single_matrix(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-8 * o.tol_scale;
  const double t = 0.1 + 0.8 * d.unit();
  BarycenterProblem p = random_problem(d, dim, 1, 100.0, t);
  auto [solved, report] = solve(p);
  SampleOutcome out;
  const double err = rel_diff(solved.entries(), p.matrices[0].entries());
  fold(out, report.converged ? tol - err : -1.0);
  if (out.margin < 0.0) {
    out.detail = "single-input barycenter is not the input: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}});
  }
  return out;
}

SampleOutcome prop_permutation_invariance(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-7 * o.tol_scale;
  const double t = 0.1 + 0.8 * d.unit();
  const std::size_t n = 3;
  BarycenterProblem p = random_problem(d, dim, n, 50.0, t);
  std::vector<std::size_t> perm{1, 2, 0};
  std::shuffle(perm.begin(), perm.end(), d.gen);
  std::vector<SpdMatrix> mats;
  std::vector<double> w;
  for (std::size_t i : perm) {
    mats.push_back(p.matrices[i]);
    w.push_back(p.weights[i]);
  }
  BarycenterProblem shuffled(std::move(mats), WeightVector(w), t);
  auto [x1, r1] = solve(p);
  auto [x2, r2] = solve(shuffled);
  SampleOutcome out;
  const double err = rel_diff(x2.entries(), x1.entries());
  fold(out, (r1.converged && r2.converged) ? tol - err : -1.0);
  if (out.margin < 0.0) {
    out.detail = "permutation changed the barycenter: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}});
  }
  return out;
}

SampleOutcome prop_unitary_equivariance(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-7 * o.tol_scale;
  const double t = 0.1 + 0.8 * d.unit();
  BarycenterProblem p = random_problem(d, dim, 3, 50.0, t);
  const Matrix u = haar_unitary(dim, d.sub());
  std::vector<SpdMatrix> rotated;
  for (const SpdMatrix& m : p.matrices) {
    rotated.emplace_back(u * m.entries() * u.adjoint());
  }
  BarycenterProblem q(std::move(rotated), p.weights, t);
  auto [x1, r1] = solve(p);
  auto [x2, r2] = solve(q);
  SampleOutcome out;
  const double err = rel_diff(x2.entries(), u * x1.entries() * u.adjoint());
  fold(out, (r1.converged && r2.converged) ? tol - err : -1.0);
  if (out.margin < 0.0) {
    out.detail = "unitary equivariance failed: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}});
  }
  return out;
}

SampleOutcome prop_stationarity_residual(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double t = 0.1 + 0.8 * d.unit();
  const std::size_t n = 1 + (seed % 3);
  BarycenterProblem p = random_problem(d, dim, n, 50.0, t);
  SolverConfig cfg;
  auto [x, report] = solve(p, cfg);
  SampleOutcome out;
  if (!report.converged) {
    out.margin = -1.0;
    out.detail = "solver did not converge";
    out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
    return out;
  }
  const double residual = gradient_quadrature(p, x, 256, o.exec).frobenius_norm();
  const double bound = 10.0 * cfg.grad_tol * o.tol_scale * (1.0 + x.frobenius_norm());
  fold(out, bound - residual);
  if (out.margin < 0.0) {
    out.detail = "stationarity residual " + std::to_string(residual) + " above bound " +
                 std::to_string(bound);
    out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
  }
  return out;
}

SampleOutcome prop_descent_monotone(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double t = 0.1 + 0.8 * d.unit();
  const std::size_t n = 2 + (seed % 2);
  BarycenterProblem p = random_problem(d, dim, n, 100.0, t);
  auto [x, report] = solve(p);
  SampleOutcome out;
  for (std::size_t i = 0; i + 1 < report.objective_trace.size(); ++i) {
    fold(out, (report.objective_trace[i] - report.objective_trace[i + 1]) * o.tol_scale);
  }
  fold(out, report.converged ? kInf : -1.0);
  if (out.margin < 0.0) {
    out.detail = "objective trace increased or solver failed";
    out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
  }
  return out;
}

SampleOutcome prop_multistart_uniqueness(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-7 * o.tol_scale;
  const double t = 0.1 + 0.8 * d.unit();
  const std::size_t n = 2 + (seed % 2);
  BarycenterProblem p = random_problem(d, dim, n, 50.0, t);
  auto [x1, r1] = solve(p);
  const SpdMatrix alt_start = d.spd(dim, 10.0);
  auto [x2, r2] = solve(p, SolverConfig{}, alt_start);
  SampleOutcome out;
  const double err = rel_diff(x2.entries(), x1.entries());
  fold(out, (r1.converged && r2.converged) ? tol - err : -1.0);
  if (out.margin < 0.0) {
    out.detail = "restarted solve landed elsewhere: err=" + std::to_string(err);
    out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
  }
  return out;
}

SampleOutcome prop_objective_convexity(const VerifyOptions& o, std::uint64_t seed, int dim) {
  Draw d(seed);
  const double tol = 1e-10 * o.tol_scale;
  const double t = 0.1 + 0.8 * d.unit();
  const std::size_t n = 2 + (seed % 2);
  BarycenterProblem p = random_problem(d, dim, n, 100.0, t);
  const SpdMatrix x = d.spd(dim, 100.0);
  const SpdMatrix y = d.spd(dim, 100.0);
  const double fx = objective(p, x);
  const double fy = objective(p, y);
  const double scale = std::abs(fx) + std::abs(fy) + 1.0;
  SampleOutcome out;
  for (double lam : {0.25, 0.5, 0.75}) {
    const SpdMatrix blend((1.0 - lam) * x.entries() + lam * y.entries());
    const double gap = (1.0 - lam) * fx + lam * fy - objective(p, blend);
    fold(out, gap + tol * scale);
    if (out.margin < 0.0 && out.detail.empty()) {
      out.detail = "objective convexity violated at lambda=" + std::to_string(lam);
      out.params = params_json(seed, dim, {{"t", t}, {"n", n}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// sweep engine
// ---------------------------------------------------------------------------

using PropertyFn = SampleOutcome (*)(const VerifyOptions&, std::uint64_t, int);

struct PropertySpec {
  const char* name;
  Suite suite;
  long min_count;  // floors pinned by the acceptance criteria; 0 = use opts.samples
  PropertyFn fn;
};

constexpr PropertySpec kProperties[] = {
    {"power_composition", Suite::Properties, 0, prop_power_composition},
    {"power_identity", Suite::Properties, 0, prop_power_identity},
    {"frechet_vs_finite_difference", Suite::Properties, 100, prop_frechet_vs_fd},
    {"loewner_transitivity", Suite::Properties, 0, prop_loewner_transitivity},
    {"agh_chain", Suite::Properties, 0, prop_agh_chain},
    {"commuting_reduces_to_power_mean", Suite::Properties, 0, prop_commuting_reduces},
    {"joint_homogeneity", Suite::Properties, 0, prop_joint_homogeneity},
    {"unitary_congruence", Suite::Properties, 0, prop_unitary_congruence},
    {"inversion_symmetry", Suite::Properties, 0, prop_inversion_symmetry},
    {"order_bounds", Suite::Properties, 0, prop_order_bounds},
    {"small_exponent_limit", Suite::Properties, 0, prop_small_exponent_limit},
    {"endpoints_midpoint", Suite::Properties, 0, prop_endpoints_midpoint},
    {"tensor_multiplicativity", Suite::Properties, 0, prop_tensor_multiplicativity},
    {"contraction_equivalence", Suite::Order, 200, prop_contraction_equivalence},
    {"ando_hiai_implication", Suite::Order, 0, prop_ando_hiai},
    {"fixed_point_characterization", Suite::Order, 0, prop_fixed_point},
    {"inverse_bound_corollary", Suite::Order, 0, prop_inverse_bound},
    {"operator_norm_bound", Suite::Order, 500, prop_norm_bound},
    {"trace_inequality", Suite::Order, 1000, prop_trace_inequality},
    {"log_majorization_chain", Suite::Order, 300, prop_majorization_chain},
    {"majorization_relations", Suite::Order, 0, prop_majorization_relations},
    {"scalar_majorization", Suite::Order, 0, prop_scalar_majorization},
    {"trace_chain_upper_half", Suite::Order, 0, prop_trace_chain_upper_half},
    {"divergence_nonnegative", Suite::Divergence, 0, prop_divergence_nonnegative},
    {"identity_discrimination", Suite::Divergence, 0, prop_identity_discrimination},
    {"gradient_vanishes_on_diagonal", Suite::Divergence, 0, prop_gradient_on_diagonal},
    {"hessian_nonnegative_on_diagonal", Suite::Divergence, 50, prop_hessian_on_diagonal},
    {"density_trace_split", Suite::Divergence, 0, prop_density_trace_split},
    {"gradient_vs_finite_difference", Suite::Divergence, 100, prop_gradient_vs_fd},
    {"gradient_vs_quadrature_single", Suite::Divergence, 0, prop_gradient_vs_quadrature},
    {"divergence_invariance", Suite::Divergence, 100, prop_divergence_invariance},
    {"trace_concavity", Suite::Divergence, 0, prop_trace_concavity},
    {"power_integral_matches_spectral", Suite::Barycenter, 0, prop_power_integral},
    {"quadrature_gradient_matches_analytic", Suite::Barycenter, 0, prop_quadrature_gradient},
    {"commuting_closed_form_agreement", Suite::Barycenter, 0, prop_commuting_agreement},
    {"single_matrix_fixed_point", Suite::Barycenter, 0, prop_single_matrix},
    {"permutation_invariance", Suite::Barycenter, 0, prop_permutation_invariance},
    {"unitary_equivariance", Suite::Barycenter, 0, prop_unitary_equivariance},
    {"stationarity_residual", Suite::Barycenter, 0, prop_stationarity_residual},
    {"descent_monotone", Suite::Barycenter, 0, prop_descent_monotone},
    {"multistart_uniqueness", Suite::Barycenter, 0, prop_multistart_uniqueness},
    {"objective_convexity", Suite::Barycenter, 0, prop_objective_convexity},
};

PropertyResult run_sweep(const VerifyOptions& o, const PropertySpec& spec) {
  const long count = std::max(o.samples, spec.min_count);
  const int dim_span = o.dim_max - o.dim_min + 1;
  std::vector<SampleOutcome> slots(count);

  for_each_index(o.exec, count, [&](std::ptrdiff_t i) {
    const std::uint64_t seed = derive_seed(o.seed, spec.name, static_cast<std::uint64_t>(i));
    const int dim = o.dim_min + static_cast<int>(i % dim_span);
    try {
      slots[i] = spec.fn(o, seed, dim);
    } catch (const std::exception& e) {
      SampleOutcome bad;
      bad.margin = -kInf;
      bad.detail = std::string("exception: ") + e.what();
      bad.params = params_json(seed, dim, {});
      slots[i] = bad;
    }
  });

  PropertyResult result;
  result.name = spec.name;
  result.worst_margin = kInf;
  std::map<int, double> aux_by_dim;
  for (long i = 0; i < count; ++i) {
    const SampleOutcome& s = slots[i];
    ++result.samples;
    result.sub_checks += s.sub_checks;
    result.sub_skips += s.sub_skips;
    if (s.skip) {
      ++result.skips;
      continue;
    }
    result.worst_margin = std::min(result.worst_margin, s.margin);
    if (s.margin >= 0.0) {
      ++result.passes;
    } else {
      ++result.violations;
      if (static_cast<int>(result.replays.size()) < o.max_replays) {
        ReplayRecord r;
        r.property = spec.name;
        r.sample_seed = derive_seed(o.seed, spec.name, static_cast<std::uint64_t>(i));
        r.dim = o.dim_min + static_cast<int>(i % dim_span);
        r.params = s.params;
        r.detail = s.detail;
        r.margin = s.margin;
        result.replays.push_back(std::move(r));
      }
    }
    if (std::isfinite(s.aux)) {
      const int dim = o.dim_min + static_cast<int>(i % dim_span);
      auto [it, inserted] = aux_by_dim.try_emplace(dim, s.aux);
      if (!inserted) {
        it->second = std::min(it->second, s.aux);
      }
    }
  }
  if (!aux_by_dim.empty()) {
    std::string note = "empirical min by dim:";
    for (const auto& [dim, value] : aux_by_dim) {
      note += " " + std::to_string(dim) + ":" + format_scalar(value);
    }
    result.note = note;
  }
  if (result.sub_checks > 0) {
    if (!result.note.empty()) result.note += "; ";
    result.note += "conditional assertions: " + std::to_string(result.sub_checks - result.sub_skips) +
                   "/" + std::to_string(result.sub_checks);
  }
  return result;
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.dim_min < 1 || opts.dim_max < opts.dim_min) {
    throw InvalidParameter("run_verification: invalid dimension range");
  }
  if (opts.samples < 1) {
    throw InvalidParameter("run_verification: need at least one sample");
  }
  VerifyReport report;
  for (const PropertySpec& spec : kProperties) {
    if (opts.suite != Suite::All && spec.suite != opts.suite) {
      continue;
    }
    report.properties.push_back(run_sweep(opts, spec));
  }
  return report;
}

}  // namespace spdmeans

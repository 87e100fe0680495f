#include "sheath/sagdeev.hpp"

#include <cmath>

#include "sheath/error.hpp"

namespace sheath {

std::string_view to_string(Side side) {
  return side == Side::kAttractive ? "attractive" : "repulsive";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::kStrict: return "STRICT";
    case Classification::kMarginalSolvable: return "MARGINAL_SOLVABLE";
    case Classification::kMarginalEmpty: return "MARGINAL_EMPTY";
    case Classification::kViolated: return "VIOLATED";
  }
  return "VIOLATED";
}

KineticPseudopotential::KineticPseudopotential(KernelContext ctx, ElectronModel ne, IonBranch branch)
    : ctx_(std::move(ctx)), ne_(std::move(ne)), branch_(branch) {}

double KineticPseudopotential::value(double phi) const {
  IonPotential ion = ion_potential(ctx_, branch_, phi);
  return phi * (ion.linear - 1.0) + phi * phi * (ion.reduced + ne_.excess(phi));
}

double KineticPseudopotential::reduced(double phi) const {
  IonPotential ion = ion_potential(ctx_, branch_, phi);
  return (ion.linear - 1.0) / phi + ion.reduced + ne_.excess(phi);
}

double KineticPseudopotential::force(double phi) const {
  return sheath::ion_density(ctx_, branch_, phi) - ne_.density(phi);
}

double KineticPseudopotential::ion_density(double phi) const {
  return sheath::ion_density(ctx_, branch_, phi);
}

std::optional<double> KineticPseudopotential::exact_curvature() const {
  if (branch_ != IonBranch::kAbsorbing) return std::nullopt;
  BohmIntegral k = branch_bohm_integral(ctx_, branch_);
  if (k.infinite) return -std::numeric_limits<double>::infinity();
  return -k.value - ne_.derivative(0.0);
}

std::vector<double> scan_grid(double phi_max, std::size_t points, Side side) {
  if (points < 8) fail(ErrorCode::kInvalidInput, "scan grid needs at least 8 points");
  double sign = side == Side::kAttractive ? 1.0 : -1.0;
  std::vector<double> g(points);
  g[0] = 0.0;
  const std::size_t n_log = points / 2;
  const double l0 = std::log(1e-6 * phi_max), l1 = std::log(1e-2 * phi_max);
  for (std::size_t i = 0; i < n_log; ++i)
    g[i + 1] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / (n_log - 1));
  const std::size_t n_lin = points - 1 - n_log;
  for (std::size_t i = 1; i <= n_lin; ++i)
    g[n_log + i] = 1e-2 * phi_max + (phi_max - 1e-2 * phi_max) * static_cast<double>(i) / n_lin;
  for (double& v : g) v *= sign;
  return g;
}

Classification classify(const SagdeevData& data, double tolerance) {
  if (data.K.infinite || !std::isfinite(data.d2V0)) return Classification::kViolated;
  if (data.d2V0 > tolerance) return Classification::kStrict;
  if (data.d2V0 < -tolerance) return Classification::kViolated;
  bool positive_start = data.V_values.size() > 1 && data.V_values[1] > 0.0;
  return positive_start ? Classification::kMarginalSolvable : Classification::kMarginalEmpty;
}

SagdeevData analyze_pseudopotential(std::shared_ptr<const Pseudopotential> potential, Side side,
                                    const SagdeevOptions& options, BohmIntegral K) {
  if (!(options.phi_max > 0.0)) fail(ErrorCode::kInvalidInput, "phi_max must be positive");
  SagdeevData d;
  d.side = side;
  d.K = K;
  d.tolerance = options.tolerance;
  d.phi_max = std::min(options.phi_max, potential->domain_limit(side) * (1.0 - 1e-9));
  d.grid = scan_grid(d.phi_max, options.grid_points, side);
  d.V_values.resize(d.grid.size());
  d.V_values[0] = 0.0;
  for (std::size_t i = 1; i < d.grid.size(); ++i) d.V_values[i] = potential->value(d.grid[i]);

  // one-sided stencils into the working side
  const double h = (side == Side::kAttractive ? 1.0 : -1.0) * options.fd_step;
  double f[5];
  for (int k = 0; k < 5; ++k) f[k] = potential->force(k * h);
  double fourth = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  double second = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d.d2V0_second_order = second;
  if (auto exact = potential->exact_curvature()) {
    d.d2V0 = *exact;
    d.d2V0_exact = true;
    d.fd_discrepancy = std::isfinite(*exact) ? std::abs(fourth - *exact) : 0.0;
  } else {
    d.d2V0 = K.infinite ? -std::numeric_limits<double>::infinity() : fourth;
    d.fd_discrepancy = std::abs(fourth - second);
  }
  d.classification = classify(d, options.tolerance);

  // first sign change of V away from 0
  d.bound.unbounded = true;
  d.bound.value = d.grid.back();
  for (std::size_t i = 1; i < d.grid.size(); ++i) {
    if (d.V_values[i] > 0.0) continue;
    d.bound.unbounded = false;
    if (i == 1) {
      d.bound.value = 0.0;
      break;
    }
    double lo = d.grid[i - 1], hi = d.grid[i];
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-10 * std::abs(hi); ++it) {
      double mid = 0.5 * (lo + hi);
      (potential->value(mid) > 0.0 ? lo : hi) = mid;
    }
    d.bound.value = 0.5 * (lo + hi);
    break;
  }
  d.potential = std::move(potential);
  return d;
}

SagdeevData build_sagdeev(const KernelContext& ctx, const ElectronModel& ne, Side side,
                          const SagdeevOptions& options) {
  ctx.bc.validate();
  double m = mass(ctx.f_inf, ctx.quad);
  if (!(std::abs(m - 1.0) < 1e-8))
    fail(ErrorCode::kNeutralityViolation, "mass(f_inf) = " + std::to_string(m) + ", expected 1");
  double sign = side == Side::kAttractive ? 1.0 : -1.0;
  ne.require_positive(std::min(0.0, sign * options.phi_max), std::max(0.0, sign * options.phi_max));
  IonBranch branch = select_branch(ctx, side == Side::kRepulsive);
  auto potential = std::make_shared<KineticPseudopotential>(ctx, ne, branch);
  return analyze_pseudopotential(std::move(potential), side, options,
                                 branch_bohm_integral(ctx, branch));
}

BohmReport bohm_report(const SagdeevData& data, double tolerance) {
  BohmReport r;
  r.side = data.side;
  r.classification = classify(data, tolerance);
  r.K = data.K;
  r.d2V0 = data.d2V0;
  r.fd_discrepancy = data.fd_discrepancy;
  r.bound = data.bound;
  r.phi_max = data.phi_max;
  r.tolerance = tolerance;
  return r;
}

BohmReport bohm_report(const SagdeevData& data) { return bohm_report(data, data.tolerance); }

namespace {
PositivityBound positivity_bound(const SagdeevData& data, Side expected) {
  if (data.side != expected)
    fail(ErrorCode::kNotApplicable, "positivity bound requested on the wrong side");
  if (data.classification != Classification::kStrict &&
      data.classification != Classification::kMarginalSolvable)
    fail(ErrorCode::kNotApplicable,
         "positivity set is empty for classification " + std::string(to_string(data.classification)));
  return data.bound;
}
}  // namespace

PositivityBound sup_b(const SagdeevData& data) { return positivity_bound(data, Side::kAttractive); }
PositivityBound inf_b(const SagdeevData& data) { return positivity_bound(data, Side::kRepulsive); }

}  // namespace sheath

#include "sheath/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "sheath/error.hpp"

namespace sheath {

HydroPseudopotential::HydroPseudopotential(std::vector<Beam> beams, ElectronModel ne)
    : beams_(std::move(beams)), ne_(std::move(ne)) {
  for (const Beam& b : beams_) total_mass_ += b.mass;
}

double HydroPseudopotential::reduced(double phi) const {
  // m v (S - v) = m phi - 2 m phi^2 / (S + v)^2
  double j = 0.0;
  for (const Beam& b : beams_) {
    double d = std::sqrt(b.speed * b.speed + 2.0 * phi) + b.speed;
    j += b.mass / (d * d);
  }
  return (total_mass_ - 1.0) / phi - 2.0 * j + ne_.excess(phi);
}

double HydroPseudopotential::value(double phi) const {
  if (phi == 0.0) return 0.0;
  double j = 0.0;
  for (const Beam& b : beams_) {
    double d = std::sqrt(b.speed * b.speed + 2.0 * phi) + b.speed;
    j += b.mass / (d * d);
  }
  return phi * (total_mass_ - 1.0) + phi * phi * (ne_.excess(phi) - 2.0 * j);
}

double HydroPseudopotential::ion_density(double phi) const {
  double rho = 0.0;
  for (const Beam& b : beams_) rho += b.mass * b.speed / std::sqrt(b.speed * b.speed + 2.0 * phi);
  return rho;
}

double HydroPseudopotential::force(double phi) const { return ion_density(phi) - ne_.density(phi); }

std::optional<double> HydroPseudopotential::exact_curvature() const {
  double k = 0.0;
  for (const Beam& b : beams_) k += b.mass / (b.speed * b.speed);
  return -k - ne_.derivative(0.0);
}

double HydroPseudopotential::domain_limit(Side side) const {
  if (side == Side::kAttractive) return std::numeric_limits<double>::infinity();
  double lim = std::numeric_limits<double>::infinity();
  for (const Beam& b : beams_) lim = std::min(lim, 0.5 * b.speed * b.speed);
  return lim;
}

double hydro_density(const HydroModel& model, double phi) {
  if (const auto* ep = std::get_if<EulerPoissonModel>(&model))
    return ep->u_inf / std::sqrt(ep->u_inf * ep->u_inf + 2.0 * phi);
  const auto& g = std::get<GeneralizedModel>(model);
  double rho = (1.0 + g.alpha) * g.m_inf * g.v_inf / std::sqrt(g.v_inf * g.v_inf + 2.0 * phi);
  if (g.m_b > 0.0) rho += g.m_b * g.v_b / std::sqrt(g.v_b * g.v_b + 2.0 * phi);
  return rho;
}

double HydroSolution::rho_at(double x) const { return hydro_density(model, profile.evaluate(x)); }

namespace {

HydroSolution solve_beams(HydroModel model, std::vector<HydroPseudopotential::Beam> beams,
                          double flux, double phi_b, const ElectronModel& ne,
                          const SolveOptions& options) {
  HydroSolution sol;
  sol.model = model;
  sol.flux = flux;
  double k = 0.0;
  for (const auto& b : beams) k += b.mass / (b.speed * b.speed);
  auto pot = std::make_shared<HydroPseudopotential>(std::move(beams), ne);
  if (phi_b == 0.0) {
    sol.profile = PotentialProfile::trivial(options.profile.grid_points);
  } else {
    Side side = phi_b > 0.0 ? Side::kAttractive : Side::kRepulsive;
    if (side == Side::kRepulsive && !(-phi_b < pot->domain_limit(side)))
      fail(ErrorCode::kPhiBOutOfRange, "phi_b below -v^2/2 leaves the cold-beam domain");
    double sign = side == Side::kAttractive ? 1.0 : -1.0;
    double lim = std::min(options.sagdeev.phi_max, pot->domain_limit(side));
    ne.require_positive(std::min(0.0, sign * lim), std::max(0.0, sign * lim));
    auto data = std::make_shared<const SagdeevData>(
        analyze_pseudopotential(pot, side, options.sagdeev, {k, false}));
    sol.profile = solve_phi(*data, phi_b, options.profile);
    sol.sagdeev = std::move(data);
  }
  const auto& phi = sol.profile.phi();
  sol.rho.resize(phi.size());
  sol.u.resize(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    sol.rho[i] = hydro_density(model, phi[i]);
    sol.u[i] = flux / sol.rho[i];
  }
  if (const auto* ep = std::get_if<EulerPoissonModel>(&model))
    for (std::size_t i = 0; i < phi.size(); ++i)
      sol.u[i] = -std::sqrt(ep->u_inf * ep->u_inf + 2.0 * phi[i]);
  return sol;
}

}  // namespace

HydroSolution solve_euler_poisson(double u_inf, double phi_b, const ElectronModel& ne,
                                  const SolveOptions& options) {
  if (!(u_inf >= 1.0)) fail(ErrorCode::kBohmViolated, "u_inf^2 >= 1 is required");
  return solve_beams(EulerPoissonModel{u_inf}, {{1.0, u_inf}}, -u_inf, phi_b, ne, options);
}

HydroSolution solve_generalized(const GeneralizedModel& g, double phi_b, const ElectronModel& ne,
                                const SolveOptions& options) {
  BoundaryConfig{phi_b, g.alpha}.validate();
  try {
    check_velocity_condition({g.m_b, g.m_inf, g.v_b, g.v_inf, g.alpha, phi_b});
  } catch (const SheathError& e) {
    fail(ErrorCode::kVelocity1Violated, e.what());
  }
  std::vector<HydroPseudopotential::Beam> beams;
  if (g.m_b > 0.0) beams.push_back({g.m_b, g.v_b});
  beams.push_back({(1.0 + g.alpha) * g.m_inf, g.v_inf});
  double flux = g.m_b * g.v_b + (g.alpha - 1.0) * g.m_inf * g.v_inf;
  return solve_beams(g, std::move(beams), flux, phi_b, ne, options);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct EpsErrors {
  double rho = 0.0, flux = 0.0, phi = 0.0;
  StudyProfile profile;
};

EpsErrors compare(const SheathSolution& kin, const HydroSolution& hyd) {
  EpsErrors e;
  const auto& x = kin.profile().x();
  const auto& phi = kin.profile().phi();
  const auto& m = kin.moments();
  e.profile.x = x;
  e.profile.phi = phi;
  e.profile.rho = m.rho;
  e.profile.flux = m.flux;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double phi_h = hyd.phi_at(x[i]);
    double rho_h = hydro_density(hyd.model, phi_h);
    e.profile.phi_hydro.push_back(phi_h);
    e.profile.rho_hydro.push_back(rho_h);
    e.phi = std::max(e.phi, std::abs(phi[i] - phi_h));
    e.rho = std::max(e.rho, std::abs(m.rho[i] - rho_h));
    e.flux = std::max(e.flux, std::abs(m.flux[i] - hyd.flux));
  }
  return e;
}

}  // namespace

ConvergenceStudy delta_mass_study(const FamilyKind& scenario, double phi_b,
                                  const std::vector<double>& eps_list, const ElectronModel& ne,
                                  const StudyOptions& options) {
  if (eps_list.empty()) fail(ErrorCode::kInvalidInput, "eps list is empty");
  FamilyKind family = scenario;
  HydroSolution hyd;
  double alpha = 0.0;
  ConvergenceStudy study;
  if (auto* a = std::get_if<AbsorbingFamily>(&family)) {
    if (!(phi_b > 0.0))
      fail(ErrorCode::kInvalidInput, "the absorbing family needs an attractive wall, phi_b > 0");
    hyd = solve_euler_poisson(a->u_inf, phi_b, ne, options.solve);
    study.outside_theorem = ne.kind() != ElectronModel::Kind::kBoltzmann;
  } else {
    auto& g = std::get<GeneralFamily>(family);
    g.phi_b = phi_b;
    alpha = g.alpha;
    hyd = solve_generalized({g.m_b, g.m_inf, g.v_b, g.v_inf, g.alpha}, phi_b, ne, options.solve);
  }

  auto run = [&](double eps) {
    DistributionPair pair = make_delta_family(family, eps, options.skew);
    KernelContext ctx;
    ctx.f_inf = pair.f_inf;
    ctx.f_b = pair.f_b;
    ctx.bc = {phi_b, alpha};
    SheathSolution kin = solve_sheath(ctx, ne, options.solve);
    return compare(kin, hyd);
  };
  std::vector<EpsErrors> errors;
  if (options.concurrent) {
    std::vector<std::future<EpsErrors>> jobs;
    for (double eps : eps_list) jobs.push_back(std::async(std::launch::async, run, eps));
    for (auto& j : jobs) errors.push_back(j.get());
  } else {
    for (double eps : eps_list) errors.push_back(run(eps));
  }

  study.eps = eps_list;
  std::vector<double> total;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    study.err_rho.push_back(errors[i].rho);
    study.err_flux.push_back(errors[i].flux);
    study.err_phi.push_back(errors[i].phi);
    total.push_back(errors[i].rho + errors[i].flux + errors[i].phi);
    study.profiles.push_back(std::move(errors[i].profile));
    study.c0_estimate = std::max(study.c0_estimate, total.back() / eps_list[i]);
  }
  if (eps_list.size() >= 3) {
    study.slope_rho = loglog_slope(study.eps, study.err_rho);
    study.slope_flux = loglog_slope(study.eps, study.err_flux);
    study.slope_phi = loglog_slope(study.eps, study.err_phi);
    study.slope_total = loglog_slope(study.eps, total);
  }
  return study;
}

}  // namespace sheath

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sheath/electrons.hpp"
#include "sheath/error.hpp"
#include "sheath/hydro.hpp"
#include "sheath/sagdeev.hpp"
#include "sheath/sheath_solver.hpp"
#include "sheath/wall.hpp"

using namespace sheath;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = budget_s <= 0.0 || dt < budget_s;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s [%2d] %-28s %s | %.2f s%s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt,
              in_time ? "" : " (over budget)");
  std::fflush(stdout);
}

void info(const std::string& text) { std::printf("     [ i] %s\n", text.c_str()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SheathError& e) {
    return e.code();
  }
  return ErrorCode::kInvalidInput;
}

bool is_marginal(Classification c) {
  return c == Classification::kMarginalSolvable || c == Classification::kMarginalEmpty;
}

// int f(x, xi) dxi by nested quadrature of the pointwise reconstruction, using the
// axial symmetry of unskewed bumps: dxi_2 dxi_3 -> 2 pi r dr.
double density_2d(const SheathSolution& sol, double x) {
  const KernelContext& ctx = sol.context();
  const double p = sol.profile().evaluate(x);
  std::vector<double> breaks{0.0};
  double reach = 0.0, width = 0.0;
  auto add = [&](double xi) {
    if (std::isfinite(xi)) {
      breaks.push_back(xi);
      breaks.push_back(-xi);
      reach = std::max(reach, std::abs(xi));
    }
  };
  if (p > 0.0) add(std::sqrt(2.0 * p));
  for (const DistributionSpec* f : {&ctx.f_inf, &ctx.f_b})
    for (std::size_t k = 0; k < f->bumps().size(); ++k) {
      width = std::max(width, f->bumps()[k].width);
      for (const Interval& iv : f->bump_support(k))
        for (double a : {iv.lo, iv.hi, 0.5 * (iv.lo + iv.hi)}) {
          if (a * a + 2.0 * p >= 0.0) add(std::sqrt(a * a + 2.0 * p));
          double c = 2.0 * (ctx.bc.phi_b - p);
          if (a * a - c >= 0.0) add(std::sqrt(a * a - c));
        }
    }
  QuadratureSettings q{1e-11, 2000};
  auto slice = [&](double xi1) {
    return quad::integrate(
        [&](double r) { return 2.0 * M_PI * r * sol.f(x, {xi1, r, 0.0}); }, 0.0, width, q);
  };
  return quad::integrate(slice, -reach - 1e-12, reach + 1e-12, breaks, q);
}

SolveOptions full_grid() {
  SolveOptions o;
  o.sagdeev.grid_points = 10000;
  o.profile.grid_points = 10000;
  return o;
}

// 4th-order central difference on a uniform grid, interior points only.
std::vector<double> derivative4(const std::vector<double>& y, double h) {
  std::vector<double> d(y.size(), NAN);
  for (std::size_t i = 2; i + 2 < y.size(); ++i)
    d[i] = (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h);
  return d;
}

}  // namespace

int main() {
  const ElectronModel boltz = ElectronModel::boltzmann();

  criterion(1, "Bohm gate", 5.0, [&] {
    // tau = 2e-4: the sonic beam has d2V0 = 1 - K = -3.4e-5 at eps = 0.01
    const double tau = 2e-4;
    SagdeevOptions so;
    so.tolerance = tau;
    Outcome o;
    struct Case {
      double u;
      bool (*expect)(Classification);
      const char* label;
    };
    const Case cases[] = {
        {0.8, [](Classification c) { return c == Classification::kViolated; }, "VIOLATED"},
        {1.0, is_marginal, "MARGINAL"},
        {2.0, [](Classification c) { return c == Classification::kStrict; }, "STRICT"},
    };
    for (const Case& c : cases) {
      auto data = build_sagdeev(fixture::absorbing(c.u, 0.01, 1.0), boltz, Side::kAttractive, so);
      double dk = std::abs(data.K.value - 1.0 / (c.u * c.u));
      bool ok = c.expect(data.classification) && !data.K.infinite && dk < 2e-4;
      o.pass = o.pass && ok;
      o.detail += fmt("u=%.1f %s |K-u^-2|=%.1e; ", c.u, std::string(to_string(data.classification)).c_str(), dk);
      if (c.u == 1.0)
        info(fmt("u=1 with the default band tau=1e-6 classifies %s (d2V0=%.3e)",
                 std::string(to_string(classify(data, 1e-6))).c_str(), data.d2V0));
    }
    return o;
  });

  criterion(2, "Trivial solution", 1.0, [&] {
    auto ctx = fixture::absorbing(2.0, 0.01, 0.0);
    auto sol = solve_sheath(ctx, boltz, full_grid());
    bool exact = sol.profile().is_trivial();
    for (double p : sol.profile().phi()) exact = exact && p == 0.0;
    for (double d : sol.profile().dphi()) exact = exact && d == 0.0;
    for (double xi1 : {-2.009, -2.0, -1.995})
      for (double x : {0.0, 0.5})
        exact = exact && sol.f(x, {xi1, 0.002, -0.001}) == ctx.f_inf({xi1, 0.002, -0.001});
    double poisson = poisson_residual(sol);
    double flux_res = 0.0;
    for (double f : sol.moments().flux) flux_res = std::max(flux_res, std::abs(f - sol.reference_flux()));
    // zero up to the rounding of the moment quadratures
    bool zero = poisson < 1e-14 && flux_res < 1e-14;
    return Outcome{exact && zero, fmt("f, phi, phi' exact=%d; Poisson %.1e, flux %.1e", exact, poisson, flux_res)};
  });

  struct Solved {
    const char* name;
    SheathSolution sol;
  };
  std::vector<Solved> solved;

  criterion(3, "First integral / Poisson", 30.0, [&] {
    solved.clear();
    solved.push_back({"absorbing", solve_sheath(fixture::absorbing(2.0, 0.01, 1.0), boltz, full_grid())});
    solved.push_back({"with f_b", solve_sheath(fixture::general(), boltz, full_grid())});
    solved.push_back({"repulsive", solve_sheath(fixture::absorbing(2.0, 0.01, -0.3), boltz, full_grid())});
    Outcome o;
    for (const auto& s : solved) {
      double fi = first_integral_residual(s.sol.profile(), *s.sol.sagdeev()->potential);
      double pr = poisson_residual(s.sol);
      o.pass = o.pass && fi < 1e-7 && pr < 1e-5 && s.sol.profile().phi().size() == 10000;
      o.detail += fmt("%s %.1e/%.1e; ", s.name, fi, pr);
    }
    // stress case, not scored: a narrow trapped bump makes rho(phi) steep enough that the
    // second-difference truncation error alone approaches the bound
    solved.push_back({"trapped", solve_sheath(fixture::trapped(), boltz, full_grid())});
    const auto& t = solved.back().sol;
    info(fmt("trapped f_b stress case: first integral %.1e, Poisson %.2e (bound 1e-5, not scored)",
             first_integral_residual(t.profile(), *t.sagdeev()->potential), poisson_residual(t)));
    return o;
  });

  criterion(4, "Reconstruction identity", 60.0, [&] {
    Outcome o{!solved.empty(), ""};
    for (const auto& s : solved) {
      const auto& x = s.sol.profile().x();
      double worst = 0.0;
      for (int i = 0; i < 10; ++i) {
        double xi = x[(x.size() - 1) * i / 9] * (i == 9 ? 0.5 : 1.0);
        double direct = density_2d(s.sol, xi);
        worst = std::max(worst, std::abs(direct - s.sol.density(xi)));
      }
      o.pass = o.pass && worst < 1e-6;
      o.detail += fmt("%s %.1e; ", s.name, worst);
    }
    return o;
  });

  criterion(5, "Flux constancy", 0.0, [&] {
    Outcome o{!solved.empty(), ""};
    for (const auto& s : solved) {
      double worst = 0.0;
      for (double f : s.sol.moments().flux) worst = std::max(worst, std::abs(f - s.sol.reference_flux()));
      o.pass = o.pass && worst < 1e-8;
      o.detail += fmt("%s %.1e; ", s.name, worst);
    }
    return o;
  });

  criterion(6, "Decay rate", 10.0, [&] {
    auto sol = solve_sheath(fixture::absorbing(2.0, 0.01, 1.0), boltz, full_grid());
    auto fit = fit_decay_rate(sol.profile());
    const double c = std::sqrt(3.0) / 2.0;
    double rel = std::abs(fit.rate - c) / c;
    return Outcome{rel < 0.05 && !fit.marginal, fmt("c=%.6f vs %.6f (rel %.1e, %zu pts)", fit.rate, c, rel, fit.points)};
  });

  criterion(7, "Euler-Poisson identities", 5.0, [&] {
    const double u_inf = 2.0;
    auto sol = solve_euler_poisson(u_inf, 1.0, boltz, full_grid());
    const auto& phi = sol.phi();
    double flux_res = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i)
      flux_res = std::max(flux_res, std::abs(sol.rho[i] * std::sqrt(u_inf * u_inf + 2.0 * phi[i]) - u_inf));
    auto du = derivative4(sol.u, sol.profile.spacing());
    double mom_res = 0.0;
    for (std::size_t i = 2; i + 2 < phi.size(); ++i)
      mom_res = std::max(mom_res, std::abs(sol.u[i] * du[i] - sol.profile.dphi()[i]));
    return Outcome{flux_res < 1e-8 && mom_res < 1e-6, fmt("rho*sqrt(u^2+2phi)-u %.1e, u u'-phi' %.1e", flux_res, mom_res)};
  });

  criterion(8, "Delta-mass rate", 180.0, [&] {
    const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    StudyOptions opts;
    opts.solve = full_grid();
    opts.skew = {0.5, 0.0, 0.0};
    const double m_inf = (1.0 - 0.2) / 1.5;
    struct Run {
      const char* name;
      FamilyKind family;
      double phi_b;
    };
    const Run runs[] = {
        {"absorbing", AbsorbingFamily{2.0}, 0.05},
        {"general+", GeneralFamily{0.2, m_inf, 2.0, 2.0, 0.5, 0.05}, 0.05},
        {"general-", GeneralFamily{0.2, m_inf, 2.0, 2.0, 0.5, -0.05}, -0.05},
    };
    Outcome o;
    for (const Run& r : runs) {
      auto st = delta_mass_study(r.family, r.phi_b, eps, boltz, opts);
      bool mono = true;
      for (std::size_t i = 1; i < eps.size(); ++i)
        mono = mono && st.err_rho[i] < st.err_rho[i - 1] && st.err_flux[i] < st.err_flux[i - 1] &&
               st.err_phi[i] < st.err_phi[i - 1];
      auto in_band = [](const std::optional<double>& s) { return s && std::abs(*s - 1.0) <= 0.2; };
      bool ok = mono && in_band(st.slope_rho) && in_band(st.slope_flux) && in_band(st.slope_phi);
      o.pass = o.pass && ok;
      o.detail += fmt("%s slopes %.2f/%.2f/%.2f%s; ", r.name, st.slope_rho.value_or(NAN), st.slope_flux.value_or(NAN),
                      st.slope_phi.value_or(NAN), mono ? "" : " non-monotone");
    }
    // the literal (m_b, m_inf, alpha) = (0.2, 0.4, 0.5) violates quasi-neutrality
    bool literal_rejected = code_of([] { make_delta_family(GeneralFamily{0.2, 0.4, 2.0, 2.0, 0.5, 0.05}, 0.1); }) ==
                            ErrorCode::kRejectVelocity1;
    o.pass = o.pass && literal_rejected;
    info(fmt("m_inf = 0.4 tuple rejected with REJECT_VELOCITY1: %s; runs use m_inf = %.6f",
             literal_rejected ? "yes" : "no", m_inf));
    StudyOptions even = opts;
    even.skew = {0.0, 0.0, 0.0};
    auto st = delta_mass_study(AbsorbingFamily{2.0}, 0.05, eps, boltz, even);
    info(fmt("radially symmetric mollifier: slopes rho %.2f, phi %.2f, flux error %.1e (second order)",
             st.slope_rho.value_or(NAN), st.slope_phi.value_or(NAN), st.err_flux.back()));
    return o;
  });

  criterion(9, "Refusals", 5.0, [&] {
    SolveOptions so;
    so.sagdeev.grid_points = 10000;
    so.profile.grid_points = 500;
    auto poly = ElectronModel::polynomial({1.0, -1.0, 1.0});
    auto data = build_sagdeev(fixture::absorbing(2.0, 0.01, 0.5), poly, Side::kAttractive, so.sagdeev);
    double sup = sup_b(data).value;
    bool beyond = code_of([&] { solve_phi(data, 1.2 * sup); }) == ErrorCode::kPhiBOutOfRange;
    bool at = code_of([&] { solve_phi(data, sup); }) == ErrorCode::kPhiBOutOfRange;
    auto touching = fixture::absorbing(1.0, 0.1, -0.5);
    touching.f_inf = drifting_bump(0.2, 0.5);
    auto inf = build_sagdeev(touching, boltz, Side::kRepulsive, so.sagdeev);
    bool violated = inf.K.infinite && inf.classification == Classification::kViolated;
    auto reflecting = fixture::absorbing(2.0, 0.01, 0.5);
    reflecting.bc.alpha = 1.0;
    bool alpha = code_of([&] { solve_sheath(reflecting, boltz, so); }) == ErrorCode::kRejectAlphaOne &&
                 code_of([] { make_delta_family(GeneralFamily{0.0, 0.5, 2.0, 2.0, 1.0, 0.1}, 0.1); }) ==
                     ErrorCode::kRejectAlphaOne;
    return Outcome{beyond && at && violated && alpha,
                   fmt("supB=%.6f beyond=%d at=%d K infinite->VIOLATED=%d alpha=1=%d", sup, beyond, at, violated, alpha)};
  });

  criterion(10, "Wall reduction and bounds", 5.0, [&] {
    Outcome o;
    double worst = 0.0;
    for (auto [u, v_e] : {std::pair{2.0, 4.0}, std::pair{-2.0, -3.0}, std::pair{1.5, 0.7}}) {
      auto f = drifting_bump(u, 0.05);
      double phi0 = reduce_wall_potential(f, v_e, boltz);
      worst = std::max(worst, std::abs(phi0 + std::log(flux(f) / v_e)));
    }
    o.pass = worst < 1e-10;
    o.detail = fmt("wall |phi0 + ln(flux/v_e)| %.1e; ", worst);
    struct Case {
      const char* name;
      KernelContext ctx;
    };
    const Case cases[] = {{"absorbing", fixture::absorbing(2.0, 0.01, 1.0)},
                          {"with f_b", fixture::general()},
                          {"trapped", fixture::trapped()},
                          {"repulsive", fixture::absorbing(2.0, 0.01, -0.3)}};
    for (const Case& c : cases) {
      std::vector<double> samples;
      for (int i = 0; i < 20; ++i) samples.push_back(c.ctx.bc.phi_b * i / 19.0);
      auto rep = bound_check(c.ctx, samples);
      o.pass = o.pass && rep.passed && rep.min_slack >= 0.0 && rep.samples.size() == 20;
      o.detail += fmt("%s slack %.2e; ", c.name, rep.min_slack);
    }
    return o;
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}

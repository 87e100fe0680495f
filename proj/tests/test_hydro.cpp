#include <doctest.h>

#include <cmath>

#include "sheath/electrons.hpp"
#include "sheath/error.hpp"
#include "sheath/hydro.hpp"

using namespace sheath;

namespace {

SolveOptions options(std::size_t grid) {
  SolveOptions o;
  o.sagdeev.grid_points = 2000;
  o.profile.grid_points = grid;
  return o;
}

}  // namespace

TEST_CASE("Euler-Poisson solution conserves flux and energy") {
  auto sol = solve_euler_poisson(2.0, 0.5, ElectronModel::boltzmann(), options(4000));
  CHECK(sol.flux == doctest::Approx(-2.0).epsilon(1e-15));
  for (std::size_t i = 0; i < sol.phi().size(); ++i) {
    CHECK(std::abs(sol.rho[i] * std::sqrt(4.0 + 2.0 * sol.phi()[i]) - 2.0) < 1e-12);
    CHECK(std::abs(0.5 * sol.u[i] * sol.u[i] - sol.phi()[i] - 2.0) < 1e-12);
    CHECK(sol.u[i] < 0.0);
  }
  CHECK(sol.profile.tail_rate() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
}

TEST_CASE("cold density models") {
  CHECK(hydro_density(EulerPoissonModel{2.0}, 0.0) == doctest::Approx(1.0));
  CHECK(hydro_density(EulerPoissonModel{2.0}, 2.5) == doctest::Approx(2.0 / 3.0));
  GeneralizedModel g{0.2, 0.8 / 1.5, 2.0, 2.0, 0.5};
  CHECK(hydro_density(g, 0.0) == doctest::Approx(1.0));
  double phi = 0.4;
  CHECK(hydro_density(g, phi) == doctest::Approx(2.0 / std::sqrt(4.0 + 2.0 * phi)));
}

TEST_CASE("hydro refusals") {
  try {
    solve_euler_poisson(0.9, 0.5, ElectronModel::boltzmann(), options(200));
    FAIL("expected BOHM_VIOLATED");
  } catch (const SheathError& e) {
    CHECK(e.code() == ErrorCode::kBohmViolated);
  }
  try {
    solve_generalized({0.2, 0.4, 2.0, 2.0, 0.5}, 0.05, ElectronModel::boltzmann(), options(200));
    FAIL("expected VELOCITY1_VIOLATED");
  } catch (const SheathError& e) {
    CHECK(e.code() == ErrorCode::kVelocity1Violated);
  }
}

TEST_CASE("generalized model on the repulsive side") {
  GeneralizedModel g{0.2, 0.8 / 1.5, 2.0, 2.0, 0.5};
  auto sol = solve_generalized(g, -0.05, ElectronModel::boltzmann(), options(2000));
  CHECK(sol.phi().front() == doctest::Approx(-0.05));
  CHECK(sol.flux == doctest::Approx(0.2 * 2.0 - 0.5 * (0.8 / 1.5) * 2.0).epsilon(1e-14));
  CHECK(sol.rho_at(0.0) == doctest::Approx(hydro_density(g, -0.05)).epsilon(1e-12));
}

TEST_CASE("log-log slope of exact power laws") {
  std::vector<double> x{0.2, 0.1, 0.05}, y;
  for (double v : x) y.push_back(3.0 * v * v);
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("delta-mass errors shrink with eps") {
  StudyOptions o;
  o.solve = options(2000);
  o.skew = {0.5, 0.0, 0.0};
  auto study = delta_mass_study(AbsorbingFamily{2.0}, 0.05, {0.2, 0.1, 0.05}, ElectronModel::boltzmann(), o);
  REQUIRE(study.err_rho.size() == 3);
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(study.err_rho[i] < study.err_rho[i - 1]);
    CHECK(study.err_flux[i] < study.err_flux[i - 1]);
    CHECK(study.err_phi[i] < study.err_phi[i - 1]);
  }
  REQUIRE(study.slope_total.has_value());
  CHECK(*study.slope_total == doctest::Approx(1.0).epsilon(0.2));
  CHECK_FALSE(study.outside_theorem);
  auto poly = delta_mass_study(AbsorbingFamily{2.0}, 0.05, {0.2}, ElectronModel::polynomial({1, -1, 0.5}), o);
  CHECK(poly.outside_theorem);
  CHECK_FALSE(poly.slope_total.has_value());
}

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sheath/electrons.hpp"
#include "sheath/error.hpp"
#include "sheath/hydro.hpp"
#include "sheath/sagdeev.hpp"

using namespace sheath;

namespace {

SagdeevOptions fast(double tol = 1e-6) {
  SagdeevOptions o;
  o.grid_points = 2000;
  o.tolerance = tol;
  return o;
}

}  // namespace

TEST_CASE("scan grid layout") {
  auto g = scan_grid(10.0, 1000, Side::kAttractive);
  REQUIRE(g.size() == 1000);
  CHECK(g.front() == 0.0);
  CHECK(g[1] == doctest::Approx(1e-5));
  CHECK(g.back() == doctest::Approx(10.0));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  auto r = scan_grid(2.0, 100, Side::kRepulsive);
  CHECK(r.back() == doctest::Approx(-2.0));
}

TEST_CASE("classification of drifting beams") {
  auto ne = ElectronModel::boltzmann();
  auto strict = build_sagdeev(fixture::absorbing(2.0, 0.01, 1.0), ne, Side::kAttractive, fast());
  CHECK(strict.classification == Classification::kStrict);
  CHECK(strict.d2V0_exact);
  CHECK(strict.d2V0 == doctest::Approx(1.0 - oracle::kBohmK_u2).epsilon(1e-12));
  CHECK(std::abs(strict.d2V0 - strict.d2V0_second_order) < 1e-6);

  auto slow = build_sagdeev(fixture::absorbing(0.8, 0.01, 1.0), ne, Side::kAttractive, fast());
  CHECK(slow.classification == Classification::kViolated);
  CHECK_THROWS_AS(sup_b(slow), SheathError);

  auto sonic = build_sagdeev(fixture::absorbing(1.0, 0.01, 1.0), ne, Side::kAttractive, fast(2e-4));
  CHECK(sonic.d2V0 == doctest::Approx(1.0 - oracle::kBohmK_u1).epsilon(1e-9));
  // d2V0 is slightly negative, so V < 0 next to 0 and B is empty at grid resolution
  CHECK(sonic.classification == Classification::kMarginalEmpty);
  // the default band is too narrow to call it marginal
  CHECK(classify(sonic, 1e-6) == Classification::kViolated);
}

TEST_CASE("finite sup B for polynomial electrons") {
  auto ne = ElectronModel::polynomial({1.0, -1.0, 1.0});
  auto data = build_sagdeev(fixture::absorbing(2.0, 0.01, 0.5), ne, Side::kAttractive, fast());
  auto b = sup_b(data);
  REQUIRE_FALSE(b.unbounded);
  CHECK(b.value == doctest::Approx(oracle::kSupBPolynomial).epsilon(1e-9));
  CHECK(std::abs(data.potential->value(b.value)) < 1e-9);
}

TEST_CASE("cold-beam Boltzmann potential stays positive on both sides") {
  auto ne = ElectronModel::boltzmann();
  auto att = build_sagdeev(fixture::absorbing(2.0, 0.01, 1.0), ne, Side::kAttractive, fast());
  CHECK(sup_b(att).unbounded);
  auto rep = build_sagdeev(fixture::absorbing(2.0, 0.01, -1.0), ne, Side::kRepulsive, fast());
  CHECK(rep.classification == Classification::kStrict);
  CHECK(inf_b(rep).unbounded);
  for (double v : rep.V_values) CHECK(v >= 0.0);
}

TEST_CASE("infinite Bohm integral is violated") {
  auto ctx = fixture::absorbing(0.3, 0.5, 1.0);
  ctx.f_inf = drifting_bump(0.3, 0.5);
  auto data = build_sagdeev(ctx, ElectronModel::boltzmann(), Side::kRepulsive, fast());
  CHECK(data.K.infinite);
  CHECK(data.classification == Classification::kViolated);
}

TEST_CASE("quasi-neutrality is enforced") {
  auto ctx = fixture::absorbing(2.0, 0.1, 1.0);
  ctx.f_inf = drifting_bump(-2.0, 0.1, 0.9);
  try {
    build_sagdeev(ctx, ElectronModel::boltzmann(), Side::kAttractive, fast());
    FAIL("expected NEUTRALITY_VIOLATION");
  } catch (const SheathError& e) {
    CHECK(e.code() == ErrorCode::kNeutralityViolation);
  }
}

TEST_CASE("hydrodynamic potential has the cold-beam curvature") {
  auto pot = std::make_shared<HydroPseudopotential>(
      std::vector<HydroPseudopotential::Beam>{{1.0, 2.0}}, ElectronModel::boltzmann());
  CHECK(*pot->exact_curvature() == doctest::Approx(0.75).epsilon(1e-15));
  double phi = 0.8;
  double exact = 2.0 * (std::sqrt(4.0 + 2.0 * phi) - 2.0) + std::exp(-phi) - 1.0;
  CHECK(pot->value(phi) == doctest::Approx(exact).epsilon(1e-14));
  auto data = analyze_pseudopotential(pot, Side::kRepulsive, fast(), {0.25, false});
  CHECK(data.phi_max <= 2.0);
}

TEST_CASE("report carries the classification inputs") {
  auto data = build_sagdeev(fixture::absorbing(2.0, 0.01, 1.0), ElectronModel::boltzmann(),
                            Side::kAttractive, fast());
  auto r = bohm_report(data);
  CHECK(r.classification == Classification::kStrict);
  CHECK(r.K.value == doctest::Approx(oracle::kBohmK_u2).epsilon(1e-13));
  CHECK(to_string(r.classification) == "STRICT");
  CHECK(to_string(Classification::kMarginalEmpty) == "MARGINAL_EMPTY");
}

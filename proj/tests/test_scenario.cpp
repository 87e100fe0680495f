#include <doctest.h>

#include "sheath/error.hpp"
#include "sheath/scenario.hpp"

using namespace sheath;

namespace {

ErrorCode parse_code(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const SheathError& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::kInvalidInput;
}

constexpr std::string_view kFull = R"(# wall with a returning beam
electrons = polynomial
electrons.coefficients = 1, -1, 0.5
boundary.phi_b = 0.25
boundary.alpha = 0.5
boundary.v_e = -3
f_inf.bump.1.mass = 0.6
f_inf.bump.1.center = -2, 0, 0
f_inf.bump.1.width = 0.1
f_inf.bump.2.mass = 0.4
f_inf.bump.2.center = 2, 0, 0
f_inf.bump.2.width = 0.05
f_inf.bump.2.skew = 0.2, 0, 0
f_b.cutoff = positive
f_b.energy_shift = 0.5
f_b.bump.1.mass = 0.1
f_b.bump.1.center = 2, 0, 0
f_b.bump.1.width = 0.1
f_b.bump.2.mass = 0.01
f_b.bump.2.center = 0.4, 0, 0
f_b.bump.2.width = 0.1
f_b.bump.2.shift = 0
solver.grid = 500
sweep.eps = 0.2, 0.1
output.dir = results
)";

}  // namespace

TEST_CASE("parse reads every block") {
  Scenario s = parse_scenario(kFull);
  CHECK(s.electrons == ElectronModel::Kind::kPolynomial);
  CHECK(s.electron_coefficients == std::vector<double>{1.0, -1.0, 0.5});
  CHECK(s.boundary.phi_b == 0.25);
  CHECK(s.boundary.has_v_e);
  REQUIRE(s.f_inf.bumps.size() == 2);
  CHECK(s.f_inf.bumps[1].skew[0] == 0.2);
  CHECK(s.f_b.cutoff == Cutoff::kPositive);
  CHECK(s.f_b.bumps[0].energy_shift == 0.5);
  CHECK(s.f_b.bumps[1].energy_shift == 0.0);
  CHECK(s.solver.grid == 500);
  CHECK(s.sweep_eps.size() == 2);
  CHECK(s.output_dir == "results");
}

TEST_CASE("canonical text round-trips and hashes deterministically") {
  Scenario s = parse_scenario(kFull);
  std::string text = format_scenario(s);
  Scenario back = parse_scenario(text);
  CHECK(back == s);
  CHECK(format_scenario(back) == text);
  CHECK(scenario_hash(back) == scenario_hash(s));
  CHECK(scenario_hash_hex(s).size() == 16);
  Scenario other = s;
  other.boundary.phi_b = 0.26;
  CHECK(scenario_hash(other) != scenario_hash(s));
}

TEST_CASE("malformed scenarios are rejected") {
  CHECK(parse_code("boundary.phi_b = 1\nbogus = 2\n") == ErrorCode::kConfig);
  CHECK(parse_code("boundary.phi_b = 1\nboundary.phi_b = 2\n") == ErrorCode::kConfig);
  CHECK(parse_code("family = absorbing\n") == ErrorCode::kConfig);
  CHECK(parse_code("boundary.phi_b = 1\nf_inf.bump.1.mass = 1\n") == ErrorCode::kConfig);
  CHECK(parse_code("boundary.phi_b = x\n") == ErrorCode::kConfig);
  CHECK(parse_code("boundary.phi_b = 1\nfamily = absorbing\nf_inf.bump.1.mass = 1\nf_inf.bump.1.width = 0.1\n") ==
        ErrorCode::kConfig);
  CHECK(parse_code("boundary.phi_b = 1\nboundary.alpha = 1\nfamily = absorbing\nfamily.eps = 0.1\n") == ErrorCode::kRejectAlphaOne);
}

TEST_CASE("family scenarios resolve to distributions") {
  Scenario s = parse_scenario("boundary.phi_b = 0.5\nfamily = absorbing\nfamily.u_inf = 3\nfamily.eps = 0.1\n");
  KernelContext ctx = make_context(s);
  CHECK(ctx.f_b.empty());
  CHECK(flux(ctx.f_inf) == doctest::Approx(-3.0).epsilon(1e-13));
  CHECK(std::holds_alternative<AbsorbingFamily>(make_family(s)));
  SolveOptions o = make_solve_options(s);
  CHECK(o.sagdeev.grid_points == 10000);
  CHECK(make_electrons(s).kind() == ElectronModel::Kind::kBoltzmann);
}

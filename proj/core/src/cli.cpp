#include "sheath/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "sheath/error.hpp"
#include "sheath/hydro.hpp"
#include "sheath/kernels.hpp"
#include "sheath/sagdeev.hpp"
#include "sheath/scenario.hpp"
#include "sheath/sheath_solver.hpp"
#include "sheath/wall.hpp"

namespace sheath::cli {
namespace {

using nlohmann::ordered_json;

struct Overrides {
  std::string scenario;
  std::string out;
  std::optional<double> tolerance;
  std::optional<double> phi_max;
  std::optional<std::size_t> grid;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json real_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "INFINITE" : "-INFINITE";
  return v;
}

ordered_json bound_json(const PositivityBound& b) {
  if (b.unbounded) return "UNBOUNDED(" + num(b.value) + ")";
  return b.value;
}

Scenario load(const Overrides& o) {
  Scenario s = load_scenario(o.scenario);
  if (!o.out.empty()) s.output_dir = o.out;
  if (o.tolerance) s.solver.tolerance = *o.tolerance;
  if (o.phi_max) s.solver.phi_max = *o.phi_max;
  if (o.grid) s.solver.grid = *o.grid;
  if (!(s.solver.tolerance >= 0.0) || !(s.solver.phi_max > 0.0) || s.solver.grid < 16)
    fail(ErrorCode::kConfig, "invalid solver override");
  return s;
}

std::filesystem::path output_dir(const Scenario& s) {
  std::filesystem::path dir(s.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_csv(const std::filesystem::path& path, const Scenario& s, const std::string& header,
               const std::vector<const std::vector<double>*>& columns) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::kConfig, "cannot write " + path.string());
  f << "# scenario " << scenario_hash_hex(s) << "\n" << header << "\n";
  const std::size_t n = columns.front()->size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) f << (c ? "," : "") << num((*columns[c])[i]);
    f << "\n";
  }
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::kConfig, "cannot write " + path.string());
  f << j.dump(2) << "\n";
}

Side side_of(const Scenario& s) {
  return s.boundary.phi_b < 0.0 ? Side::kRepulsive : Side::kAttractive;
}

ordered_json report_json(const BohmReport& r) {
  ordered_json j;
  j["side"] = std::string(to_string(r.side));
  j["K"] = r.K.infinite ? ordered_json("INFINITE") : ordered_json(r.K.value);
  j["d2V0"] = real_or_inf(r.d2V0);
  j["fd_discrepancy"] = r.fd_discrepancy;
  j["classification"] = std::string(to_string(r.classification));
  j[r.side == Side::kAttractive ? "supB" : "infB"] = bound_json(r.bound);
  j["phi_max"] = r.phi_max;
  j["tolerance"] = r.tolerance;
  return j;
}

int check_bohm(const Scenario& s, std::ostream& out) {
  KernelContext ctx = make_context(s);
  SagdeevData data = build_sagdeev(ctx, make_electrons(s), side_of(s), make_solve_options(s).sagdeev);
  BohmReport r = bohm_report(data);
  ordered_json j = report_json(r);
  out << j.dump(2) << "\n";
  bool solvable = r.classification == Classification::kStrict ||
                  r.classification == Classification::kMarginalSolvable;
  return solvable ? kExitOk : kExitNoSolution;
}

int solve(const Scenario& s, std::ostream& out) {
  KernelContext ctx = make_context(s);
  ElectronModel ne = make_electrons(s);
  SheathSolution sol = solve_sheath(ctx, ne, make_solve_options(s));
  const PotentialProfile& p = sol.profile();
  const Moments& m = sol.moments();
  std::vector<double> ne_col(p.phi().size());
  for (std::size_t i = 0; i < ne_col.size(); ++i) ne_col[i] = ne.density(p.phi()[i]);
  auto dir = output_dir(s);
  write_csv(dir / "profile.csv", s, "x,phi,dphi,rho,flux,n_e",
            {&p.x(), &p.phi(), &p.dphi(), &m.rho, &m.flux, &ne_col});
  ordered_json j;
  j["scenario"] = scenario_hash_hex(s);
  if (sol.sagdeev()) j["bohm"] = report_json(bohm_report(*sol.sagdeev()));
  j["phi_b"] = p.phi_b();
  j["marginal"] = p.marginal();
  j["tail_rate"] = p.tail_rate();
  j["tail_x"] = p.tail_x();
  j["length"] = p.x().back();
  j["poisson_residual"] = poisson_residual(sol);
  if (sol.sagdeev()) j["first_integral_residual"] = first_integral_residual(p, *sol.sagdeev()->potential);
  j["flux"] = sol.reference_flux();
  j["csv"] = (dir / "profile.csv").string();
  out << j.dump(2) << "\n";
  return kExitOk;
}

int hydro(const Scenario& s, std::ostream& out) {
  ElectronModel ne = make_electrons(s);
  SolveOptions opts = make_solve_options(s);
  HydroSolution sol;
  if (s.family.type == FamilyType::kAbsorbing) {
    sol = solve_euler_poisson(s.family.u_inf, s.boundary.phi_b, ne, opts);
  } else if (s.family.type == FamilyType::kGeneral) {
    sol = solve_generalized({s.family.m_b, s.family.m_inf, s.family.v_b, s.family.v_inf,
                             s.boundary.alpha},
                            s.boundary.phi_b, ne, opts);
  } else {
    fail(ErrorCode::kConfig, "hydro needs family = absorbing or general");
  }
  auto dir = output_dir(s);
  write_csv(dir / "hydro.csv", s, "x,phi,rho,u", {&sol.x(), &sol.phi(), &sol.rho, &sol.u});
  ordered_json j;
  j["scenario"] = scenario_hash_hex(s);
  j["model"] = s.family.type == FamilyType::kAbsorbing ? "euler_poisson" : "generalized";
  j["flux"] = sol.flux;
  j["tail_rate"] = sol.profile.tail_rate();
  j["csv"] = (dir / "hydro.csv").string();
  out << j.dump(2) << "\n";
  return kExitOk;
}

int sweep(const Scenario& s, std::ostream& out) {
  if (s.sweep_eps.empty()) fail(ErrorCode::kConfig, "sweep-eps needs sweep.eps");
  StudyOptions opts;
  opts.solve = make_solve_options(s);
  opts.skew = s.family.skew;
  ConvergenceStudy study =
      delta_mass_study(make_family(s), s.boundary.phi_b, s.sweep_eps, make_electrons(s), opts);
  auto dir = output_dir(s);
  ordered_json j;
  j["scenario"] = scenario_hash_hex(s);
  j["eps"] = study.eps;
  j["err_rho"] = study.err_rho;
  j["err_flux"] = study.err_flux;
  j["err_phi"] = study.err_phi;
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  j["slope"] = {{"rho", opt(study.slope_rho)},
                {"flux", opt(study.slope_flux)},
                {"phi", opt(study.slope_phi)},
                {"total", opt(study.slope_total)}};
  j["C0_estimate"] = study.c0_estimate;
  j["outside_theorem"] = study.outside_theorem;
  for (std::size_t i = 0; i < study.profiles.size(); ++i) {
    const StudyProfile& p = study.profiles[i];
    write_csv(dir / ("sweep_eps_" + std::to_string(i + 1) + ".csv"), s,
              "x,phi,rho,flux,phi_limit,rho_limit",
              {&p.x, &p.phi, &p.rho, &p.flux, &p.phi_hydro, &p.rho_hydro});
  }
  write_json(dir / "study.json", j);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int reduce_wall(const Scenario& s, std::ostream& out) {
  KernelContext ctx = make_context(s);
  double phi0 = reduce_wall_potential(ctx, make_electrons(s));
  ordered_json j;
  j["scenario"] = scenario_hash_hex(s);
  j["flux"] = flux(ctx.f_inf, ctx.quad);
  j["v_e"] = s.boundary.v_e;
  j["phi0"] = phi0;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int validate(const Scenario& s, std::ostream& out) {
  KernelContext ctx = make_context(s);
  ordered_json j;
  j["scenario"] = scenario_hash_hex(s);
  bool ok = true;
  double m = mass(ctx.f_inf, ctx.quad);
  j["mass"] = m;
  j["neutral"] = std::abs(m - 1.0) < 1e-8;
  ok = ok && j["neutral"].get<bool>();
  if (s.boundary.phi_b != 0.0) {
    ConditionReport c = check_necessary_conditions(ctx.f_inf, ctx.f_b, ctx.bc);
    j["conditions"] = {{"condition", c.condition},
                       {"max_residual", c.max_residual},
                       {"relative_residual", c.relative_residual},
                       {"points", c.points},
                       {"passed", c.passed}};
    ok = ok && c.passed;
    std::vector<double> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(s.boundary.phi_b * i / 19.0);
    BoundReport b = bound_check(ctx, samples);
    j["bounds"] = {{"constant", b.constant},
                   {"lr_norm", b.lr_norm},
                   {"min_slack", b.min_slack},
                   {"passed", b.passed}};
    ok = ok && b.passed;
  }
  j["valid"] = ok;
  out << j.dump(2) << "\n";
  return ok ? kExitOk : kExitInvalid;
}

void report_error(std::ostream& err, const std::string& code, const std::string& message) {
  ordered_json j;
  j["error"] = code;
  j["message"] = message;
  err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stationary plasma sheath solver"};
  app.require_subcommand(1);
  Overrides o;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Scenario&, std::ostream&);
  };
  const Command commands[] = {
      {"check-bohm", "Bohm criterion report for the scenario", check_bohm},
      {"solve", "Solve the kinetic sheath and write profile.csv", solve},
      {"hydro", "Solve the cold-ion limit and write hydro.csv", hydro},
      {"sweep-eps", "Delta-mass convergence study over sweep.eps", sweep},
      {"reduce-wall", "Wall potential from the flux balance", reduce_wall},
      {"validate", "Necessary conditions and density bounds", validate},
  };
  std::vector<CLI::App*> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--scenario", o.scenario, "Scenario file")->required();
    sub->add_option("--out", o.out, "Output directory (overrides output.dir)");
    sub->add_option("--tolerance", o.tolerance, "Marginal band for d2V(0)");
    sub->add_option("--phi-max", o.phi_max, "Scan limit for the positivity set");
    sub->add_option("--grid", o.grid, "Grid points for scan and profile");
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "CONFIG", e.what());
    return kExitInvalid;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) return commands[i].fn(load(o), out);
  } catch (const SheathError& e) {
    report_error(err, std::string(to_string(e.code())), e.what());
    return is_no_solution(e.code()) ? kExitNoSolution : kExitInvalid;
  } catch (const std::exception& e) {
    report_error(err, "INTERNAL", e.what());
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace sheath::cli

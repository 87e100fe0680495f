#include "sheath/scenario.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sheath/error.hpp"

namespace sheath {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const double* v, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

class Parser {
 public:
  Parser(std::string key, std::string value, int line)
      : key_(std::move(key)), value_(std::move(value)), line_(line) {}

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kConfig, "line " + std::to_string(line_) + " (" + key_ + "): " + what);
  }

  double number() const { return parse_number(value_); }

  std::vector<double> list() const {
    std::vector<double> out;
    std::stringstream ss(value_);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
    if (out.empty()) error("empty list");
    return out;
  }

  Velocity vec3() const {
    auto v = list();
    if (v.size() != 3) error("expected three comma-separated numbers");
    return {v[0], v[1], v[2]};
  }

  std::size_t count() const {
    double v = number();
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) error("expected a positive integer");
    return static_cast<std::size_t>(v);
  }

  const std::string& text() const { return value_; }

 private:
  double parse_number(const std::string& s) const {
    if (s.empty()) error("missing number");
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
      error("not a finite number: '" + s + "'");
    return v;
  }

  std::string key_, value_;
  int line_;
};

Cutoff parse_cutoff(const Parser& p) {
  if (p.text() == "none") return Cutoff::kNone;
  if (p.text() == "positive") return Cutoff::kPositive;
  if (p.text() == "negative") return Cutoff::kNegative;
  p.error("cutoff must be none, positive or negative");
}

struct PendingBump {
  Bump bump;
  bool has_width = false;
  bool has_shift = false;
};

bool parse_block_key(const std::string& field, const Parser& p, DistributionBlock& block,
                     std::map<long, PendingBump>& bumps) {
  if (field == "cutoff") {
    block.cutoff = parse_cutoff(p);
    return true;
  }
  if (field == "energy_shift") {
    block.energy_shift = p.number();
    return true;
  }
  if (field.rfind("bump.", 0) != 0) return false;
  std::string rest = field.substr(5);
  std::size_t dot = rest.find('.');
  if (dot == std::string::npos) return false;
  std::string index = rest.substr(0, dot), name = rest.substr(dot + 1);
  if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos || index.size() > 9)
    p.error("bump index must be a positive integer");
  long idx = std::stol(index);
  if (idx < 1) p.error("bump index must be a positive integer");
  PendingBump& b = bumps[idx];
  if (name == "mass") b.bump.mass = p.number();
  else if (name == "center") b.bump.center = p.vec3();
  else if (name == "width") { b.bump.width = p.number(); b.has_width = true; }
  else if (name == "skew") b.bump.skew = p.vec3();
  else if (name == "shift") { b.bump.energy_shift = p.number(); b.has_shift = true; }
  else return false;
  return true;
}

void finish_block(DistributionBlock& block, std::map<long, PendingBump>& bumps,
                  const std::string& prefix) {
  for (auto& [idx, pb] : bumps) {
    if (!pb.has_width)
      fail(ErrorCode::kConfig, prefix + ".bump." + std::to_string(idx) + ".width is required");
    if (!pb.has_shift) pb.bump.energy_shift = block.energy_shift;
    block.bumps.push_back(pb.bump);
  }
  try {
    DistributionSpec check(block.bumps, block.cutoff);
  } catch (const SheathError& e) {
    fail(ErrorCode::kConfig, prefix + ": " + e.what());
  }
}

void write_block(std::ostringstream& out, const std::string& prefix, const DistributionBlock& b) {
  out << prefix << ".cutoff = " << to_string(b.cutoff) << "\n";
  out << prefix << ".energy_shift = " << fmt(b.energy_shift) << "\n";
  for (std::size_t i = 0; i < b.bumps.size(); ++i) {
    const Bump& bump = b.bumps[i];
    std::string key = prefix + ".bump." + std::to_string(i + 1) + ".";
    out << key << "mass = " << fmt(bump.mass) << "\n";
    out << key << "center = " << fmt_list(bump.center.data(), 3) << "\n";
    out << key << "width = " << fmt(bump.width) << "\n";
    out << key << "skew = " << fmt_list(bump.skew.data(), 3) << "\n";
    out << key << "shift = " << fmt(bump.energy_shift) << "\n";
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::map<long, PendingBump> inf_bumps, b_bumps;
  std::set<std::string> seen;
  bool has_phi_b = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::size_t hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kConfig, "line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    Parser p(key, value, line_no);
    if (key.empty()) p.error("empty key");
    if (value.empty()) p.error("empty value");
    if (!seen.insert(key).second) p.error("duplicate key");

    if (key == "electrons") {
      if (value == "boltzmann") s.electrons = ElectronModel::Kind::kBoltzmann;
      else if (value == "polynomial") s.electrons = ElectronModel::Kind::kPolynomial;
      else p.error("electrons must be boltzmann or polynomial");
    } else if (key == "electrons.coefficients") {
      s.electron_coefficients = p.list();
    } else if (key == "boundary.phi_b") {
      s.boundary.phi_b = p.number();
      has_phi_b = true;
    } else if (key == "boundary.alpha") {
      s.boundary.alpha = p.number();
    } else if (key == "boundary.v_e") {
      s.boundary.v_e = p.number();
      s.boundary.has_v_e = true;
    } else if (key == "family") {
      if (value == "none") s.family.type = FamilyType::kNone;
      else if (value == "absorbing") s.family.type = FamilyType::kAbsorbing;
      else if (value == "general") s.family.type = FamilyType::kGeneral;
      else p.error("family must be none, absorbing or general");
    } else if (key == "family.u_inf") { s.family.u_inf = p.number();
    } else if (key == "family.eps") { s.family.eps = p.number();
    } else if (key == "family.m_b") { s.family.m_b = p.number();
    } else if (key == "family.m_inf") { s.family.m_inf = p.number();
    } else if (key == "family.v_b") { s.family.v_b = p.number();
    } else if (key == "family.v_inf") { s.family.v_inf = p.number();
    } else if (key == "family.skew") { s.family.skew = p.vec3();
    } else if (key == "solver.tolerance") { s.solver.tolerance = p.number();
    } else if (key == "solver.phi_max") { s.solver.phi_max = p.number();
    } else if (key == "solver.grid") { s.solver.grid = p.count();
    } else if (key == "solver.tail_ratio") { s.solver.tail_ratio = p.number();
    } else if (key == "solver.quad_tol") { s.solver.quad_tol = p.number();
    } else if (key == "solver.holder_r") { s.solver.holder_r = p.number();
    } else if (key == "sweep.eps") { s.sweep_eps = p.list();
    } else if (key == "output.dir") { s.output_dir = value;
    } else if (key.rfind("f_inf.", 0) == 0) {
      if (!parse_block_key(key.substr(6), p, s.f_inf, inf_bumps)) p.error("unknown key");
    } else if (key.rfind("f_b.", 0) == 0) {
      if (!parse_block_key(key.substr(4), p, s.f_b, b_bumps)) p.error("unknown key");
    } else {
      p.error("unknown key");
    }
  }
  if (!has_phi_b) fail(ErrorCode::kConfig, "boundary.phi_b is required");
  finish_block(s.f_inf, inf_bumps, "f_inf");
  finish_block(s.f_b, b_bumps, "f_b");
  if (s.family.type != FamilyType::kNone && (!s.f_inf.bumps.empty() || !s.f_b.bumps.empty()))
    fail(ErrorCode::kConfig, "declare either a family or explicit bumps, not both");
  if (s.family.type == FamilyType::kNone && s.f_inf.bumps.empty())
    fail(ErrorCode::kConfig, "f_inf needs at least one bump (or declare a family)");
  if (s.electrons == ElectronModel::Kind::kPolynomial && s.electron_coefficients.empty())
    fail(ErrorCode::kConfig, "polynomial electrons need electrons.coefficients");
  if (s.electrons == ElectronModel::Kind::kBoltzmann && !s.electron_coefficients.empty())
    fail(ErrorCode::kConfig, "electrons.coefficients only applies to polynomial electrons");
  if (!(s.solver.tolerance >= 0.0)) fail(ErrorCode::kConfig, "solver.tolerance must be >= 0");
  if (!(s.solver.phi_max > 0.0)) fail(ErrorCode::kConfig, "solver.phi_max must be positive");
  if (s.solver.grid < 16) fail(ErrorCode::kConfig, "solver.grid must be at least 16");
  if (!(s.solver.tail_ratio > 0.0 && s.solver.tail_ratio < 0.1))
    fail(ErrorCode::kConfig, "solver.tail_ratio must lie in (0, 0.1)");
  if (!(s.solver.quad_tol > 0.0 && s.solver.quad_tol < 1e-3))
    fail(ErrorCode::kConfig, "solver.quad_tol must lie in (0, 1e-3)");
  if (!(s.solver.holder_r > 2.0)) fail(ErrorCode::kConfig, "solver.holder_r must exceed 2");
  for (double e : s.sweep_eps)
    if (!(e > 0.0 && e < 1.0)) fail(ErrorCode::kConfig, "sweep.eps entries must lie in (0, 1)");
  try {
    s.boundary.validate();
    make_electrons(s);
  } catch (const SheathError& e) {
    if (e.code() == ErrorCode::kRejectAlphaOne) throw;
    fail(ErrorCode::kConfig, e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kConfig, "cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "electrons = " << (s.electrons == ElectronModel::Kind::kBoltzmann ? "boltzmann" : "polynomial")
      << "\n";
  if (!s.electron_coefficients.empty())
    out << "electrons.coefficients = "
        << fmt_list(s.electron_coefficients.data(), s.electron_coefficients.size()) << "\n";
  out << "boundary.phi_b = " << fmt(s.boundary.phi_b) << "\n";
  out << "boundary.alpha = " << fmt(s.boundary.alpha) << "\n";
  if (s.boundary.has_v_e) out << "boundary.v_e = " << fmt(s.boundary.v_e) << "\n";
  const char* family[] = {"none", "absorbing", "general"};
  out << "family = " << family[static_cast<int>(s.family.type)] << "\n";
  out << "family.u_inf = " << fmt(s.family.u_inf) << "\n";
  out << "family.eps = " << fmt(s.family.eps) << "\n";
  out << "family.m_b = " << fmt(s.family.m_b) << "\n";
  out << "family.m_inf = " << fmt(s.family.m_inf) << "\n";
  out << "family.v_b = " << fmt(s.family.v_b) << "\n";
  out << "family.v_inf = " << fmt(s.family.v_inf) << "\n";
  out << "family.skew = " << fmt_list(s.family.skew.data(), 3) << "\n";
  write_block(out, "f_inf", s.f_inf);
  write_block(out, "f_b", s.f_b);
  out << "solver.tolerance = " << fmt(s.solver.tolerance) << "\n";
  out << "solver.phi_max = " << fmt(s.solver.phi_max) << "\n";
  out << "solver.grid = " << s.solver.grid << "\n";
  out << "solver.tail_ratio = " << fmt(s.solver.tail_ratio) << "\n";
  out << "solver.quad_tol = " << fmt(s.solver.quad_tol) << "\n";
  out << "solver.holder_r = " << fmt(s.solver.holder_r) << "\n";
  if (!s.sweep_eps.empty())
    out << "sweep.eps = " << fmt_list(s.sweep_eps.data(), s.sweep_eps.size()) << "\n";
  out << "output.dir = " << s.output_dir << "\n";
  return out.str();
}

std::uint64_t scenario_hash(const Scenario& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : format_scenario(s)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string scenario_hash_hex(const Scenario& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(scenario_hash(s)));
  return buf;
}

ElectronModel make_electrons(const Scenario& s) {
  if (s.electrons == ElectronModel::Kind::kBoltzmann) return ElectronModel::boltzmann();
  return ElectronModel::polynomial(s.electron_coefficients);
}

FamilyKind make_family(const Scenario& s) {
  if (s.family.type == FamilyType::kAbsorbing) return AbsorbingFamily{s.family.u_inf};
  if (s.family.type == FamilyType::kGeneral)
    return GeneralFamily{s.family.m_b,  s.family.m_inf,   s.family.v_b,
                         s.family.v_inf, s.boundary.alpha, s.boundary.phi_b};
  fail(ErrorCode::kConfig, "scenario declares no family");
}

KernelContext make_context(const Scenario& s) {
  KernelContext ctx;
  ctx.bc = s.boundary;
  ctx.quad.rel_tol = s.solver.quad_tol;
  ctx.holder_r = s.solver.holder_r;
  if (s.family.type != FamilyType::kNone) {
    DistributionPair pair = make_delta_family(make_family(s), s.family.eps, s.family.skew);
    ctx.f_inf = std::move(pair.f_inf);
    ctx.f_b = std::move(pair.f_b);
  } else {
    ctx.f_inf = DistributionSpec(s.f_inf.bumps, s.f_inf.cutoff);
    ctx.f_b = DistributionSpec(s.f_b.bumps, s.f_b.cutoff);
  }
  return ctx;
}

SolveOptions make_solve_options(const Scenario& s) {
  SolveOptions o;
  o.sagdeev.phi_max = s.solver.phi_max;
  o.sagdeev.grid_points = s.solver.grid;
  o.sagdeev.tolerance = s.solver.tolerance;
  o.profile.grid_points = s.solver.grid;
  o.profile.tail_ratio = s.solver.tail_ratio;
  return o;
}

}  // namespace sheath

#include "sheath/dists.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/expint.hpp>

#include "sheath/error.hpp"

namespace sheath {
namespace {

double norm(const Velocity& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double raw_bump(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

// xi_1 -> T(xi_1); returns false where the composition is undefined (zero there).
bool shifted_coordinate(double xi1, double shift, double& t) {
  if (shift == 0.0) {
    t = xi1;
    return true;
  }
  double q = xi1 * xi1 - shift;
  if (q <= 0.0) return false;
  t = std::copysign(std::sqrt(q), xi1);
  return true;
}

bool passes_cutoff(Cutoff c, double xi1) {
  switch (c) {
    case Cutoff::kNone: return true;
    case Cutoff::kPositive: return xi1 > 0.0;
    case Cutoff::kNegative: return xi1 < 0.0;
  }
  return true;
}

void validate_bump(const Bump& b) {
  auto finite = [](const Velocity& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
  };
  if (!(b.mass >= 0.0) || !std::isfinite(b.mass))
    fail(ErrorCode::kInvalidInput, "bump mass must be finite and nonnegative");
  if (!(b.width > 0.0 && b.width < 1.0))
    fail(ErrorCode::kInvalidInput, "bump width must lie in (0, 1)");
  if (!finite(b.center) || !finite(b.skew) || !std::isfinite(b.energy_shift))
    fail(ErrorCode::kInvalidInput, "bump parameters must be finite");
  if (!(norm(b.skew) < 1.0)) fail(ErrorCode::kInvalidInput, "bump skew must satisfy |d| < 1");
}

}  // namespace

BumpProfile::BumpProfile() {
  QuadratureSettings q{1e-13, 400};
  double shell = quad::integrate([](double r) { return r * r * raw_bump(r * r); }, 0.0, 1.0, q);
  normalization_ = 1.0 / (4.0 * std::numbers::pi * shell);
  variance_ = 2.0 * quad::integrate([this](double s) { return s * s * marginal(s); }, 0.0, 1.0, q);
}

const BumpProfile& BumpProfile::standard() {
  static const BumpProfile profile;
  return profile;
}

double BumpProfile::operator()(const Velocity& xi) const {
  return normalization_ * raw_bump(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

double BumpProfile::marginal(double s) const {
  // int over the plane of A exp(-1/(a - rho^2)) with a = 1 - s^2, in closed form.
  double a = 1.0 - s * s;
  if (a <= 0.0) return 0.0;
  double z = 1.0 / a;
  if (z > 700.0) return 0.0;
  double v = a * std::exp(-z) - boost::math::expint(1, z);
  return v > 0.0 ? normalization_ * std::numbers::pi * v : 0.0;
}

std::string_view to_string(Cutoff cutoff) {
  switch (cutoff) {
    case Cutoff::kNone: return "none";
    case Cutoff::kPositive: return "positive";
    case Cutoff::kNegative: return "negative";
  }
  return "none";
}

DistributionSpec::DistributionSpec(std::vector<Bump> bumps, Cutoff cutoff)
    : bumps_(std::move(bumps)), cutoff_(cutoff) {
  for (const Bump& b : bumps_) validate_bump(b);
  auto rules = std::make_shared<std::vector<std::vector<quad::WeightedRule>>>(bumps_.size());
  const QuadratureSettings build{1e-13, 400};
  for (std::size_t k = 0; k < bumps_.size(); ++k) {
    if (bumps_[k].mass == 0.0) continue;
    for (const Interval& iv : bump_support(k))
      (*rules)[k].push_back(quad::WeightedRule::build(
          [&](double s) { return bump_marginal(k, s); }, iv.lo, iv.hi, build));
  }
  rules_ = std::move(rules);
}

bool DistributionSpec::empty() const {
  return std::none_of(bumps_.begin(), bumps_.end(), [](const Bump& b) { return b.mass > 0.0; });
}

double DistributionSpec::operator()(const Velocity& xi) const {
  if (!passes_cutoff(cutoff_, xi[0])) return 0.0;
  const BumpProfile& psi = BumpProfile::standard();
  double total = 0.0;
  for (const Bump& b : bumps_) {
    if (b.mass == 0.0) continue;
    double t;
    if (!shifted_coordinate(xi[0], b.energy_shift, t)) continue;
    double lam = 1.0 - norm(b.skew);
    Velocity eta{t, xi[1], xi[2]};
    for (int i = 0; i < 3; ++i) eta[i] = ((eta[i] - b.center[i]) / b.width - b.skew[i]) / lam;
    double scale = b.width * lam;
    total += b.mass * psi(eta) / (scale * scale * scale);
  }
  return total;
}

double DistributionSpec::bump_marginal(std::size_t k, double xi1) const {
  if (!passes_cutoff(cutoff_, xi1)) return 0.0;
  const Bump& b = bumps_[k];
  double t;
  if (!shifted_coordinate(xi1, b.energy_shift, t)) return 0.0;
  double lam = 1.0 - norm(b.skew);
  double s = ((t - b.center[0]) / b.width - b.skew[0]) / lam;
  return b.mass * BumpProfile::standard().marginal(s) / (b.width * lam);
}

double DistributionSpec::marginal(double xi1) const {
  double total = 0.0;
  for (std::size_t k = 0; k < bumps_.size(); ++k)
    if (bumps_[k].mass > 0.0) total += bump_marginal(k, xi1);
  return total;
}

std::vector<Interval> DistributionSpec::bump_support(std::size_t k) const {
  const Bump& b = bumps_[k];
  double lam = 1.0 - norm(b.skew);
  double t1 = b.center[0] + b.width * (b.skew[0] - lam);
  double t2 = b.center[0] + b.width * (b.skew[0] + lam);
  double s = b.energy_shift;
  std::vector<Interval> out;
  auto push = [&](double lo, double hi) {
    if (cutoff_ == Cutoff::kPositive) lo = std::max(lo, 0.0);
    if (cutoff_ == Cutoff::kNegative) hi = std::min(hi, 0.0);
    if (hi > lo) out.push_back({lo, hi});
  };
  if (t1 < 0.0) {
    double hi_t = std::min(t2, 0.0);
    if (t1 * t1 + s > 0.0)
      push(-std::sqrt(t1 * t1 + s), -std::sqrt(std::max(hi_t * hi_t + s, 0.0)));
  }
  if (t2 > 0.0) {
    double lo_t = std::max(t1, 0.0);
    if (t2 * t2 + s > 0.0)
      push(std::sqrt(std::max(lo_t * lo_t + s, 0.0)), std::sqrt(t2 * t2 + s));
  }
  return out;
}

std::vector<Interval> DistributionSpec::support() const {
  std::vector<Interval> all;
  for (std::size_t k = 0; k < bumps_.size(); ++k) {
    if (bumps_[k].mass == 0.0) continue;
    auto iv = bump_support(k);
    all.insert(all.end(), iv.begin(), iv.end());
  }
  std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& iv : all) {
    if (!merged.empty() && iv.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  return merged;
}

double DistributionSpec::max_speed() const {
  double m = 0.0;
  for (const Interval& iv : support()) m = std::max({m, std::abs(iv.lo), std::abs(iv.hi)});
  return m;
}

void BoundaryConfig::validate() const {
  if (alpha == 1.0) fail(ErrorCode::kRejectAlphaOne, "alpha = 1 admits multiple solutions");
  if (!(alpha >= 0.0 && alpha < 1.0))
    fail(ErrorCode::kInvalidInput, "alpha must lie in [0, 1)");
  if (!std::isfinite(phi_b)) fail(ErrorCode::kInvalidInput, "phi_b must be finite");
  if (has_v_e && !std::isfinite(v_e)) fail(ErrorCode::kInvalidInput, "v_e must be finite");
}

double mass(const DistributionSpec& f, const QuadratureSettings& q) {
  return f.integrate([](double) { return 1.0; }, q);
}

double flux(const DistributionSpec& f, const QuadratureSettings& q) {
  return f.integrate([](double s) { return s; }, q);
}

BohmIntegral kinetic_bohm_integral(const DistributionSpec& f, const QuadratureSettings& q) {
  for (const Interval& iv : f.support())
    if (iv.lo < kBohmInfiniteGap && iv.hi > -kBohmInfiniteGap)
      return {std::numeric_limits<double>::infinity(), true};
  return {f.integrate([](double s) { return 1.0 / (s * s); }, q), false};
}

namespace {

void add_samples(std::vector<double>& out, double lo, double hi, int n) {
  if (!(hi > lo)) return;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / n);
}

void add_clipped(std::vector<double>& out, Interval iv, double lo, double hi, int n) {
  add_samples(out, std::max(iv.lo, lo), std::min(iv.hi, hi), n);
}

std::vector<std::array<double, 2>> transverse_samples(const DistributionSpec& a,
                                                      const DistributionSpec& b) {
  std::vector<std::array<double, 2>> out{{0.0, 0.0}};
  const double offsets[4][2] = {{0.0, 0.0}, {0.4, 0.0}, {0.0, -0.6}, {0.3, 0.3}};
  for (const DistributionSpec* f : {&a, &b}) {
    for (const Bump& bump : f->bumps()) {
      double lam = 1.0 - norm(bump.skew);
      for (const auto& o : offsets) {
        out.push_back({bump.center[1] + bump.width * (bump.skew[1] + lam * o[0]),
                       bump.center[2] + bump.width * (bump.skew[2] + lam * o[1])});
      }
    }
  }
  return out;
}

}  // namespace

ConditionReport check_necessary_conditions(const DistributionSpec& f_inf,
                                           const DistributionSpec& f_b,
                                           const BoundaryConfig& bc) {
  bc.validate();
  if (bc.phi_b == 0.0)
    fail(ErrorCode::kInvalidInput, "necessary conditions are stated for phi_b != 0");

  const double phi_b = bc.phi_b;
  const double strip = phi_b < 0.0 ? std::sqrt(-2.0 * phi_b) : 0.0;
  const double reach = std::max(f_inf.max_speed(), f_b.max_speed()) + 1.0;
  constexpr int kPerRange = 24;

  // identity samples on xi_1 > strip
  std::vector<double> xs;
  add_samples(xs, strip, reach, 64);
  for (std::size_t k = 0; k < f_inf.bumps().size(); ++k) {
    for (const Interval& iv : f_inf.bump_support(k)) {
      add_clipped(xs, iv, strip, reach, kPerRange);
      add_clipped(xs, {-iv.hi, -iv.lo}, strip, reach, kPerRange);
    }
  }
  for (std::size_t k = 0; k < f_b.bumps().size(); ++k) {
    for (const Interval& iv : f_b.bump_support(k)) {
      double lo2 = iv.lo * iv.lo - 2.0 * phi_b, hi2 = iv.hi * iv.hi - 2.0 * phi_b;
      if (iv.hi > 0.0 && hi2 > 0.0)
        add_clipped(xs, {std::sqrt(std::max(lo2, 0.0)), std::sqrt(hi2)}, strip, reach, kPerRange);
    }
  }
  // evenness samples inside the strip
  std::vector<double> ys;
  if (phi_b < 0.0) {
    add_samples(ys, 0.0, strip, 32);
    for (const Interval& iv : f_inf.support()) {
      add_clipped(ys, iv, 0.0, strip, kPerRange);
      add_clipped(ys, {-iv.hi, -iv.lo}, 0.0, strip, kPerRange);
    }
  }

  ConditionReport rep;
  rep.condition = phi_b > 0.0 ? (f_b.empty() && bc.alpha == 0.0 ? "need2" : "need3") : "need4";
  auto transverse = transverse_samples(f_inf, f_b);
  for (const auto& tr : transverse) {
    for (double x : xs) {
      Velocity xi{x, tr[0], tr[1]};
      Velocity mirrored{-x, tr[0], tr[1]};
      Velocity boundary{std::sqrt(x * x + 2.0 * phi_b), tr[0], tr[1]};
      double fi = f_inf(xi);
      double r = fi - f_b(boundary) - bc.alpha * f_inf(mirrored);
      rep.max_residual = std::max(rep.max_residual, std::abs(r));
      rep.reference_scale = std::max({rep.reference_scale, fi, f_inf(mirrored)});
      ++rep.points;
    }
    for (double y : ys) {
      double a = f_inf({y, tr[0], tr[1]}), b = f_inf({-y, tr[0], tr[1]});
      rep.max_residual = std::max(rep.max_residual, std::abs(a - b));
      rep.reference_scale = std::max({rep.reference_scale, a, b});
      ++rep.points;
    }
  }
  rep.relative_residual =
      rep.reference_scale > 0.0 ? rep.max_residual / rep.reference_scale : rep.max_residual;
  rep.passed = rep.relative_residual <= kConditionTolerance;
  return rep;
}

void check_velocity_condition(const GeneralFamily& g) {
  if (!(g.m_b >= 0.0 && g.m_inf > 0.0 && g.v_b > 0.0 && g.v_inf > 0.0))
    fail(ErrorCode::kRejectVelocity1, "need m_b >= 0, m_inf > 0, v_b > 0, v_inf > 0");
  double total = g.m_b + (1.0 + g.alpha) * g.m_inf;
  if (std::abs(total - 1.0) > 1e-12)
    fail(ErrorCode::kRejectVelocity1,
         "m_b + (1 + alpha) m_inf = " + std::to_string(total) + ", must equal 1");
  double inv = g.m_b / (g.v_b * g.v_b) + (1.0 + g.alpha) * g.m_inf / (g.v_inf * g.v_inf);
  if (!(inv < 1.0))
    fail(ErrorCode::kRejectVelocity1, "weighted inverse-square sum must be below 1");
}

DistributionSpec drifting_bump(double v, double eps, double m, const Velocity& skew) {
  Bump b;
  b.mass = m;
  b.center = {v, 0.0, 0.0};
  b.width = eps;
  b.skew = skew;
  return DistributionSpec({b});
}

DistributionPair make_delta_family(const FamilyKind& kind, double eps, const Velocity& skew) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::kRejectEps, "eps must lie in (0, 1)");
  if (const auto* a = std::get_if<AbsorbingFamily>(&kind)) {
    double eps0 = 0.5 * (a->u_inf - 1.0);
    if (!(eps < eps0))
      fail(ErrorCode::kRejectEps, "eps must be below (u_inf - 1)/2 = " + std::to_string(eps0));
    return {DistributionSpec{}, drifting_bump(-a->u_inf, eps, 1.0, skew)};
  }
  const auto& g = std::get<GeneralFamily>(kind);
  BoundaryConfig{g.phi_b, g.alpha}.validate();
  check_velocity_condition(g);

  Velocity mirrored{-skew[0], skew[1], skew[2]};
  std::vector<Bump> inf;
  inf.push_back({g.m_inf, {-g.v_inf, 0.0, 0.0}, eps, skew, 0.0});
  if (g.m_b > 0.0) inf.push_back({g.m_b, {g.v_b, 0.0, 0.0}, eps, skew, 0.0});
  if (g.alpha > 0.0) inf.push_back({g.alpha * g.m_inf, {g.v_inf, 0.0, 0.0}, eps, mirrored, 0.0});

  std::vector<Bump> bnd;
  if (g.m_b > 0.0) bnd.push_back({g.m_b, {g.v_b, 0.0, 0.0}, eps, skew, 2.0 * g.phi_b});
  return {DistributionSpec(std::move(bnd), Cutoff::kPositive), DistributionSpec(std::move(inf))};
}

}  // namespace sheath

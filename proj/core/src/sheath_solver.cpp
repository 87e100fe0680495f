#include "sheath/sheath_solver.hpp"

#include <algorithm>
#include <cmath>

#include "sheath/error.hpp"

namespace sheath {
namespace {
constexpr int kOuter = 0;
constexpr int kReflected = 1;
constexpr int kIdentity = 2;
}  // namespace

SheathSolution::SheathSolution(KernelContext ctx, ElectronModel ne, PotentialProfile profile,
                               std::shared_ptr<const SagdeevData> data)
    : ctx_(std::move(ctx)), ne_(std::move(ne)), profile_(std::move(profile)), data_(std::move(data)) {
  ctx_.bc.validate();
  branch_ = select_branch(ctx_, ctx_.bc.phi_b < 0.0);
  reference_flux_ = flux(ctx_.f_inf, ctx_.quad);
  const auto& phi = profile_.phi();
  const std::size_t n = phi.size();
  moments_.rho.resize(n);
  moments_.flux.resize(n);
  moments_.u.resize(n);
  const double rho_far = profile_.is_trivial() ? mass(ctx_.f_inf, ctx_.quad) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    moments_.rho[i] = profile_.is_trivial() ? rho_far : ion_density(ctx_, branch_, phi[i]);
    moments_.flux[i] = moment_at_potential(phi[i], [](double s) { return s; });
    moments_.u[i] = moments_.flux[i] / moments_.rho[i];
  }
}

std::vector<SheathSolution::Piece> SheathSolution::pieces(double p) const {
  std::vector<Piece> out;
  const DistributionSpec& fi = ctx_.f_inf;
  // panel edges of the marginal's cached rule, pushed through xi_1 = map(A)
  auto images = [](const DistributionSpec& f, std::size_t k, std::size_t i, auto map) {
    std::vector<double> b;
    for (double a : f.rule(k, i).edges()) {
      double x = map(a);
      if (std::isfinite(x)) b.push_back(x);
    }
    return b;
  };
  if (profile_.is_trivial()) {
    for (std::size_t k = 0; k < fi.bumps().size(); ++k) {
      if (fi.bumps()[k].mass == 0.0) continue;
      auto support = fi.bump_support(k);
      for (std::size_t i = 0; i < support.size(); ++i)
        out.push_back({&fi, k, support[i], kIdentity, fi.rule(k, i).edges()});
    }
    return out;
  }
  const bool only_incoming = branch_ == IonBranch::kAbsorbing;
  // argument A = sign(xi_1) sqrt(xi_1^2 - 2p)  <=>  xi_1 = sign(A) sqrt(A^2 + 2p)
  auto outer = [p](double a) {
    double q = a * a + 2.0 * p;
    return q >= 0.0 ? std::copysign(std::sqrt(q), a) : std::nan("");
  };
  for (std::size_t k = 0; k < fi.bumps().size(); ++k) {
    if (fi.bumps()[k].mass == 0.0) continue;
    auto support = fi.bump_support(k);
    for (std::size_t i = 0; i < support.size(); ++i) {
      const Interval& iv = support[i];
      if (iv.lo < 0.0) {
        double near = std::max(-iv.hi, 0.0), far = -iv.lo;
        if (far * far + 2.0 * p > 0.0)
          out.push_back({&fi, k,
                         {-std::sqrt(far * far + 2.0 * p),
                          -std::sqrt(std::max(near * near + 2.0 * p, 0.0))},
                         kOuter, images(fi, k, i, outer)});
      }
      if (iv.hi > 0.0 && !only_incoming) {
        double near = std::max(iv.lo, 0.0), far = iv.hi;
        if (far * far + 2.0 * p > 0.0)
          out.push_back({&fi, k,
                         {std::sqrt(std::max(near * near + 2.0 * p, 0.0)),
                          std::sqrt(far * far + 2.0 * p)},
                         kOuter, images(fi, k, i, outer)});
      }
    }
  }
  if (branch_ == IonBranch::kAttractive && p > 0.0) {
    // trapped region xi_1^2 < 2p, argument A = sqrt(xi_1^2 - 2p + 2 phi_b)
    const DistributionSpec& fb = ctx_.f_b;
    const double c = 2.0 * (ctx_.bc.phi_b - p);
    const double a_min = std::sqrt(std::max(c, 0.0)), a_max = std::sqrt(2.0 * ctx_.bc.phi_b);
    auto trapped = [c](double a) { return a * a - c >= 0.0 ? std::sqrt(a * a - c) : std::nan(""); };
    for (std::size_t k = 0; k < fb.bumps().size(); ++k) {
      if (fb.bumps()[k].mass == 0.0) continue;
      auto support = fb.bump_support(k);
      for (std::size_t i = 0; i < support.size(); ++i) {
        const Interval& iv = support[i];
        double a0 = std::max(iv.lo, a_min), a1 = std::min(iv.hi, a_max);
        if (!(a1 > a0)) continue;
        double x0 = std::sqrt(std::max(a0 * a0 - c, 0.0)), x1 = std::sqrt(std::max(a1 * a1 - c, 0.0));
        if (!(x1 > x0)) continue;
        std::vector<double> pos = images(fb, k, i, trapped), neg;
        for (double b : pos) neg.push_back(-b);
        out.push_back({&fb, k, {x0, x1}, kReflected, std::move(pos)});
        out.push_back({&fb, k, {-x1, -x0}, kReflected, std::move(neg)});
      }
    }
  }
  return out;
}

double SheathSolution::piece_value(const Piece& piece, double p, double xi1) const {
  if (piece.kind == kIdentity) return piece.spec->bump_marginal(piece.bump, xi1);
  if (piece.kind == kOuter) {
    double q = xi1 * xi1 - 2.0 * p;
    if (q <= 0.0) return 0.0;
    return piece.spec->bump_marginal(piece.bump, std::copysign(std::sqrt(q), xi1));
  }
  double q = xi1 * xi1 - 2.0 * p + 2.0 * ctx_.bc.phi_b;
  if (xi1 * xi1 >= 2.0 * p || q <= 0.0) return 0.0;
  return piece.spec->bump_marginal(piece.bump, std::sqrt(q)) / (1.0 - ctx_.bc.alpha);
}

double SheathSolution::f(double x, const Velocity& xi) const {
  if (profile_.is_trivial()) return ctx_.f_inf(xi);
  const double p = profile_.evaluate(x);
  const double q = xi[0] * xi[0] - 2.0 * p;
  switch (branch_) {
    case IonBranch::kAbsorbing:
      if (xi[0] < 0.0 && q > 0.0) return ctx_.f_inf({-std::sqrt(q), xi[1], xi[2]});
      return 0.0;
    case IonBranch::kAttractive:
      if (q > 0.0) return ctx_.f_inf({std::copysign(std::sqrt(q), xi[0]), xi[1], xi[2]});
      if (q < 0.0 && !ctx_.f_b.empty()) {
        double a = q + 2.0 * ctx_.bc.phi_b;
        if (a <= 0.0) return 0.0;
        return ctx_.f_b({std::sqrt(a), xi[1], xi[2]}) / (1.0 - ctx_.bc.alpha);
      }
      return 0.0;
    case IonBranch::kRepulsive:
      if (q > 0.0) return ctx_.f_inf({std::copysign(std::sqrt(q), xi[0]), xi[1], xi[2]});
      return 0.0;
  }
  return 0.0;
}

double SheathSolution::f_marginal(double x, double xi1) const {
  const double p = profile_.is_trivial() ? 0.0 : profile_.evaluate(x);
  double total = 0.0;
  for (const Piece& piece : pieces(p))
    if (xi1 > piece.range.lo && xi1 < piece.range.hi) total += piece_value(piece, p, xi1);
  return total;
}

double SheathSolution::density(double x) const {
  if (profile_.is_trivial()) return mass(ctx_.f_inf, ctx_.quad);
  return ion_density(ctx_, branch_, profile_.evaluate(x));
}

double SheathSolution::flux_at(double x) const {
  return reconstructed_moment(x, [](double s) { return s; });
}

SheathSolution solve_sheath(const KernelContext& ctx, const ElectronModel& ne,
                            const SolveOptions& options) {
  ctx.bc.validate();
  const double phi_b = ctx.bc.phi_b;
  if (phi_b == 0.0) {
    double m = mass(ctx.f_inf, ctx.quad);
    if (!(std::abs(m - 1.0) < 1e-8))
      fail(ErrorCode::kNeutralityViolation, "mass(f_inf) = " + std::to_string(m) + ", expected 1");
    return SheathSolution(ctx, ne, PotentialProfile::trivial(options.profile.grid_points));
  }
  Side side = phi_b > 0.0 ? Side::kAttractive : Side::kRepulsive;
  auto data = std::make_shared<const SagdeevData>(build_sagdeev(ctx, ne, side, options.sagdeev));
  PotentialProfile profile = solve_phi(*data, phi_b, options.profile);
  return SheathSolution(ctx, ne, std::move(profile), std::move(data));
}

double reconstruct_f(const SheathSolution& sol, double x, const Velocity& xi) { return sol.f(x, xi); }

const Moments& moments(const SheathSolution& sol) { return sol.moments(); }

DecayFit fit_decay_rate(const PotentialProfile& profile) {
  if (profile.is_trivial()) fail(ErrorCode::kInsufficientDecay, "trivial profile does not decay");
  const auto& x = profile.x();
  const auto& phi = profile.phi();
  const double tail = std::abs(profile.tail_phi());
  if (!(tail > 0.0) || std::abs(phi.front()) < 10.0 * tail)
    fail(ErrorCode::kInsufficientDecay, "pre-tail segment spans less than one decade");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size() && x[i] <= profile.tail_x(); ++i) {
    double a = std::abs(phi[i]);
    if (a > 10.0 * tail || a <= 0.0) continue;
    double y = std::log(a);
    sx += x[i];
    sy += y;
    sxx += x[i] * x[i];
    sxy += x[i] * y;
    ++n;
  }
  if (n < 3) fail(ErrorCode::kInsufficientDecay, "too few grid points in the last pre-tail decade");
  double den = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / den;
  double intercept = (sy - slope * sx) / n;
  DecayFit fit;
  fit.rate = -slope;
  fit.amplitude = std::exp(intercept);
  fit.marginal = profile.marginal();
  fit.points = n;
  return fit;
}

double poisson_residual(const PotentialProfile& profile, const std::vector<double>& rho,
                        const ElectronModel& ne) {
  const auto& phi = profile.phi();
  if (rho.size() != phi.size()) fail(ErrorCode::kInvalidInput, "rho and phi sizes differ");
  if (phi.size() < 3) return 0.0;
  const double h = profile.spacing();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < phi.size(); ++i) {
    double d2 = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
    worst = std::max(worst, std::abs(d2 - (rho[i] - ne.density(phi[i]))));
  }
  return worst;
}

double poisson_residual(const SheathSolution& sol) {
  return poisson_residual(sol.profile(), sol.moments().rho, sol.electrons());
}

double first_integral_residual(const PotentialProfile& profile, const Pseudopotential& potential) {
  double worst = 0.0;
  const auto& phi = profile.phi();
  const auto& dphi = profile.dphi();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double v = phi[i] == 0.0 ? 0.0 : potential.value(phi[i]);
    worst = std::max(worst, std::abs(dphi[i] * dphi[i] - 2.0 * v));
  }
  return worst;
}

}  // namespace sheath

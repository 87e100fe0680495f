#include "sheath/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sheath/error.hpp"

namespace sheath {
namespace {

double sign_weight(IonBranch branch, double s) {
  if (branch == IonBranch::kAbsorbing) return s < 0.0 ? 1.0 : -1.0;
  return 1.0;
}

// Sum over bumps of int g_k(+-x(zeta)) kernel(zeta, x) dzeta, x = sqrt(zeta^2 + s^2),
// covering |xi_1| > s. The substitution removes the square-root edge at |xi_1| = s.
template <class K>
double outer_integral(const DistributionSpec& f, double s, const QuadratureSettings& q, K kernel) {
  double total = 0.0;
  const double s2 = s * s;
  for (std::size_t k = 0; k < f.bumps().size(); ++k) {
    if (f.bumps()[k].mass == 0.0) continue;
    auto support = f.bump_support(k);
    for (std::size_t i = 0; i < support.size(); ++i) {
      const Interval& iv = support[i];
      // Away from the edge the original variable is smooth; dzeta = x/zeta dx.
      if (iv.lo > s || iv.hi < -s) {
        total += f.integrate_piece(
            k, i, iv,
            [&](double xi) {
              double x = std::abs(xi), z = std::sqrt((x - s) * (x + s));
              return kernel(z, x) * x / z;
            },
            q);
        continue;
      }
      if (iv.hi > s) {
        double lo = std::max(iv.lo, s);
        double z0 = std::sqrt(std::max(lo * lo - s2, 0.0)), z1 = std::sqrt(iv.hi * iv.hi - s2);
        total += quad::integrate(
            [&](double z) {
              double x = std::sqrt(z * z + s2);
              return f.bump_marginal(k, x) * kernel(z, x);
            },
            z0, z1, q);
      }
      if (iv.lo < -s) {
        double hi = std::max(-iv.hi, s);
        double z0 = std::sqrt(std::max(hi * hi - s2, 0.0)), z1 = std::sqrt(iv.lo * iv.lo - s2);
        total += quad::integrate(
            [&](double z) {
              double x = std::sqrt(z * z + s2);
              return f.bump_marginal(k, -x) * kernel(z, x);
            },
            z0, z1, q);
      }
    }
  }
  return total;
}

// Integral of g(xi_1) w(xi_1) over |xi_1| < s.
template <class W>
double strip_integral(const DistributionSpec& f, double s, const QuadratureSettings& q, W w) {
  double total = 0.0;
  for (std::size_t k = 0; k < f.bumps().size(); ++k) {
    if (f.bumps()[k].mass == 0.0) continue;
    for (const Interval& iv : f.bump_support(k)) {
      double lo = std::max(iv.lo, -s), hi = std::min(iv.hi, s);
      if (hi > lo)
        total += quad::integrate([&](double x) { return f.bump_marginal(k, x) * w(x); }, lo, hi, q);
    }
  }
  return total;
}

// (2/(1-alpha)) int f_b(sqrt(w^2 + 2(phi_b - phi))) weight(w) dw over
// w in [sqrt(2(phi - phi_b)_+), sqrt(2 phi)]: the reflected population of the
// attractive branch after the substitution that removes the inverse square root.
template <class W>
double boundary_term(const KernelContext& ctx, double phi, W weight) {
  const double phi_b = ctx.bc.phi_b;
  if (ctx.f_b.empty() || phi_b <= 0.0 || phi <= 0.0) return 0.0;
  const double c = 2.0 * (phi_b - phi);
  const double w_lo = std::sqrt(std::max(-c, 0.0)), w_hi = std::sqrt(2.0 * phi);
  const double a_max = std::sqrt(2.0 * phi_b);
  const DistributionSpec& f = ctx.f_b;
  double total = 0.0;
  for (std::size_t k = 0; k < f.bumps().size(); ++k) {
    if (f.bumps()[k].mass == 0.0) continue;
    for (const Interval& iv : f.bump_support(k)) {
      double a0 = std::max(iv.lo, 0.0), a1 = std::min(iv.hi, a_max);
      if (!(a1 > a0) || a1 * a1 - c <= 0.0) continue;
      double z0 = std::max(std::sqrt(std::max(a0 * a0 - c, 0.0)), w_lo);
      double z1 = std::min(std::sqrt(a1 * a1 - c), w_hi);
      total += quad::integrate(
          [&](double w) { return f.bump_marginal(k, std::sqrt(w * w + c)) * weight(w); }, z0, z1,
          ctx.quad);
    }
  }
  return 2.0 / (1.0 - ctx.bc.alpha) * total;
}

double kernel_density(const KernelContext& ctx, IonBranch branch, double phi) {
  return ctx.f_inf.integrate(
      [&](double s) {
        double d = std::sqrt(s * s + 2.0 * phi);
        double a = branch == IonBranch::kAbsorbing ? -s : std::abs(s);
        return d > 0.0 ? a / d : 1.0;
      },
      ctx.quad);
}

}  // namespace

IonBranch select_branch(const KernelContext& ctx, bool repulsive) {
  if (repulsive) return IonBranch::kRepulsive;
  if (ctx.f_b.empty() && ctx.bc.alpha == 0.0) return IonBranch::kAbsorbing;
  return IonBranch::kAttractive;
}

double rho_i(const KernelContext& ctx, double phi) {
  if (!(phi >= 0.0)) fail(ErrorCode::kDomain, "rho_i needs phi >= 0");
  return kernel_density(ctx, IonBranch::kAbsorbing, phi);
}

double rho_i_plus(const KernelContext& ctx, double phi) {
  if (!(phi >= 0.0)) fail(ErrorCode::kDomain, "rho_i_plus needs phi >= 0");
  if (ctx.bc.phi_b < 0.0) fail(ErrorCode::kDomain, "rho_i_plus needs phi_b >= 0");
  return kernel_density(ctx, IonBranch::kAttractive, phi) +
         boundary_term(ctx, phi, [](double) { return 1.0; });
}

double rho_i_minus(const KernelContext& ctx, double phi) {
  if (!(phi <= 0.0)) fail(ErrorCode::kDomain, "rho_i_minus needs phi <= 0");
  return outer_integral(ctx.f_inf, std::sqrt(-2.0 * phi), ctx.quad,
                        [](double, double) { return 1.0; });
}

double ion_density(const KernelContext& ctx, IonBranch branch, double phi) {
  switch (branch) {
    case IonBranch::kAbsorbing: return rho_i(ctx, phi);
    case IonBranch::kAttractive: return rho_i_plus(ctx, phi);
    case IonBranch::kRepulsive: return rho_i_minus(ctx, phi);
  }
  return 0.0;
}

IonPotential ion_potential(const KernelContext& ctx, IonBranch branch, double phi) {
  IonPotential out;
  if (branch == IonBranch::kRepulsive) {
    if (!(phi <= 0.0)) fail(ErrorCode::kDomain, "repulsive branch needs phi <= 0");
    out.linear = mass(ctx.f_inf, ctx.quad);
    if (phi == 0.0) {
      out.reduced = -0.5 * branch_bohm_integral(ctx, branch).value;
      return out;
    }
    double s = std::sqrt(-2.0 * phi);
    // |xi_1| > s: |xi_1| (S - |xi_1|) = phi - 2 phi^2 / (S + |xi_1|)^2, S = sqrt(xi_1^2 + 2 phi)
    double j = outer_integral(ctx.f_inf, s, ctx.quad, [](double z, double x) {
      double d = z + x;
      return z / (x * d * d);
    });
    // |xi_1| < s: those ions turn back before phi and contribute -xi_1^2
    double strip = strip_integral(ctx.f_inf, s, ctx.quad, [phi](double x) { return phi + x * x; });
    out.reduced = -2.0 * j - strip / (phi * phi);
    return out;
  }
  if (!(phi >= 0.0)) fail(ErrorCode::kDomain, "attractive branch needs phi >= 0");
  out.linear = ctx.f_inf.integrate([&](double s) { return sign_weight(branch, s); }, ctx.quad);
  double j = ctx.f_inf.integrate(
      [&](double s) {
        double d = std::sqrt(s * s + 2.0 * phi) + std::abs(s);
        return sign_weight(branch, s) / (d * d);
      },
      ctx.quad);
  out.reduced = -2.0 * j;
  if (branch == IonBranch::kAttractive && phi > 0.0)
    out.reduced += boundary_term(ctx, phi, [](double w) { return w * w; }) / (phi * phi);
  return out;
}

BohmIntegral branch_bohm_integral(const KernelContext& ctx, IonBranch branch) {
  for (const Interval& iv : ctx.f_inf.support())
    if (iv.lo < kBohmInfiniteGap && iv.hi > -kBohmInfiniteGap)
      return {std::numeric_limits<double>::infinity(), true};
  double v = ctx.f_inf.integrate([&](double s) { return sign_weight(branch, s) / (s * s); }, ctx.quad);
  return {v, false};
}

namespace {

// int_a^b (A / sqrt(A^2 - a^2))^{r'} dA with zeta = sqrt(A^2 - a^2) = w^p, p = 1/(2 - r'),
// which turns the endpoint singularity into the smooth integrand p A(w)^{r'-1}.
double conjugate_integral(double a, double b, double rp, const QuadratureSettings& q) {
  if (!(b > a)) return 0.0;
  double p = 1.0 / (2.0 - rp);
  double w_max = std::pow(b * b - a * a, 1.0 / (2.0 * p));
  return quad::integrate(
      [&](double w) { return p * std::pow(std::sqrt(std::pow(w, 2.0 * p) + a * a), rp - 1.0); },
      0.0, w_max, q);
}

double lr_norm(const DistributionSpec& f, double lo, double hi, double r,
               const QuadratureSettings& q) {
  double total = 0.0;
  for (const Interval& iv : f.support()) {
    double a = std::max(iv.lo, lo), b = std::min(iv.hi, hi);
    if (b > a) total += quad::integrate([&](double s) { return std::pow(f.marginal(s), r); }, a, b, q);
  }
  return std::pow(total, 1.0 / r);
}

}  // namespace

BoundReport bound_check(const KernelContext& ctx, const std::vector<double>& phi_samples) {
  BoundReport rep;
  rep.holder_r = ctx.holder_r;
  rep.repulsive = ctx.bc.phi_b < 0.0;
  if (phi_samples.empty()) {
    rep.min_slack = std::numeric_limits<double>::infinity();
    return rep;
  }
  if (!(ctx.holder_r > 2.0)) fail(ErrorCode::kInvalidInput, "Hoelder exponent must exceed 2");
  const double r = ctx.holder_r, rp = r / (r - 1.0);
  const QuadratureSettings& q = ctx.quad;
  rep.l1_norm = mass(ctx.f_inf, q);

  double bound = 0.0;
  if (!rep.repulsive) {
    const double phi_b = ctx.bc.phi_b, b = std::sqrt(2.0 * std::max(phi_b, 0.0));
    std::vector<double> sup_grid(phi_samples);
    for (int i = 0; i <= 200; ++i) sup_grid.push_back(phi_b * i / 200.0);
    double worst = 0.0;
    for (double phi : sup_grid) {
      double integral;
      if (phi <= phi_b) {
        integral = conjugate_integral(std::sqrt(2.0 * (phi_b - phi)), b, rp, q);
      } else {
        double c = 2.0 * (phi - phi_b);
        integral = quad::integrate(
            [&](double a) { return std::pow(a / std::sqrt(a * a + c), rp); }, 0.0, b, q);
      }
      worst = std::max(worst, std::pow(integral, 1.0 / rp));
    }
    rep.constant = 2.0 / (1.0 - ctx.bc.alpha) * worst;
    rep.lr_norm = ctx.f_b.empty() ? 0.0 : lr_norm(ctx.f_b, 0.0, b, r, q);
    bound = rep.l1_norm + rep.constant * rep.lr_norm;
  } else {
    double m = -ctx.bc.phi_b;
    for (double phi : phi_samples) m = std::max(m, -phi);
    const double edge = 2.0 * std::sqrt(m);
    std::vector<double> sup_grid(phi_samples);
    for (int i = 0; i <= 200; ++i) sup_grid.push_back(-m * i / 200.0);
    double worst = 0.0;
    for (double phi : sup_grid) {
      double s = std::sqrt(std::max(-2.0 * phi, 0.0));
      worst = std::max(worst, std::pow(2.0 * conjugate_integral(s, edge, rp, q), 1.0 / rp));
    }
    rep.constant = worst;
    rep.lr_norm = lr_norm(ctx.f_inf, -edge, edge, r, q);
    bound = std::sqrt(2.0) * rep.l1_norm + rep.constant * rep.lr_norm;
  }

  rep.min_slack = std::numeric_limits<double>::infinity();
  for (double phi : phi_samples) {
    BoundSample s;
    s.phi = phi;
    s.value = rep.repulsive ? rho_i_minus(ctx, phi) : rho_i_plus(ctx, phi);
    s.bound = bound;
    s.slack = bound - std::abs(s.value);
    rep.min_slack = std::min(rep.min_slack, s.slack);
    rep.samples.push_back(s);
  }
  rep.passed = rep.min_slack >= -1e-12;
  return rep;
}

}  // namespace sheath

#include "sheath/wall.hpp"

#include <cmath>
#include <string>

#include "sheath/error.hpp"

namespace sheath {

double reduce_wall_potential(const DistributionSpec& f_inf, double v_e, const ElectronModel& ne,
                             const WallOptions& options) {
  if (!(v_e != 0.0) || !std::isfinite(v_e)) fail(ErrorCode::kInvalidInput, "v_e must be nonzero");
  const double target = flux(f_inf, options.quad) / v_e;
  if (!(target > 0.0))
    fail(ErrorCode::kNoRoot, "flux / v_e = " + std::to_string(target) + " is not positive");
  if (ne.density(0.0) == target) return 0.0;

  // widest interval [lo, hi] around 0 on which n_e' < 0
  const double limit = options.search_limit;
  constexpr int kSteps = 4000;
  double lo = 0.0, hi = 0.0;
  for (int i = 1; i <= kSteps; ++i) {
    double phi = limit * i / kSteps;
    if (!(ne.derivative(phi) < 0.0) || !(ne.density(phi) > 0.0)) break;
    hi = phi;
  }
  for (int i = 1; i <= kSteps; ++i) {
    double phi = -limit * i / kSteps;
    if (!(ne.derivative(phi) < 0.0)) break;
    lo = phi;
  }
  double n_hi = ne.density(lo), n_lo = ne.density(hi);
  if (!(target <= n_hi && target >= n_lo))
    fail(ErrorCode::kNoRoot, "flux / v_e = " + std::to_string(target) +
                                 " is outside the range of n_e on the search interval");
  for (int it = 0; it < 400 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (ne.density(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double reduce_wall_potential(const KernelContext& ctx, const ElectronModel& ne,
                             const WallOptions& options) {
  if (!ctx.f_b.empty() || ctx.bc.alpha != 0.0)
    fail(ErrorCode::kUnsupportedReduction,
         "the wall reduction is only defined for f_b = 0 and alpha = 0");
  if (!ctx.bc.has_v_e) fail(ErrorCode::kInvalidInput, "boundary.v_e is required");
  WallOptions o = options;
  o.quad = ctx.quad;
  return reduce_wall_potential(ctx.f_inf, ctx.bc.v_e, ne, o);
}

}  // namespace sheath

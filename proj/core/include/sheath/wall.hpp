#pragma once

#include "sheath/dists.hpp"
#include "sheath/electrons.hpp"
#include "sheath/kernels.hpp"

namespace sheath {

struct WallOptions {
  // half-width of the search interval around phi = 0
  double search_limit = 50.0;
  QuadratureSettings quad;
};

// Wall potential from the flux balance n_e(phi_0) v_e = flux(f_inf). Only the
// completely absorbing case is covered; n_e is inverted on the interval around 0
// where it is strictly decreasing. NO_ROOT when flux / v_e is out of reach.
double reduce_wall_potential(const DistributionSpec& f_inf, double v_e, const ElectronModel& ne,
                             const WallOptions& options = {});

// Same, refusing contexts with a boundary population or reflection.
double reduce_wall_potential(const KernelContext& ctx, const ElectronModel& ne,
                             const WallOptions& options = {});

}  // namespace sheath

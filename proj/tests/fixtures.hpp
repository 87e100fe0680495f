#pragma once

#include <vector>

#include "sheath/dists.hpp"
#include "sheath/kernels.hpp"

namespace fixture {

inline sheath::KernelContext absorbing(double u, double eps, double phi_b,
                                       const sheath::Velocity& skew = {0.0, 0.0, 0.0}) {
  sheath::KernelContext ctx;
  ctx.f_inf = sheath::drifting_bump(-u, eps, 1.0, skew);
  ctx.bc.phi_b = phi_b;
  return ctx;
}

// Partially reflecting wall: general family (m_b = 0.2, alpha = 0.5, v = 2).
inline sheath::KernelContext general(double phi_b = 0.5, double eps = 0.05) {
  sheath::GeneralFamily g{0.2, 0.8 / 1.5, 2.0, 2.0, 0.5, phi_b};
  auto pair = sheath::make_delta_family(g, eps);
  sheath::KernelContext ctx;
  ctx.f_inf = pair.f_inf;
  ctx.f_b = pair.f_b;
  ctx.bc = {phi_b, 0.5};
  return ctx;
}

// Same wall plus a trapped population in f_b below sqrt(2 phi_b).
inline sheath::KernelContext trapped(double phi_b = 0.5, double eps = 0.05) {
  sheath::KernelContext ctx = general(phi_b, eps);
  std::vector<sheath::Bump> fb = ctx.f_b.bumps();
  fb.push_back({0.05, {0.6, 0.0, 0.0}, 0.2, {0.0, 0.0, 0.0}, 0.0});
  ctx.f_b = sheath::DistributionSpec(fb, sheath::Cutoff::kPositive);
  return ctx;
}

}  // namespace fixture

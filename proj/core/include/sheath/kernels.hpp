#pragma once

#include <vector>

#include "sheath/dists.hpp"
#include "sheath/quadrature.hpp"

namespace sheath {

struct KernelContext {
  DistributionSpec f_inf;
  DistributionSpec f_b;
  BoundaryConfig bc;
  QuadratureSettings quad;
  double holder_r = 3.0;
};

// Which ion density the pseudopotential integrates.
//   kAbsorbing:  int f_inf (-xi_1)/sqrt(xi_1^2 + 2 phi), phi >= 0
//   kAttractive: |xi_1| kernel plus the reflected boundary population, phi >= 0
//   kRepulsive:  |xi_1| kernel restricted to xi_1^2 + 2 phi > 0, phi <= 0
enum class IonBranch { kAbsorbing, kAttractive, kRepulsive };

IonBranch select_branch(const KernelContext& ctx, bool repulsive);

double rho_i(const KernelContext& ctx, double phi);
double rho_i_plus(const KernelContext& ctx, double phi);
double rho_i_minus(const KernelContext& ctx, double phi);
double ion_density(const KernelContext& ctx, IonBranch branch, double phi);

// Ion part of the pseudopotential, int_0^phi rho, split as
// phi * linear + phi^2 * reduced so that small phi loses no digits.
struct IonPotential {
  double linear = 0.0;
  double reduced = 0.0;
  double value(double phi) const { return phi * linear + phi * phi * reduced; }
};

IonPotential ion_potential(const KernelContext& ctx, IonBranch branch, double phi);

// Bohm-type integral int f_inf sigma(xi_1) / xi_1^2 with sigma = -sign (absorbing)
// or 1; equals -2 * reduced at phi = 0.
BohmIntegral branch_bohm_integral(const KernelContext& ctx, IonBranch branch);

struct BoundSample {
  double phi = 0.0;
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;
};

struct BoundReport {
  bool repulsive = false;
  double holder_r = 3.0;
  double constant = 0.0;   // C or C_M
  double lr_norm = 0.0;    // L^r(L^1) norm entering the bound
  double l1_norm = 0.0;
  std::vector<BoundSample> samples;
  double min_slack = 0.0;
  bool passed = true;
};

// Checks rho_i^+ <= |f_inf|_1 + C |f_b|_r (phi_b >= 0) or
// rho_i^- <= sqrt(2) |f_inf|_1 + C_M |f_inf|_r (phi_b < 0) at every sample.
BoundReport bound_check(const KernelContext& ctx, const std::vector<double>& phi_samples);

}  // namespace sheath

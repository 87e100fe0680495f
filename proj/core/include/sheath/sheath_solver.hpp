#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "sheath/dists.hpp"
#include "sheath/electrons.hpp"
#include "sheath/kernels.hpp"
#include "sheath/profile.hpp"
#include "sheath/sagdeev.hpp"

namespace sheath {

struct SolveOptions {
  SagdeevOptions sagdeev;
  ProfileOptions profile;
};

struct Moments {
  std::vector<double> rho;   // rho_i^{+-}(phi(x))
  std::vector<double> flux;  // int xi_1 f(x, xi) dxi by direct quadrature
  std::vector<double> u;     // flux / rho
};

// Solved profile together with the data needed to rebuild f(x, xi).
class SheathSolution {
 public:
  SheathSolution(KernelContext ctx, ElectronModel ne, PotentialProfile profile,
                 std::shared_ptr<const SagdeevData> data = nullptr);

  const KernelContext& context() const { return ctx_; }
  const ElectronModel& electrons() const { return ne_; }
  const PotentialProfile& profile() const { return profile_; }
  IonBranch branch() const { return branch_; }
  bool marginal() const { return profile_.marginal(); }
  double reference_flux() const { return reference_flux_; }

  // f(x, xi) by the closed form matching the boundary type.
  double f(double x, const Velocity& xi) const;
  // int f(x, xi) dxi' at fixed xi_1.
  double f_marginal(double x, double xi1) const;
  // int w(xi_1) f(x, xi) dxi over the exact supports of the reconstruction.
  template <class W>
  double reconstructed_moment(double x, W&& w) const;

  double density(double x) const;  // rho_i^{+-}(phi(x))
  double flux_at(double x) const;  // direct quadrature of xi_1 f

  const Moments& moments() const { return moments_; }
  // Null for the trivial phi_b = 0 solution.
  const std::shared_ptr<const SagdeevData>& sagdeev() const { return data_; }

 private:
  struct Piece {
    const DistributionSpec* spec;
    std::size_t bump;
    Interval range;  // xi_1 range
    int kind;        // 0 incoming/outgoing f_inf, 1 reflected f_b
    std::vector<double> breaks;  // images of the marginal's panel edges
  };
  std::vector<Piece> pieces(double p) const;
  double piece_value(const Piece& piece, double p, double xi1) const;
  template <class W>
  double moment_at_potential(double p, W&& w) const;

  KernelContext ctx_;
  ElectronModel ne_;
  PotentialProfile profile_;
  IonBranch branch_ = IonBranch::kAbsorbing;
  double reference_flux_ = 0.0;
  Moments moments_;
  std::shared_ptr<const SagdeevData> data_;
};

template <class W>
double SheathSolution::reconstructed_moment(double x, W&& w) const {
  return moment_at_potential(profile_.evaluate(x), w);
}

template <class W>
double SheathSolution::moment_at_potential(double p, W&& w) const {
  double total = 0.0;
  for (const Piece& piece : pieces(p)) {
    total += quad::integrate([&](double s) { return w(s) * piece_value(piece, p, s); },
                             piece.range.lo, piece.range.hi, piece.breaks, ctx_.quad);
  }
  return total;
}

SheathSolution solve_sheath(const KernelContext& ctx, const ElectronModel& ne,
                            const SolveOptions& options = {});

double reconstruct_f(const SheathSolution& sol, double x, const Velocity& xi);
const Moments& moments(const SheathSolution& sol);

struct DecayFit {
  double rate = 0.0;
  double amplitude = 0.0;
  bool marginal = false;
  std::size_t points = 0;
};

// Least squares of ln|phi| against x over the last decade before the tail start.
DecayFit fit_decay_rate(const PotentialProfile& profile);

double poisson_residual(const PotentialProfile& profile, const std::vector<double>& rho,
                        const ElectronModel& ne);
double poisson_residual(const SheathSolution& sol);

// max |(dphi)^2 - 2 V(phi)| over the grid.
double first_integral_residual(const PotentialProfile& profile, const Pseudopotential& potential);

}  // namespace sheath

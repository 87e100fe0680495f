#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "sheath/dists.hpp"
#include "sheath/electrons.hpp"
#include "sheath/kernels.hpp"

namespace sheath {

enum class Side { kAttractive, kRepulsive };
enum class Classification { kStrict, kMarginalSolvable, kMarginalEmpty, kViolated };

std::string_view to_string(Side side);
std::string_view to_string(Classification c);

// V(phi) = int_0^phi (rho(p) - n_e(p)) dp for some ion density model.
class Pseudopotential {
 public:
  virtual ~Pseudopotential() = default;

  virtual double value(double phi) const = 0;
  // V(phi) / phi^2 for phi != 0.
  virtual double reduced(double phi) const = 0;
  // dV/dphi = rho(phi) - n_e(phi)
  virtual double force(double phi) const = 0;
  virtual double ion_density(double phi) const = 0;
  // d2V/dphi2 at 0 when known in closed form.
  virtual std::optional<double> exact_curvature() const { return std::nullopt; }
  // |phi| must stay below this on the side the potential is used.
  virtual double domain_limit(Side) const { return std::numeric_limits<double>::infinity(); }
  virtual const ElectronModel& electrons() const = 0;
};

class KineticPseudopotential final : public Pseudopotential {
 public:
  KineticPseudopotential(KernelContext ctx, ElectronModel ne, IonBranch branch);

  double value(double phi) const override;
  double reduced(double phi) const override;
  double force(double phi) const override;
  double ion_density(double phi) const override;
  std::optional<double> exact_curvature() const override;
  const ElectronModel& electrons() const override { return ne_; }

  const KernelContext& context() const { return ctx_; }
  IonBranch branch() const { return branch_; }

 private:
  KernelContext ctx_;
  ElectronModel ne_;
  IonBranch branch_;
};

struct PositivityBound {
  double value = 0.0;  // sup B (attractive) or inf B (repulsive)
  bool unbounded = false;
};

struct SagdeevOptions {
  double phi_max = 10.0;
  std::size_t grid_points = 10000;
  double tolerance = 1e-6;  // marginal band for d2V0
  double fd_step = 1e-3;
};

struct SagdeevData {
  Side side = Side::kAttractive;
  std::vector<double> grid;
  std::vector<double> V_values;
  double d2V0 = 0.0;
  double d2V0_second_order = 0.0;  // 2nd-order stencil, for the discrepancy report
  double fd_discrepancy = 0.0;
  bool d2V0_exact = false;
  BohmIntegral K;
  PositivityBound bound;
  Classification classification = Classification::kViolated;
  double tolerance = 1e-6;
  double phi_max = 10.0;  // effective scan limit
  std::shared_ptr<const Pseudopotential> potential;
};

// Samples V on the log-refined grid, finds the positivity bound and classifies.
SagdeevData analyze_pseudopotential(std::shared_ptr<const Pseudopotential> potential, Side side,
                                    const SagdeevOptions& options, BohmIntegral K);

SagdeevData build_sagdeev(const KernelContext& ctx, const ElectronModel& ne, Side side,
                          const SagdeevOptions& options = {});

struct BohmReport {
  Side side = Side::kAttractive;
  Classification classification = Classification::kViolated;
  BohmIntegral K;
  double d2V0 = 0.0;
  double fd_discrepancy = 0.0;
  PositivityBound bound;
  double phi_max = 0.0;
  double tolerance = 0.0;
};

Classification classify(const SagdeevData& data, double tolerance);
BohmReport bohm_report(const SagdeevData& data);
BohmReport bohm_report(const SagdeevData& data, double tolerance);

// NOT_APPLICABLE unless the classification is STRICT or MARGINAL_SOLVABLE.
PositivityBound sup_b(const SagdeevData& data);
PositivityBound inf_b(const SagdeevData& data);

// The log-refined scan grid: 0, then half the points log-spaced on
// [1e-6, 1e-2] * phi_max, the rest uniform up to phi_max; negated for repulsive.
std::vector<double> scan_grid(double phi_max, std::size_t points, Side side);

}  // namespace sheath

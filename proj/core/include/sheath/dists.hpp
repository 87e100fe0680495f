#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sheath/quadrature.hpp"

namespace sheath {

using Velocity = std::array<double, 3>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// psi(xi) = A exp(-1/(1-|xi|^2)) on the open unit ball, scaled to unit mass.
class BumpProfile {
 public:
  static const BumpProfile& standard();

  double normalization() const { return normalization_; }
  double operator()(const Velocity& xi) const;
  // Integral of psi over the plane xi_1 = s.
  double marginal(double s) const;
  // Second moment of the marginal, int s^2 marginal(s) ds.
  double marginal_variance() const { return variance_; }

 private:
  BumpProfile();
  double normalization_;
  double variance_;
};

// One mollified population: mass * width^-3 * psi_d((T(xi) - center)/width), where
// psi_d(eta) = l^-3 psi((eta - skew)/l), l = 1 - |skew|, and T replaces xi_1 by
// sign(xi_1) sqrt(xi_1^2 - energy_shift) (zero where xi_1^2 <= energy_shift).
struct Bump {
  double mass = 1.0;
  Velocity center{0.0, 0.0, 0.0};
  double width = 0.1;
  Velocity skew{0.0, 0.0, 0.0};
  double energy_shift = 0.0;

  bool operator==(const Bump&) const = default;
};

enum class Cutoff { kNone, kPositive, kNegative };

std::string_view to_string(Cutoff cutoff);

class DistributionSpec {
 public:
  DistributionSpec() = default;
  explicit DistributionSpec(std::vector<Bump> bumps, Cutoff cutoff = Cutoff::kNone);

  const std::vector<Bump>& bumps() const { return bumps_; }
  Cutoff cutoff() const { return cutoff_; }
  // True when no bump carries positive mass.
  bool empty() const;

  double operator()(const Velocity& xi) const;
  double marginal(double xi1) const;
  double bump_marginal(std::size_t k, double xi1) const;
  // xi_1 support of bump k after energy shift and cutoff, split at 0.
  std::vector<Interval> bump_support(std::size_t k) const;
  std::vector<Interval> support() const;
  double max_speed() const;

  // Cached rule for the marginal of bump k on its i-th support interval.
  const quad::WeightedRule& rule(std::size_t k, std::size_t i) const { return (*rules_)[k][i]; }

  // Integral of w(xi_1) * bump_marginal(k, xi_1) over iv, the i-th support
  // interval of bump k: the cached rule when it resolves w, adaptive otherwise.
  template <class W>
  double integrate_piece(std::size_t k, std::size_t i, const Interval& iv, W&& w,
                         const QuadratureSettings& q) const {
    double out;
    if (rules_ && !(*rules_)[k][i].empty() && (*rules_)[k][i].apply(w, q.rel_tol, out)) return out;
    return quad::integrate([&](double s) { return w(s) * bump_marginal(k, s); }, iv.lo, iv.hi, q);
  }

  // Integral of w(xi_1) * marginal(xi_1), bump by bump over exact supports.
  template <class W>
  double integrate(W&& w, const QuadratureSettings& q = {}) const {
    double total = 0.0;
    for (std::size_t k = 0; k < bumps_.size(); ++k) {
      if (bumps_[k].mass == 0.0) continue;
      auto support = bump_support(k);
      for (std::size_t i = 0; i < support.size(); ++i)
        total += integrate_piece(k, i, support[i], w, q);
    }
    return total;
  }

 private:
  std::vector<Bump> bumps_;
  Cutoff cutoff_ = Cutoff::kNone;
  std::shared_ptr<const std::vector<std::vector<quad::WeightedRule>>> rules_;
};

struct BoundaryConfig {
  double phi_b = 0.0;
  double alpha = 0.0;
  double v_e = 0.0;
  bool has_v_e = false;

  // Throws REJECT_ALPHA_ONE for alpha == 1, INVALID_INPUT outside [0, 1).
  void validate() const;

  bool operator==(const BoundaryConfig&) const = default;
};

struct BohmIntegral {
  double value = 0.0;
  bool infinite = false;
};

// Support closer than this to xi_1 = 0 makes the Bohm integral infinite.
inline constexpr double kBohmInfiniteGap = 1e-6;

double mass(const DistributionSpec& f, const QuadratureSettings& q = {});
double flux(const DistributionSpec& f, const QuadratureSettings& q = {});
BohmIntegral kinetic_bohm_integral(const DistributionSpec& f, const QuadratureSettings& q = {});

struct ConditionReport {
  std::string condition;        // "need2", "need3" or "need4"
  double max_residual = 0.0;    // absolute
  double relative_residual = 0.0;
  double reference_scale = 0.0; // max |f_inf| over the sample set
  std::size_t points = 0;
  bool passed = false;
};

inline constexpr double kConditionTolerance = 1e-8;

ConditionReport check_necessary_conditions(const DistributionSpec& f_inf,
                                           const DistributionSpec& f_b,
                                           const BoundaryConfig& bc);

struct AbsorbingFamily {
  double u_inf = 2.0;
};
struct GeneralFamily {
  double m_b = 0.0;
  double m_inf = 1.0;
  double v_b = 2.0;
  double v_inf = 2.0;
  double alpha = 0.0;
  double phi_b = 0.0;
};
using FamilyKind = std::variant<AbsorbingFamily, GeneralFamily>;

struct DistributionPair {
  DistributionSpec f_b;
  DistributionSpec f_inf;
};

// Validates the mass and inverse-square conditions on the general family.
void check_velocity_condition(const GeneralFamily& g);

DistributionPair make_delta_family(const FamilyKind& kind, double eps,
                                   const Velocity& skew = {0.0, 0.0, 0.0});

// Single bump of the given mass drifting at velocity (v, 0, 0); no eps restriction.
DistributionSpec drifting_bump(double v, double eps, double m = 1.0,
                               const Velocity& skew = {0.0, 0.0, 0.0});

}  // namespace sheath

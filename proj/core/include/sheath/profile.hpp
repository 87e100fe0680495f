#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "sheath/chebyshev.hpp"
#include "sheath/sagdeev.hpp"

namespace sheath {

struct ProfileOptions {
  std::size_t grid_points = 10000;
  // quadrature in phi stops at |phi| = tail_ratio * |phi_b|
  double tail_ratio = 1e-6;
  // extent of the attached tail, in decades of further decay
  double tail_decades = 3.0;
  // throw MARGINAL_TAIL instead of returning a flagged marginal profile
  bool strict_tail = false;
  PiecewiseChebyshev::Options chebyshev;
};

// Monotone potential on a uniform x grid, plus an exact off-grid evaluator.
class PotentialProfile {
 public:
  PotentialProfile() = default;

  // phi = 0 on [0, length].
  static PotentialProfile trivial(std::size_t points, double length = 1.0);
  // Wraps sampled data (linear interpolation off grid), e.g. for synthetic tests.
  static PotentialProfile from_samples(Side side, std::vector<double> x, std::vector<double> phi,
                                       std::vector<double> dphi, double tail_rate,
                                       double x_tail, bool marginal);

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& dphi() const { return dphi_; }
  Side side() const { return side_; }
  double phi_b() const { return phi_.empty() ? 0.0 : phi_.front(); }
  double tail_rate() const { return tail_rate_; }
  double tail_x() const { return tail_x_; }
  double tail_phi() const { return tail_phi_; }
  bool marginal() const { return marginal_; }
  bool is_trivial() const { return trivial_; }
  double spacing() const { return x_.size() > 1 ? x_[1] - x_[0] : 0.0; }

  double evaluate(double x) const;
  double derivative(double x) const;

 private:
  friend PotentialProfile solve_phi(const SagdeevData&, double, const ProfileOptions&);
  struct Quadrature;

  Side side_ = Side::kAttractive;
  std::vector<double> x_, phi_, dphi_;
  double tail_rate_ = 0.0;
  double tail_x_ = 0.0;
  double tail_phi_ = 0.0;
  bool marginal_ = false;
  bool trivial_ = false;
  std::shared_ptr<const Quadrature> exact_;
};

// Refuses per the classification and the positivity bound; phi_b = 0 gives the
// trivial profile.
PotentialProfile solve_phi(const SagdeevData& data, double phi_b, const ProfileOptions& options = {});

}  // namespace sheath

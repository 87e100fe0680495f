#include "sheath/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sheath/error.hpp"

namespace sheath {

// x as a function of t = ln|phi|: x(t) = int_t^{t_b} h, h = 1 / sqrt(2 V / phi^2).
struct PotentialProfile::Quadrature {
  double sign = 1.0;
  double t_lo = 0.0, t_b = 0.0;
  double total = 0.0;  // x at the tail start
  double rate = 0.0;
  double phi_tail = 0.0;  // signed
  bool marginal = false;
  PiecewiseChebyshev h;
  std::vector<double> table_t, table_x;  // coarse, x decreasing

  double x_of_t(double t) const { return total - h.integral(t); }

  double t_of_x(double x) const {
    if (x <= 0.0) return t_b;
    if (x >= total) return t_lo;
    // table_x decreases with index
    auto it = std::lower_bound(table_x.begin(), table_x.end(), x, std::greater<double>());
    std::size_t i = static_cast<std::size_t>(it - table_x.begin());
    double lo = table_t[i - 1], hi = table_t[i];  // x(lo) >= x >= x(hi)
    double xl = table_x[i - 1], xh = table_x[i];
    double t = xl > xh ? lo + (hi - lo) * (xl - x) / (xl - xh) : lo;
    for (int it_n = 0; it_n < 100; ++it_n) {
      double f = x_of_t(t) - x;
      if (f > 0.0) lo = t; else hi = t;
      if (std::abs(f) <= 1e-15 * std::max(total, 1.0) || hi - lo <= 1e-15 * std::abs(t) + 1e-300)
        break;
      double next = t + f / h(t);
      t = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
    }
    return t;
  }

  double phi(double x) const {
    if (x > total) {
      if (marginal) return phi_tail;
      return phi_tail * std::exp(-rate * (x - total));
    }
    return sign * std::exp(t_of_x(x));
  }

  double dphi(double x) const {
    if (x > total) {
      if (marginal) return 0.0;
      return -rate * phi_tail * std::exp(-rate * (x - total));
    }
    double t = t_of_x(x);
    return -sign * std::exp(t) / h(t);
  }
};

PotentialProfile PotentialProfile::trivial(std::size_t points, double length) {
  PotentialProfile p;
  p.trivial_ = true;
  p.x_.resize(points);
  for (std::size_t i = 0; i < points; ++i) p.x_[i] = length * i / (points - 1.0);
  p.phi_.assign(points, 0.0);
  p.dphi_.assign(points, 0.0);
  return p;
}

PotentialProfile PotentialProfile::from_samples(Side side, std::vector<double> x,
                                                std::vector<double> phi, std::vector<double> dphi,
                                                double tail_rate, double x_tail, bool marginal) {
  if (x.size() != phi.size() || x.size() != dphi.size() || x.size() < 2)
    fail(ErrorCode::kInvalidInput, "profile samples must have equal length >= 2");
  PotentialProfile p;
  p.side_ = side;
  p.x_ = std::move(x);
  p.phi_ = std::move(phi);
  p.dphi_ = std::move(dphi);
  p.tail_rate_ = tail_rate;
  p.tail_x_ = x_tail;
  auto it = std::lower_bound(p.x_.begin(), p.x_.end(), x_tail);
  p.tail_phi_ = it == p.x_.end() ? p.phi_.back() : p.phi_[it - p.x_.begin()];
  p.marginal_ = marginal;
  return p;
}

namespace {
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - w) * ys[i - 1] + w * ys[i];
}
}  // namespace

double PotentialProfile::evaluate(double x) const {
  if (trivial_) return 0.0;
  if (exact_) return exact_->phi(x);
  return interpolate(x_, phi_, x);
}

double PotentialProfile::derivative(double x) const {
  if (trivial_) return 0.0;
  if (exact_) return exact_->dphi(x);
  return interpolate(x_, dphi_, x);
}

PotentialProfile solve_phi(const SagdeevData& data, double phi_b, const ProfileOptions& options) {
  if (options.grid_points < 16) fail(ErrorCode::kInvalidInput, "profile grid needs >= 16 points");
  if (phi_b == 0.0) return PotentialProfile::trivial(options.grid_points);
  const bool attractive = phi_b > 0.0;
  if (attractive != (data.side == Side::kAttractive))
    fail(ErrorCode::kInvalidInput, "sign of phi_b does not match the pseudopotential side");
  switch (data.classification) {
    case Classification::kViolated:
      fail(ErrorCode::kNoSolutionCriterion, "Bohm criterion violated (d2V0 = " +
                                                std::to_string(data.d2V0) + ")");
    case Classification::kMarginalEmpty:
      fail(ErrorCode::kNoSolutionEmptyB, "marginal case with empty positivity set");
    case Classification::kMarginalSolvable:
      if (options.strict_tail)
        fail(ErrorCode::kMarginalTail, "marginal case has no exponential tail guarantee");
      break;
    case Classification::kStrict: break;
  }
  const double mag = std::abs(phi_b);
  if (data.bound.unbounded ? mag > std::abs(data.bound.value) : mag >= std::abs(data.bound.value))
    fail(ErrorCode::kPhiBOutOfRange, "|phi_b| = " + std::to_string(mag) +
                                         " is not inside the positivity set (bound " +
                                         std::to_string(data.bound.value) + ")");
  if (!(options.tail_ratio > 0.0 && options.tail_ratio < 0.1))
    fail(ErrorCode::kInvalidInput, "tail_ratio must lie in (0, 0.1)");

  auto q = std::make_shared<PotentialProfile::Quadrature>();
  q->sign = attractive ? 1.0 : -1.0;
  q->t_b = std::log(mag);
  q->t_lo = std::log(options.tail_ratio * mag);
  q->marginal = data.classification == Classification::kMarginalSolvable;
  q->rate = q->marginal ? 0.0 : std::sqrt(data.d2V0);
  const Pseudopotential& pot = *data.potential;
  const double sign = q->sign;
  q->h = PiecewiseChebyshev::fit(
      [&](double t) {
        double phi = t >= q->t_b ? phi_b : sign * std::exp(t);
        double red = pot.reduced(phi);
        if (!(red > 0.0))
          fail(ErrorCode::kPhiBOutOfRange,
               "pseudopotential not positive at phi = " + std::to_string(phi));
        return 1.0 / std::sqrt(2.0 * red);
      },
      q->t_lo, q->t_b, options.chebyshev);
  q->total = q->h.total();
  q->phi_tail = sign * std::exp(q->t_lo);
  constexpr int kTable = 512;
  for (int i = 0; i <= kTable; ++i) {
    double t = q->t_lo + (q->t_b - q->t_lo) * i / kTable;
    q->table_t.push_back(t);
    q->table_x.push_back(q->x_of_t(t));
  }
  q->table_x.front() = q->total;
  q->table_x.back() = 0.0;

  PotentialProfile p;
  p.side_ = data.side;
  p.tail_rate_ = q->rate;
  p.tail_x_ = q->total;
  p.tail_phi_ = q->phi_tail;
  p.marginal_ = q->marginal;
  const double length =
      q->marginal ? q->total : q->total + options.tail_decades * std::log(10.0) / q->rate;
  const std::size_t n = options.grid_points;
  p.x_.resize(n);
  p.phi_.resize(n);
  p.dphi_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = length * static_cast<double>(i) / (n - 1.0);
    p.x_[i] = x;
    p.phi_[i] = q->phi(x);
    p.dphi_[i] = q->dphi(x);
  }
  p.phi_[0] = phi_b;
  p.exact_ = std::move(q);
  return p;
}

}  // namespace sheath

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sheath {

struct QuadratureSettings {
  double rel_tol = 1e-13;
  unsigned max_intervals = 400;
};

namespace quad {

struct Panel {
  double a, b, value, error, l1;
};

namespace detail {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
using GL = boost::math::quadrature::gauss<double, 15>;

// Gauss weight paired with Kronrod abscissa i (Gauss nodes sit at even indices).
inline double gauss_weight(std::size_t i) { return i % 2 == 0 ? GL::weights()[i / 2] : 0.0; }

// QUADPACK error model: |K - G| rescaled by the absolute deviation from the
// panel mean, floored at rounding level.
inline double scaled_error(double k, double g, double resasc, double resabs) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double err = std::abs(k - g);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return err;
}

// Sample order of one panel: node 0 at the centre, then +x_i, -x_i.
template <class F>
void sample_panel(F& f, double a, double b, double* out) {
  const auto& x = GK::abscissa();
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::size_t j = 0;
  out[j++] = f(c);
  for (std::size_t i = 1; i < x.size(); ++i) {
    out[j++] = f(c + h * x[i]);
    out[j++] = f(c - h * x[i]);
  }
}

// Panel sums from samples in sample_panel order; wk and wg are scaled weights.
inline Panel reduce_panel(double a, double b, const double* v, const double* wk, const double* wg,
                          std::size_t n) {
  double k = 0.0, g = 0.0, l1 = 0.0, wsum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    k += wk[j] * v[j];
    g += wg[j] * v[j];
    l1 += std::abs(wk[j] * v[j]);
    wsum += wk[j];
  }
  double mean = wsum != 0.0 ? k / wsum : 0.0;
  double resasc = 0.0;
  for (std::size_t j = 0; j < n; ++j) resasc += std::abs(wk[j]) * std::abs(v[j] - mean);
  return {a, b, k, scaled_error(k, g, resasc, l1), l1};
}

}  // namespace detail

// One Gauss-Kronrod 31-point panel with its error estimate.
template <class F>
Panel gk31(F& f, double a, double b) {
  constexpr std::size_t n = 31;
  const auto& wkr = detail::GK::weights();
  double h = 0.5 * (b - a);
  double v[n], wk[n], wg[n];
  detail::sample_panel(f, a, b, v);
  wk[0] = h * wkr[0];
  wg[0] = h * detail::gauss_weight(0);
  for (std::size_t i = 1, j = 1; i < wkr.size(); ++i, j += 2) {
    wk[j] = wk[j + 1] = h * wkr[i];
    wg[j] = wg[j + 1] = h * detail::gauss_weight(i);
  }
  return detail::reduce_panel(a, b, v, wk, wg, n);
}

// Globally adaptive Gauss-Kronrod (31 points) from the initial panels given by
// the sorted edges: the panel with the largest error estimate is bisected
// until the summed estimate drops below rel_tol * |I| or the rounding floor
// of the absolute integral. max_intervals counts bisections beyond the start.
template <class F>
std::vector<Panel> adapt(F&& f, const std::vector<double>& edges, const QuadratureSettings& q) {
  auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::vector<Panel> heap;
  double value = 0.0, error = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    heap.push_back(gk31(f, edges[i], edges[i + 1]));
    value += heap.back().value;
    error += heap.back().error;
    l1 += heap.back().l1;
  }
  std::make_heap(heap.begin(), heap.end(), by_error);
  const std::size_t limit = heap.size() + q.max_intervals;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (!heap.empty() && heap.size() < limit) {
    if (error <= std::max(q.rel_tol * std::abs(value), 50.0 * eps * l1)) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    Panel worst = heap.back();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    heap.pop_back();
    Panel left = gk31(f, worst.a, mid), right = gk31(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
  return heap;
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSettings& q = {}) {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  for (const Panel& p : adapt(f, {a, b}, q)) total += p.value;
  return total;
}

// Same, starting from panels split at every breakpoint strictly inside (a, b).
template <class F>
double integrate(F&& f, double a, double b, std::vector<double> breaks,
                 const QuadratureSettings& q = {}) {
  if (!(b > a)) return 0.0;
  std::erase_if(breaks, [&](double t) { return !(t > a && t < b); });
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (const Panel& p : adapt(f, breaks, q)) total += p.value;
  return total;
}

// Composite Gauss-Kronrod rule for a fixed weight g, sampled once on panels
// that resolve g. apply() integrates g * w for smooth w
// at the cost of the node sum and reports failure when the error estimate
// misses the tolerance.
class WeightedRule {
 public:
  static constexpr std::size_t kNodes = 31;

  WeightedRule() = default;

  template <class G>
  static WeightedRule build(G&& g, double a, double b, const QuadratureSettings& q) {
    WeightedRule r;
    if (!(b > a)) return r;
    std::vector<Panel> panels = adapt(g, {a, b}, q);
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    const auto& xk = detail::GK::abscissa();
    const auto& wkr = detail::GK::weights();
    for (const Panel& p : panels) {
      r.edges_.push_back(p.a);
      double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
      auto push = [&](double x, std::size_t i) {
        r.x_.push_back(x);
        r.g_.push_back(g(x));
        r.wk_.push_back(h * wkr[i]);
        r.wg_.push_back(h * detail::gauss_weight(i));
      };
      push(c, 0);
      for (std::size_t i = 1; i < xk.size(); ++i) {
        push(c + h * xk[i], i);
        push(c - h * xk[i], i);
      }
    }
    r.edges_.push_back(b);
    return r;
  }

  bool empty() const { return x_.empty(); }
  const std::vector<double>& nodes() const { return x_; }
  // Panel boundaries, ascending, including both ends.
  const std::vector<double>& edges() const { return edges_; }

  template <class W>
  bool apply(W&& w, double rel_tol, double& out) const {
    double total = 0.0, error = 0.0, l1 = 0.0;
    double v[kNodes];
    for (std::size_t p = 0; p < x_.size(); p += kNodes) {
      for (std::size_t j = 0; j < kNodes; ++j) v[j] = g_[p + j] * w(x_[p + j]);
      Panel pn = detail::reduce_panel(0.0, 0.0, v, &wk_[p], &wg_[p], kNodes);
      total += pn.value;
      error += pn.error;
      l1 += pn.l1;
    }
    out = total;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return std::isfinite(total) && error <= std::max(rel_tol * std::abs(total), 50.0 * eps * l1);
  }

 private:
  std::vector<double> x_, g_, wk_, wg_, edges_;
};

}  // namespace quad
}  // namespace sheath

#include "sheath/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sheath/error.hpp"

namespace sheath {
namespace {

std::vector<double> coefficients(const std::vector<double>& samples) {
  // samples at y_j = cos(pi j / n), j = 0..n
  const int n = static_cast<int>(samples.size()) - 1;
  std::vector<double> c(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * samples[j] * std::cos(std::numbers::pi * j * k / n);
    }
    c[k] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return c;
}

std::vector<double> antiderivative(const std::vector<double>& c, double half_width) {
  const std::size_t n = c.size() - 1;
  auto at = [&](std::size_t k) { return k <= n ? c[k] : 0.0; };
  std::vector<double> ci(n + 2, 0.0);
  ci[1] = at(0) - 0.5 * at(2);
  for (std::size_t k = 2; k <= n + 1; ++k) ci[k] = (at(k - 1) - at(k + 1)) / (2.0 * k);
  double at_minus_one = 0.0;
  for (std::size_t k = 1; k < ci.size(); ++k) at_minus_one += (k % 2 ? -ci[k] : ci[k]);
  ci[0] = -at_minus_one;
  for (double& v : ci) v *= half_width;
  return ci;
}

}  // namespace

double PiecewiseChebyshev::clenshaw(const std::vector<double>& c, double y) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    double b0 = 2.0 * y * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + c[0];
}

PiecewiseChebyshev PiecewiseChebyshev::fit(const std::function<double(double)>& f, double a,
                                           double b, const Options& options) {
  if (!(b > a)) fail(ErrorCode::kInvalidInput, "chebyshev fit needs a < b");
  const int n = options.degree;

  PiecewiseChebyshev out;
  out.a_ = a;
  out.b_ = b;

  struct Pending {
    double a, b;
  };
  std::vector<Pending> stack{{a, b}};
  std::vector<Panel> done;
  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    std::vector<double> samples(n + 1);
    double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
    for (int j = 0; j <= n; ++j) samples[j] = f(mid + half * std::cos(std::numbers::pi * j / n));
    auto c = coefficients(samples);
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    double tail = std::max({std::abs(c[n]), std::abs(c[n - 1]), std::abs(c[n - 2])});
    bool converged = tail <= options.tol * scale || scale == 0.0;
    bool can_split = (p.b - p.a) > options.min_width &&
                     done.size() + stack.size() + 2 <= options.max_panels;
    if (!std::isfinite(scale)) fail(ErrorCode::kDomain, "non-finite value in chebyshev fit");
    if (converged || !can_split) {
      Panel panel;
      panel.a = p.a;
      panel.b = p.b;
      panel.ci = antiderivative(c, half);
      panel.c = std::move(c);
      done.push_back(std::move(panel));
    } else {
      // right half first so the left half is processed next
      stack.push_back({mid, p.b});
      stack.push_back({p.a, mid});
    }
  }
  std::sort(done.begin(), done.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  out.panels_ = std::move(done);
  double run = 0.0;
  for (const auto& panel : out.panels_) {
    run += clenshaw(panel.ci, 1.0);
    out.cumulative_.push_back(run);
  }
  return out;
}

std::size_t PiecewiseChebyshev::locate(double t) const {
  auto it = std::upper_bound(panels_.begin(), panels_.end(), t,
                             [](double v, const Panel& p) { return v < p.b; });
  if (it == panels_.end()) return panels_.size() - 1;
  return static_cast<std::size_t>(it - panels_.begin());
}

double PiecewiseChebyshev::operator()(double t) const {
  const Panel& p = panels_[locate(t)];
  double y = std::clamp((2.0 * t - p.a - p.b) / (p.b - p.a), -1.0, 1.0);
  return clenshaw(p.c, y);
}

double PiecewiseChebyshev::integral(double t) const {
  std::size_t i = locate(t);
  const Panel& p = panels_[i];
  double y = std::clamp((2.0 * t - p.a - p.b) / (p.b - p.a), -1.0, 1.0);
  double before = i == 0 ? 0.0 : cumulative_[i - 1];
  return before + clenshaw(p.ci, y);
}

}  // namespace sheath

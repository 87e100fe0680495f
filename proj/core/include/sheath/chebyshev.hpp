#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sheath {

// Piecewise Chebyshev interpolant with an exact running antiderivative.
// Panels are bisected until the trailing coefficients fall below tol.
class PiecewiseChebyshev {
 public:
  struct Options {
    int degree = 32;
    double tol = 1e-13;
    std::size_t max_panels = 4096;
    double min_width = 1e-10;
  };

  PiecewiseChebyshev() = default;

  static PiecewiseChebyshev fit(const std::function<double(double)>& f, double a, double b,
                                const Options& options);
  static PiecewiseChebyshev fit(const std::function<double(double)>& f, double a, double b) {
    return fit(f, a, b, Options{});
  }

  double lower() const { return a_; }
  double upper() const { return b_; }
  std::size_t panels() const { return panels_.size(); }

  double operator()(double t) const;
  // Integral of the interpolant from lower() to t.
  double integral(double t) const;
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  struct Panel {
    double a = 0.0, b = 0.0;
    std::vector<double> c;  // series coefficients
    std::vector<double> ci;  // antiderivative coefficients, zero at a
  };

  std::size_t locate(double t) const;
  static double clenshaw(const std::vector<double>& c, double y);

  double a_ = 0.0, b_ = 0.0;
  std::vector<Panel> panels_;
  std::vector<double> cumulative_;  // integral up to the end of each panel
};

}  // namespace sheath

#include "sheath/electrons.hpp"

#include <cmath>
#include <string>

#include "sheath/error.hpp"

namespace sheath {

ElectronModel ElectronModel::boltzmann() { return ElectronModel{}; }

ElectronModel ElectronModel::polynomial(std::vector<double> coefficients) {
  if (coefficients.size() < 2)
    fail(ErrorCode::kInvalidInput, "polynomial electrons need at least a_0 and a_1");
  for (double c : coefficients)
    if (!std::isfinite(c)) fail(ErrorCode::kInvalidInput, "non-finite electron coefficient");
  if (std::abs(coefficients[0] - 1.0) > 1e-12)
    fail(ErrorCode::kInvalidInput, "n_e(0) must equal 1");
  if (std::abs(coefficients[1] + 1.0) > 1e-12)
    fail(ErrorCode::kInvalidInput, "n_e'(0) must equal -1");
  coefficients[0] = 1.0;
  coefficients[1] = -1.0;
  while (coefficients.size() > 2 && coefficients.back() == 0.0) coefficients.pop_back();
  ElectronModel m;
  m.kind_ = Kind::kPolynomial;
  m.coefficients_ = std::move(coefficients);
  return m;
}

double ElectronModel::density(double phi) const {
  if (kind_ == Kind::kBoltzmann) return std::exp(-phi);
  double v = 0.0;
  for (std::size_t k = coefficients_.size(); k-- > 0;) v = v * phi + coefficients_[k];
  return v;
}

double ElectronModel::derivative(double phi) const {
  if (kind_ == Kind::kBoltzmann) return -std::exp(-phi);
  double v = 0.0;
  for (std::size_t k = coefficients_.size(); k-- > 1;) v = v * phi + k * coefficients_[k];
  return v;
}

double ElectronModel::second_derivative(double phi) const {
  if (kind_ == Kind::kBoltzmann) return std::exp(-phi);
  double v = 0.0;
  for (std::size_t k = coefficients_.size(); k-- > 2;) v = v * phi + k * (k - 1.0) * coefficients_[k];
  return v;
}

double ElectronModel::integral(double phi) const {
  if (kind_ == Kind::kBoltzmann) return -std::expm1(-phi);
  double v = 0.0;
  for (std::size_t k = coefficients_.size(); k-- > 0;) v = v * phi + coefficients_[k] / (k + 1.0);
  return v * phi;
}

double ElectronModel::excess(double phi) const {
  if (kind_ == Kind::kPolynomial) {
    double v = 0.0;
    for (std::size_t k = coefficients_.size(); k-- > 2;) v = v * phi + coefficients_[k] / (k + 1.0);
    return 0.5 - v * phi;
  }
  if (std::abs(phi) < 0.1) {
    // sum_{k>=2} (-phi)^(k-2) / k!
    double term = 0.5, sum = 0.0;
    for (int k = 2; k < 24; ++k) {
      sum += term;
      term *= -phi / (k + 1);
    }
    return sum;
  }
  return (phi + std::expm1(-phi)) / (phi * phi);
}

void ElectronModel::require_positive(double lo, double hi) const {
  if (kind_ == Kind::kBoltzmann) return;
  constexpr int kSamples = 2001;
  for (int i = 0; i < kSamples; ++i) {
    double phi = lo + (hi - lo) * i / (kSamples - 1);
    if (!(density(phi) > 0.0))
      fail(ErrorCode::kDomain, "electron density not positive at phi = " + std::to_string(phi));
  }
}

}  // namespace sheath

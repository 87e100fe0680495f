#pragma once

#include <vector>

namespace sheath {

// Electron density n_e(phi) with n_e(0) = 1, n_e'(0) = -1: either the Boltzmann
// relation exp(-phi) or a polynomial sum a_k phi^k.
class ElectronModel {
 public:
  enum class Kind { kBoltzmann, kPolynomial };

  static ElectronModel boltzmann();
  // a_0 and a_1 within 1e-12 of 1 and -1 are snapped to the exact values.
  static ElectronModel polynomial(std::vector<double> coefficients);

  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  double density(double phi) const;
  double derivative(double phi) const;
  double second_derivative(double phi) const;
  // int_0^phi n_e
  double integral(double phi) const;
  // (phi - int_0^phi n_e) / phi^2, continuous at phi = 0 where it equals 1/2.
  double excess(double phi) const;

  // Throws DOMAIN if n_e <= 0 somewhere on [lo, hi].
  void require_positive(double lo, double hi) const;

 private:
  Kind kind_ = Kind::kBoltzmann;
  std::vector<double> coefficients_;
};

}  // namespace sheath

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "sheath/dists.hpp"
#include "sheath/electrons.hpp"
#include "sheath/profile.hpp"
#include "sheath/sagdeev.hpp"
#include "sheath/sheath_solver.hpp"

namespace sheath {

struct EulerPoissonModel {
  double u_inf = 2.0;
};
struct GeneralizedModel {
  double m_b = 0.0;
  double m_inf = 1.0;
  double v_b = 2.0;
  double v_inf = 2.0;
  double alpha = 0.0;
};
using HydroModel = std::variant<EulerPoissonModel, GeneralizedModel>;

// Cold beams: density sum_j m_j v_j / sqrt(v_j^2 + 2 phi).
class HydroPseudopotential final : public Pseudopotential {
 public:
  struct Beam {
    double mass;
    double speed;
  };
  HydroPseudopotential(std::vector<Beam> beams, ElectronModel ne);

  double value(double phi) const override;
  double reduced(double phi) const override;
  double force(double phi) const override;
  double ion_density(double phi) const override;
  std::optional<double> exact_curvature() const override;
  double domain_limit(Side side) const override;
  const ElectronModel& electrons() const override { return ne_; }

 private:
  std::vector<Beam> beams_;
  ElectronModel ne_;
  double total_mass_ = 0.0;
};

struct HydroSolution {
  HydroModel model;
  PotentialProfile profile;
  std::vector<double> rho;
  std::vector<double> u;
  double flux = 0.0;  // rho u, constant
  std::shared_ptr<const SagdeevData> sagdeev;

  const std::vector<double>& x() const { return profile.x(); }
  const std::vector<double>& phi() const { return profile.phi(); }
  double phi_at(double x) const { return profile.evaluate(x); }
  double rho_at(double x) const;
  double u_at(double x) const { return flux / rho_at(x); }
};

double hydro_density(const HydroModel& model, double phi);

HydroSolution solve_euler_poisson(double u_inf, double phi_b, const ElectronModel& ne,
                                  const SolveOptions& options = {});
HydroSolution solve_generalized(const GeneralizedModel& params, double phi_b,
                                const ElectronModel& ne, const SolveOptions& options = {});

struct StudyOptions {
  SolveOptions solve;
  Velocity skew{0.0, 0.0, 0.0};
  bool concurrent = true;
};

struct StudyProfile {
  std::vector<double> x, phi, rho, flux;
  std::vector<double> phi_hydro, rho_hydro;
};

struct ConvergenceStudy {
  std::vector<double> eps;
  std::vector<double> err_rho;
  std::vector<double> err_flux;
  std::vector<double> err_phi;
  std::optional<double> slope_rho, slope_flux, slope_phi, slope_total;
  double c0_estimate = 0.0;  // max over eps of (sum of errors) / eps
  bool outside_theorem = false;  // absorbing family with non-Boltzmann electrons
  std::vector<StudyProfile> profiles;  // kinetic and limit curves per eps
};

// For a general family the phi_b stored in the family is replaced by phi_b.
ConvergenceStudy delta_mass_study(const FamilyKind& scenario, double phi_b,
                                  const std::vector<double>& eps_list, const ElectronModel& ne,
                                  const StudyOptions& options = {});

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sheath

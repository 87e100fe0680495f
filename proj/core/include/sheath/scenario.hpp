#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sheath/dists.hpp"
#include "sheath/electrons.hpp"
#include "sheath/kernels.hpp"
#include "sheath/sheath_solver.hpp"

namespace sheath {

struct DistributionBlock {
  Cutoff cutoff = Cutoff::kNone;
  double energy_shift = 0.0;  // default for bumps without their own shift
  std::vector<Bump> bumps;

  bool operator==(const DistributionBlock&) const = default;
};

enum class FamilyType { kNone, kAbsorbing, kGeneral };

struct FamilyBlock {
  FamilyType type = FamilyType::kNone;
  double u_inf = 2.0;
  double eps = 0.01;
  double m_b = 0.0;
  double m_inf = 1.0;
  double v_b = 2.0;
  double v_inf = 2.0;
  Velocity skew{0.0, 0.0, 0.0};

  bool operator==(const FamilyBlock&) const = default;
};

struct SolverBlock {
  double tolerance = 1e-6;
  double phi_max = 10.0;
  std::size_t grid = 10000;
  double tail_ratio = 1e-6;
  double quad_tol = 1e-13;
  double holder_r = 3.0;

  bool operator==(const SolverBlock&) const = default;
};

// A parsed scenario file. See docs/scenario_format.md for the grammar.
struct Scenario {
  ElectronModel::Kind electrons = ElectronModel::Kind::kBoltzmann;
  std::vector<double> electron_coefficients;
  BoundaryConfig boundary;
  DistributionBlock f_inf;
  DistributionBlock f_b;
  FamilyBlock family;
  SolverBlock solver;
  std::vector<double> sweep_eps;
  std::string output_dir = "out";

  bool operator==(const Scenario&) const = default;
};

// Throws SheathError(CONFIG) with the offending line on any problem.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
// Canonical text: every key, fixed order, 17 significant digits.
std::string format_scenario(const Scenario& s);
// FNV-1a 64 of the canonical text.
std::uint64_t scenario_hash(const Scenario& s);
std::string scenario_hash_hex(const Scenario& s);

ElectronModel make_electrons(const Scenario& s);
// Resolves a declared family into distributions, otherwise uses the bump blocks.
KernelContext make_context(const Scenario& s);
SolveOptions make_solve_options(const Scenario& s);
FamilyKind make_family(const Scenario& s);

}  // namespace sheath

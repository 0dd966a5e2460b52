#pragma once

#include "qhe/ensemble.hpp"
#include "qhe/numerics.hpp"
#include "qhe/physics.hpp"

namespace qhe {

inline constexpr double kEntropyMatchTolerance = 1e-11;       // k_B
inline constexpr double kCombinedConditionTolerance = 1e-9;
inline constexpr double kCarnotEfficiencyTolerance = 1e-9;
inline constexpr double kHeatEntropyTolerance = 1e-10;        // relative
inline constexpr double kCarnotFirstLawTolerance = 1e-9;      // relative to |Q_12|

/// Heat exchanged along an isotherm from field a to field b:
/// E(b) - E(a) + beta^-1 ln[Z(b)/Z(a)], which is T * [S(b) - S(a)].
double isothermal_heat(FieldPoint a, FieldPoint b, double beta, const PhysicalParams& params);

/// Field at which S(., beta_to) equals S(known, beta_from). The scan grid is
/// {0} followed by `solver.bracket_grid`; one sign change is refined, none
/// raises NoSolutionError, several raise AmbiguityError.
FieldPoint entropy_match(FieldPoint known, double beta_from, double beta_to, const PhysicalParams& params,
                         const numerics::SolverSettings& solver = {});

/// Work done by the system along an iso-entropic leg: E(a, beta_a) - E(b, beta_b).
double adiabatic_work(FieldPoint a, double beta_a, FieldPoint b, double beta_b, const PhysicalParams& params);

/// Inverse temperature at which the equilibrium entropy at `field` equals `entropy`.
double isentrope_beta(FieldPoint field, double entropy, const PhysicalParams& params);

struct CarnotSpec {
  FieldPoint b1;
  FieldPoint b2;
  double T_hot = 1.0;   // in units of energy / k_B
  double T_cold = 0.5;
  PhysicalParams params{};
  numerics::SolverSettings solver{};

  void validate() const;
};

struct CarnotResiduals {
  double entropy_match_23 = 0.0;   // |S(B3, beta_C) - S(B2, beta_H)|
  double entropy_match_41 = 0.0;   // |S(B4, beta_C) - S(B1, beta_H)|
  double combined_condition = 0.0; // both entropy matches folded into one equation
  double first_law = 0.0;          // |W_net - (Q_12 + Q_34)| / |Q_12|
  double net_work = 0.0;           // |W_net - eta * Q_12| / |Q_12|
  double heat_entropy_12 = 0.0;    // |Q_12 - T_H dS| / |Q_12|
  double heat_entropy_34 = 0.0;
  double efficiency = 0.0;         // |eta_numeric - eta_formula|

  bool within_tolerance() const;
};

/// Works are those done by the system. Isothermal works follow W = Q - dE.
struct CarnotReport {
  FieldPoint b1, b2, b3, b4;
  double T_hot = 0.0;
  double T_cold = 0.0;
  double Q_12 = 0.0;
  double W_12 = 0.0;
  double W_23 = 0.0;
  double Q_34 = 0.0;
  double W_34 = 0.0;
  double W_41 = 0.0;
  double S_1 = 0.0;
  double S_2 = 0.0;
  double S_3 = 0.0;
  double S_4 = 0.0;
  double eta_numeric = 0.0;  // 1 - |Q_34 / Q_12|
  double eta_formula = 0.0;  // 1 - T_C / T_H
  CarnotResiduals residuals;
};

CarnotReport run_carnot_cycle(const CarnotSpec& spec);

}  // namespace qhe

#pragma once

#include "qhe/numerics.hpp"
#include "qhe/physics.hpp"

namespace qhe {

/// Effective two-level working substance. Both levels must share the
/// azimuthal quantum number; the cycle itself uses (0,0) and (1,0).
class TwoLevelSystem {
 public:
  TwoLevelSystem(LevelIndex lower, LevelIndex upper, PhysicalParams params = {});

  /// Ground state (0,0) with the lowest m = 0 excitation (1,0).
  static TwoLevelSystem ground_pair(PhysicalParams params = {});

  const LevelIndex& lower() const { return lower_; }
  const LevelIndex& upper() const { return upper_; }
  const PhysicalParams& params() const { return params_; }

  double energy_lower(FieldPoint f) const;
  double energy_upper(FieldPoint f) const;
  /// E_lower - E_upper (negative).
  double gap(FieldPoint f) const;
  bool both_m_zero() const { return lower_.m == 0 && upper_.m == 0; }

 private:
  LevelIndex lower_;
  LevelIndex upper_;
  PhysicalParams params_;
};

struct Occupation {
  double p1;  // lower level
  double p2;  // upper level
};

/// Occupations along the energy-conserving trajectory through (start, p1_start).
/// Throws TrajectoryRangeError when `field` lies beyond maximal expansion/compression.
Occupation iso_energetic_occupation(const TwoLevelSystem& sys, FieldPoint start, double p1_start,
                                    FieldPoint field);

/// d p1/db along the same trajectory.
double iso_energetic_occupation_slope(const TwoLevelSystem& sys, FieldPoint start, double p1_start,
                                      FieldPoint field);

/// Maximal-expansion ratio l_B2 / l_B1; needs n_phi1 > 2*sqrt(2).
double alpha1(double n_phi1);

/// Maximal-compression ratio l_B4 / l_B3 (< 1).
double alpha3(double n_phi1, double alpha);

/// Closed-form heat of an iso-energetic leg between two m = 0 levels:
/// Q = E_avg(start) * ln[gap(start) / gap(end)], i.e. the value of
/// sum_n int E_n dp_n. Positive when the system absorbs energy.
double heat_leg_closed_form(const TwoLevelSystem& sys, FieldPoint start, double p1_start, FieldPoint end);

/// The same heat by adaptive quadrature of sum_n E_n(b) dp_n/db.
double heat_leg_quadrature(const TwoLevelSystem& sys, FieldPoint start, double p1_start, FieldPoint end,
                           const numerics::QuadratureSettings& settings = {});

/// Work along an iso-energetic leg, by quadrature of sum_n p_n dE_n/db. Equals -Q.
double work_leg_quadrature(const TwoLevelSystem& sys, FieldPoint start, double p1_start, FieldPoint end,
                           const numerics::QuadratureSettings& settings = {});

/// Work at fixed occupations: sum_n p_n [E_n(end) - E_n(start)]. Negative on expansion.
double work_isoentropic(const TwoLevelSystem& sys, Occupation fixed, FieldPoint start, FieldPoint end);

struct IsoCycleSpec {
  double n_phi1 = 0.0;
  double alpha = 1.0;
  PhysicalParams params{};

  void validate() const;
};

struct IsoCycleResiduals {
  /// |sum W + sum Q| / |Q_12|, with the iso-energetic works taken from quadrature.
  double first_law = 0.0;
  /// |W_23 + W_41| / |Q_12|.
  double adiabatic_cancellation = 0.0;
  /// Largest relative energy drift over sampled interior points of both iso-energetic legs.
  double iso_energy_drift = 0.0;
  /// Largest relative mismatch between closed-form and quadrature heats.
  double heat_oracle = 0.0;
};

/// Energies in units of the params' energy unit (hbar*omega_d when dimensionless).
/// Heats are signed per sum_n int E_n dp_n: Q_12 > 0 (absorbed), Q_34 < 0 (released).
struct IsoCycleReport {
  double n_phi1 = 0.0;
  double alpha = 0.0;
  double alpha1 = 0.0;
  double alpha3 = 0.0;
  FieldPoint b1, b2, b3, b4;
  double Q_12 = 0.0;
  double W_12 = 0.0;
  double W_23 = 0.0;
  double Q_34 = 0.0;
  double W_34 = 0.0;
  double W_41 = 0.0;
  double Q_12_quadrature = 0.0;
  double Q_34_quadrature = 0.0;
  double eta = 0.0;
  IsoCycleResiduals residuals;
};

inline constexpr int kIsoEnergySamples = 50;

IsoCycleReport run_iso_cycle(const IsoCycleSpec& spec);

/// Closed-form efficiency in terms of Theta(x) = sqrt(1 + N^2/x^4).
double efficiency(double n_phi1, double alpha);

/// 1 - 1/alpha^2, the large-field limit.
double asymptotic_efficiency(double alpha);

/// Smallest initial field admitting the cycle: N_Phi1 = 2*sqrt(2), i.e.
/// B = 4*sqrt(2)*hbar/(e l_d^2). Returned in the params' field unit.
double minimal_field(const PhysicalParams& params);
FieldPoint minimal_field_point();

}  // namespace qhe

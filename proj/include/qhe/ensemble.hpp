#pragma once

#include <map>
#include <utility>

#include "qhe/physics.hpp"

namespace qhe {

/// Probability distribution over Landau levels at a fixed field.
///
/// A truncated distribution (e.g. a Boltzmann state cut at a tail bound)
/// declares its discarded mass explicitly; the invariant checked on
/// construction is |sum(p) + omitted_mass - 1| <= 1e-12 with all p >= 0.
class MixedState {
 public:
  using Occupations = std::map<LevelIndex, double>;

  static constexpr double kNormalizationTolerance = 1e-12;

  MixedState(FieldPoint field, Occupations occupations, double omitted_mass = 0.0);

  static MixedState pure(FieldPoint field, LevelIndex level);

  FieldPoint field() const { return field_; }
  const Occupations& occupations() const { return occupations_; }
  double omitted_mass() const { return omitted_mass_; }
  double probability(const LevelIndex& level) const;
  std::size_t size() const { return occupations_.size(); }

 private:
  FieldPoint field_;
  Occupations occupations_;
  double omitted_mass_;
};

/// von Neumann entropy in units of k_B, with 0 ln 0 = 0.
double entropy(const MixedState& state);

double average_energy(const MixedState& state, const PhysicalParams& params);

/// Quantum numbers of the two independent oscillator ladders.
struct LadderIndex {
  int n_plus = 0;
  int n_minus = 0;

  constexpr auto operator<=>(const LadderIndex&) const = default;
};

LadderIndex to_ladder(const LevelIndex& level);
LevelIndex from_ladder(const LadderIndex& ladder);

/// hbar*omega*(n + 1/2) for one ladder.
double ladder_energy(int n, double omega, const PhysicalParams& params);

/// Z = Z+ Z-, carried in log form. ln Z is finite for beta*hbar*omega up to ~1e300.
struct PartitionFunction {
  double log_plus;
  double log_minus;

  double log_value() const { return log_plus + log_minus; }
  double value() const;
};

PartitionFunction partition_function(FieldPoint field, double beta, const PhysicalParams& params);
double log_partition_function(FieldPoint field, double beta, const PhysicalParams& params);

double thermal_energy(FieldPoint field, double beta, const PhysicalParams& params);

/// S/k_B = beta*E + ln Z.
double thermal_entropy(FieldPoint field, double beta, const PhysicalParams& params);

/// Magnetization in units of mu_B = e*hbar/(2 m*), from beta^-1 d(ln Z)/dB:
/// M/mu_B = -(omega_+/(2 Omega)) coth(x_+) + (omega_-/(2 Omega)) coth(x_-).
double magnetization(FieldPoint field, double beta, const PhysicalParams& params);

inline constexpr double kDefaultTailMass = 1e-12;
inline constexpr int kLevelCap = 10000;

/// Boltzmann occupations enumerated in increasing energy until the omitted
/// probability mass falls below `truncation`.
MixedState boltzmann_state(FieldPoint field, double beta, const PhysicalParams& params,
                           double truncation = kDefaultTailMass);

/// Thermal equilibrium at (field, beta), with derived quantities evaluated on demand.
class ThermalState {
 public:
  ThermalState(FieldPoint field, double beta, PhysicalParams params = {});

  FieldPoint field() const { return field_; }
  double beta() const { return beta_; }
  double temperature() const { return 1.0 / (params_.k_B * beta_); }
  const PhysicalParams& params() const { return params_; }

  double partition_function() const;
  double log_partition_function() const;
  double energy() const;
  double entropy() const;
  double magnetization() const;
  double occupation(const LevelIndex& level) const;
  MixedState to_mixed(double truncation = kDefaultTailMass) const;

 private:
  FieldPoint field_;
  double beta_;
  PhysicalParams params_;
};

}  // namespace qhe

#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace qhe {

/// CODATA 2018 exact/recommended values.
namespace codata {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double boltzmann = 1.380649e-23;        // J/K
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
}  // namespace codata

enum class UnitMode { dimensionless, si };

std::string to_string(UnitMode mode);

/// Effective mass, dot frequency and fundamental constants. In dimensionless
/// mode every entry is 1, so energies are in hbar*omega_d and fields in b = omega_B/omega_d.
struct PhysicalParams {
  UnitMode unit_mode = UnitMode::dimensionless;
  double m_star = 1.0;
  double omega_d = 1.0;
  double hbar = 1.0;
  double e_charge = 1.0;
  double k_B = 1.0;

  static PhysicalParams dimensionless();
  /// SI parameters for a dot of geometric radius l_d (metres); omega_d = hbar/(m* l_d^2).
  static PhysicalParams si(double m_star_kg, double l_d_m);
  /// GaAs: m* = 0.067 m_e.
  static PhysicalParams gaas(double l_d_m = 70e-9);

  void validate() const;

  double energy_unit() const { return hbar * omega_d; }
  /// Geometric confinement length l_d = sqrt(hbar/(m* omega_d)).
  double confinement_length() const;
  /// Field corresponding to b = 1, i.e. m* omega_d / e.
  double field_unit() const { return m_star * omega_d / e_charge; }
  double bohr_magneton() const { return e_charge * hbar / (2.0 * m_star); }
};

inline constexpr double kGaAsMassRatio = 0.067;

/// Radial and azimuthal quantum numbers of a Landau level.
struct LevelIndex {
  int n_rho = 0;
  int m = 0;

  constexpr auto operator<=>(const LevelIndex&) const = default;
};

void validate(const LevelIndex& level);
std::string to_string(const LevelIndex& level);

/// Magnetic field carried as b = omega_B / omega_d.
class FieldPoint {
 public:
  constexpr FieldPoint() = default;
  explicit FieldPoint(double b);

  static FieldPoint from_flux_quanta(double n_phi) { return FieldPoint(2.0 * n_phi); }
  /// B given in the field unit of `params` (tesla in SI mode).
  static FieldPoint from_field(double B, const PhysicalParams& params);

  double b() const { return b_; }
  double flux_quanta() const { return 0.5 * b_; }
  double field(const PhysicalParams& params) const { return b_ * params.field_unit(); }

  friend bool operator==(const FieldPoint&, const FieldPoint&) = default;

 private:
  double b_ = 0.0;
};

struct FrequencyPair {
  double plus;
  double minus;
};

// Reduced kernels (omega_d = hbar = 1) shared by the other modules.
namespace reduced {
double effective_frequency(double b);
/// d(Omega)/db.
double effective_frequency_slope(double b);
double energy(const LevelIndex& level, double b);
double energy_slope(const LevelIndex& level, double b);
FrequencyPair omega_pm(double b);
}  // namespace reduced

double cyclotron_frequency(double B, const PhysicalParams& params);
double effective_frequency(double omega_B, const PhysicalParams& params);
double energy_level(const LevelIndex& level, FieldPoint field, const PhysicalParams& params);
FrequencyPair omega_pm(FieldPoint field, const PhysicalParams& params);

/// Effective Landau radius sqrt(hbar/(m* Omega)).
double landau_radius(FieldPoint field, const PhysicalParams& params);
/// Same radius from the two confinement lengths: (l_d^-4 + l_B^-4/4)^(-1/4).
double landau_radius_from_lengths(double l_d, double l_B);
/// Magnetic length sqrt(hbar/(m* omega_B)); infinite at zero field.
double magnetic_length(FieldPoint field, const PhysicalParams& params);

/// N_Phi = omega_B / (2 omega_d) = l_d^2 / (2 l_B^2).
double flux_quanta(FieldPoint field);

struct LevelCrossing {
  LevelIndex first;
  LevelIndex second;
  double b_star;
};

struct CrossingSearch {
  double b_lo = 0.0;
  double b_hi = 10.0;
  double step = 0.01;
  double tolerance = 1e-12;
};

/// Every field in [b_lo, b_hi] where two of `levels` are degenerate, sorted by (b, first, second).
std::vector<LevelCrossing> find_level_crossings(std::span<const LevelIndex> levels,
                                                const CrossingSearch& search = {});

/// All levels with n_rho <= max_n_rho and |m| <= max_abs_m, ordered by (n_rho, m).
std::vector<LevelIndex> level_set(int max_n_rho, int max_abs_m);

}  // namespace qhe

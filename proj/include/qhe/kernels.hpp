#pragma once

// Row-parallel sweeps. `serial` is the reference implementation; `omp`
// computes the same rows with OpenMP and must produce bitwise-identical output.

#include <span>
#include <string>
#include <vector>

#include "qhe/carnot.hpp"
#include "qhe/isoenergetic.hpp"
#include "qhe/physics.hpp"

namespace qhe::kernels {

struct SpectrumRow {
  double b;
  LevelIndex level;
  double energy;  // hbar*omega_d

  friend bool operator==(const SpectrumRow&, const SpectrumRow&) = default;
};

struct IsoSweepRow {
  double n_phi1 = 0.0;
  double alpha = 0.0;
  double eta = 0.0;
  double eta_asymptotic = 0.0;
  double first_law_residual = 0.0;
  std::string error;  // empty when the row succeeded

  bool ok() const { return error.empty(); }
  friend bool operator==(const IsoSweepRow&, const IsoSweepRow&) = default;
};

struct MagnetizationRow {
  double b;
  double T;
  double M;  // mu_B

  friend bool operator==(const MagnetizationRow&, const MagnetizationRow&) = default;
};

struct CarnotRow {
  CarnotSpec spec;
  CarnotReport report;
  std::string error;

  bool ok() const { return error.empty(); }
};

/// Evenly spaced grid with `count` points; count == 1 yields {lo}.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Number of threads the OpenMP kernels will use (1 without OpenMP).
int max_threads();
void set_threads(int n);

namespace serial {
/// Rows sorted by (b, energy, level).
std::vector<SpectrumRow> spectrum(std::span<const LevelIndex> levels, std::span<const double> b_grid);
/// Rows ordered by (n_phi1 index, alpha index).
std::vector<IsoSweepRow> iso_sweep(std::span<const double> n_phi1, std::span<const double> alphas);
/// Rows ordered by (T index, b index); T in energy/k_B units of `params`.
std::vector<MagnetizationRow> magnetization_grid(std::span<const double> b_grid,
                                                 std::span<const double> temperatures,
                                                 const PhysicalParams& params);
std::vector<CarnotRow> carnot_sweep(std::span<const CarnotSpec> specs);
}  // namespace serial

namespace omp {
std::vector<SpectrumRow> spectrum(std::span<const LevelIndex> levels, std::span<const double> b_grid);
std::vector<IsoSweepRow> iso_sweep(std::span<const double> n_phi1, std::span<const double> alphas);
std::vector<MagnetizationRow> magnetization_grid(std::span<const double> b_grid,
                                                 std::span<const double> temperatures,
                                                 const PhysicalParams& params);
std::vector<CarnotRow> carnot_sweep(std::span<const CarnotSpec> specs);
}  // namespace omp

}  // namespace qhe::kernels

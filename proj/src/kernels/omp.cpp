#include <cstdint>
#include <exception>
#include <string>

#include "rows.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qhe::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace omp {

// Each iteration writes only its own pre-sized slot, so row order is fixed
// regardless of scheduling.

std::vector<SpectrumRow> spectrum(std::span<const LevelIndex> levels, std::span<const double> b_grid) {
  for (const auto& l : levels) validate(l);
  for (double b : b_grid) static_cast<void>(FieldPoint(b));
  const auto nl = static_cast<std::int64_t>(levels.size());
  const auto total = nl * static_cast<std::int64_t>(b_grid.size());
  std::vector<SpectrumRow> rows(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    rows[static_cast<std::size_t>(i)] = detail::spectrum_row(b_grid[static_cast<std::size_t>(i / nl)],
                                                             levels[static_cast<std::size_t>(i % nl)]);
  }
  detail::order_spectrum(rows, levels.size());
  return rows;
}

std::vector<IsoSweepRow> iso_sweep(std::span<const double> n_phi1, std::span<const double> alphas) {
  const auto na = static_cast<std::int64_t>(alphas.size());
  const auto total = static_cast<std::int64_t>(n_phi1.size()) * na;
  std::vector<IsoSweepRow> rows(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < total; ++i) {
    rows[static_cast<std::size_t>(i)] = detail::iso_row(n_phi1[static_cast<std::size_t>(i / na)],
                                                        alphas[static_cast<std::size_t>(i % na)]);
  }
  return rows;
}

std::vector<MagnetizationRow> magnetization_grid(std::span<const double> b_grid,
                                                 std::span<const double> temperatures,
                                                 const PhysicalParams& params) {
  const auto nb = static_cast<std::int64_t>(b_grid.size());
  const auto total = static_cast<std::int64_t>(temperatures.size()) * nb;
  std::vector<MagnetizationRow> rows(static_cast<std::size_t>(total));
  std::string first_error;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = detail::magnetization_row(
          b_grid[static_cast<std::size_t>(i % nb)], temperatures[static_cast<std::size_t>(i / nb)], params);
    } catch (const std::exception& e) {
#pragma omp critical(qhe_magnetization_error)
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!first_error.empty()) throw DomainError(first_error);
  return rows;
}

std::vector<CarnotRow> carnot_sweep(std::span<const CarnotSpec> specs) {
  const auto total = static_cast<std::int64_t>(specs.size());
  std::vector<CarnotRow> rows(specs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < total; ++i) {
    rows[static_cast<std::size_t>(i)] = detail::carnot_row(specs[static_cast<std::size_t>(i)]);
  }
  return rows;
}

}  // namespace omp
}  // namespace qhe::kernels

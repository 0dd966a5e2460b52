#include "rows.hpp"

namespace qhe::kernels::serial {

std::vector<SpectrumRow> spectrum(std::span<const LevelIndex> levels, std::span<const double> b_grid) {
  for (const auto& l : levels) validate(l);
  std::vector<SpectrumRow> rows;
  rows.reserve(levels.size() * b_grid.size());
  for (double b : b_grid) {
    static_cast<void>(FieldPoint(b));
    for (const auto& level : levels) rows.push_back(detail::spectrum_row(b, level));
  }
  detail::order_spectrum(rows, levels.size());
  return rows;
}

std::vector<IsoSweepRow> iso_sweep(std::span<const double> n_phi1, std::span<const double> alphas) {
  std::vector<IsoSweepRow> rows;
  rows.reserve(n_phi1.size() * alphas.size());
  for (double n : n_phi1) {
    for (double a : alphas) rows.push_back(detail::iso_row(n, a));
  }
  return rows;
}

std::vector<MagnetizationRow> magnetization_grid(std::span<const double> b_grid,
                                                 std::span<const double> temperatures,
                                                 const PhysicalParams& params) {
  std::vector<MagnetizationRow> rows;
  rows.reserve(b_grid.size() * temperatures.size());
  for (double T : temperatures) {
    for (double b : b_grid) rows.push_back(detail::magnetization_row(b, T, params));
  }
  return rows;
}

std::vector<CarnotRow> carnot_sweep(std::span<const CarnotSpec> specs) {
  std::vector<CarnotRow> rows;
  rows.reserve(specs.size());
  for (const auto& s : specs) rows.push_back(detail::carnot_row(s));
  return rows;
}

}  // namespace qhe::kernels::serial

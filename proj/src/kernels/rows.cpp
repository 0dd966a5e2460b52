#include "rows.hpp"

#include <cmath>
#include <exception>

#include "qhe/ensemble.hpp"

namespace qhe::kernels {

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw DomainError("grid count must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid range must be finite");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

namespace detail {

IsoSweepRow iso_row(double n_phi1, double alpha) {
  IsoSweepRow row;
  row.n_phi1 = n_phi1;
  row.alpha = alpha;
  try {
    const auto report = run_iso_cycle({n_phi1, alpha, PhysicalParams::dimensionless()});
    row.eta = report.eta;
    row.eta_asymptotic = asymptotic_efficiency(alpha);
    row.first_law_residual = report.residuals.first_law;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

CarnotRow carnot_row(const CarnotSpec& spec) {
  CarnotRow row{spec, {}, {}};
  try {
    row.report = run_carnot_cycle(spec);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

MagnetizationRow magnetization_row(double b, double T, const PhysicalParams& params) {
  return {b, T, magnetization(FieldPoint(b), 1.0 / (params.k_B * T), params)};
}

SpectrumRow spectrum_row(double b, const LevelIndex& level) {
  return {b, level, reduced::energy(level, b)};
}

void order_spectrum(std::vector<SpectrumRow>& rows, std::size_t levels_per_block) {
  if (levels_per_block == 0) return;
  for (std::size_t start = 0; start < rows.size(); start += levels_per_block) {
    const auto first = rows.begin() + static_cast<std::ptrdiff_t>(start);
    std::sort(first, first + static_cast<std::ptrdiff_t>(levels_per_block),
              [](const SpectrumRow& x, const SpectrumRow& y) {
                if (x.energy != y.energy) return x.energy < y.energy;
                return x.level < y.level;
              });
  }
}

}  // namespace detail
}  // namespace qhe::kernels

#pragma once

// Per-row work shared by the serial and OpenMP kernels.

#include <algorithm>
#include <span>
#include <vector>

#include "qhe/kernels.hpp"

namespace qhe::kernels::detail {

IsoSweepRow iso_row(double n_phi1, double alpha);
CarnotRow carnot_row(const CarnotSpec& spec);
MagnetizationRow magnetization_row(double b, double T, const PhysicalParams& params);
SpectrumRow spectrum_row(double b, const LevelIndex& level);

/// Sort each b-block of a spectrum table by (energy, level).
void order_spectrum(std::vector<SpectrumRow>& rows, std::size_t levels_per_block);

}  // namespace qhe::kernels::detail

#include "qhe/physics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "qhe/errors.hpp"
#include "qhe/numerics.hpp"

namespace qhe {

std::string to_string(UnitMode mode) {
  return mode == UnitMode::si ? "si" : "dimensionless";
}

PhysicalParams PhysicalParams::dimensionless() { return {}; }

PhysicalParams PhysicalParams::si(double m_star_kg, double l_d_m) {
  if (!(m_star_kg > 0.0) || !(l_d_m > 0.0)) {
    throw DomainError("SI parameters need m* > 0 and l_d > 0");
  }
  PhysicalParams p;
  p.unit_mode = UnitMode::si;
  p.m_star = m_star_kg;
  p.hbar = codata::hbar;
  p.e_charge = codata::elementary_charge;
  p.k_B = codata::boltzmann;
  p.omega_d = codata::hbar / (m_star_kg * l_d_m * l_d_m);
  return p;
}

PhysicalParams PhysicalParams::gaas(double l_d_m) {
  return si(kGaAsMassRatio * codata::electron_mass, l_d_m);
}

void PhysicalParams::validate() const {
  if (!(m_star > 0.0) || !(omega_d > 0.0)) throw DomainError("m* and omega_d must be > 0");
  if (!(hbar > 0.0) || !(e_charge > 0.0) || !(k_B > 0.0)) {
    throw DomainError("fundamental constants must be > 0");
  }
}

double PhysicalParams::confinement_length() const { return std::sqrt(hbar / (m_star * omega_d)); }

void validate(const LevelIndex& level) {
  if (level.n_rho < 0) throw DomainError("n_rho must be >= 0, got " + std::to_string(level.n_rho));
}

std::string to_string(const LevelIndex& level) {
  return "(" + std::to_string(level.n_rho) + "," + std::to_string(level.m) + ")";
}

FieldPoint::FieldPoint(double b) : b_(b) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw DomainError("field ratio b must be finite and >= 0, got " + std::to_string(b));
  }
}

FieldPoint FieldPoint::from_field(double B, const PhysicalParams& params) {
  return FieldPoint(B / params.field_unit());
}

namespace reduced {

double effective_frequency(double b) { return std::sqrt(1.0 + 0.25 * b * b); }

double effective_frequency_slope(double b) { return 0.25 * b / effective_frequency(b); }

double energy(const LevelIndex& level, double b) {
  const double k = 2.0 * level.n_rho + std::abs(level.m) + 1.0;
  return k * effective_frequency(b) - 0.5 * level.m * b;
}

double energy_slope(const LevelIndex& level, double b) {
  const double k = 2.0 * level.n_rho + std::abs(level.m) + 1.0;
  return k * effective_frequency_slope(b) - 0.5 * level.m;
}

FrequencyPair omega_pm(double b) {
  const double omega = effective_frequency(b);
  const double half_b = 0.5 * b;
  // omega_- = 1/omega_+ avoids cancellation at large b.
  const double plus = omega + half_b;
  return {plus, 1.0 / plus};
}

}  // namespace reduced

double cyclotron_frequency(double B, const PhysicalParams& params) {
  if (!(B >= 0.0)) throw DomainError("field must be >= 0, got " + std::to_string(B));
  return params.e_charge * B / params.m_star;
}

double effective_frequency(double omega_B, const PhysicalParams& params) {
  if (!(omega_B >= 0.0)) throw DomainError("omega_B must be >= 0");
  return params.omega_d * reduced::effective_frequency(omega_B / params.omega_d);
}

double energy_level(const LevelIndex& level, FieldPoint field, const PhysicalParams& params) {
  validate(level);
  return params.energy_unit() * reduced::energy(level, field.b());
}

FrequencyPair omega_pm(FieldPoint field, const PhysicalParams& params) {
  const auto r = reduced::omega_pm(field.b());
  return {params.omega_d * r.plus, params.omega_d * r.minus};
}

double landau_radius(FieldPoint field, const PhysicalParams& params) {
  const double omega = params.omega_d * reduced::effective_frequency(field.b());
  return std::sqrt(params.hbar / (params.m_star * omega));
}

double landau_radius_from_lengths(double l_d, double l_B) {
  const double inv_d = 1.0 / (l_d * l_d * l_d * l_d);
  const double inv_b = std::isinf(l_B) ? 0.0 : 1.0 / (l_B * l_B * l_B * l_B);
  return std::pow(inv_d + 0.25 * inv_b, -0.25);
}

double magnetic_length(FieldPoint field, const PhysicalParams& params) {
  if (field.b() == 0.0) return std::numeric_limits<double>::infinity();
  const double omega_B = params.omega_d * field.b();
  return std::sqrt(params.hbar / (params.m_star * omega_B));
}

double flux_quanta(FieldPoint field) { return field.flux_quanta(); }

std::vector<LevelCrossing> find_level_crossings(std::span<const LevelIndex> levels,
                                                const CrossingSearch& search) {
  if (!std::isfinite(search.b_lo) || !std::isfinite(search.b_hi) || search.b_lo < 0.0 ||
      search.b_hi < search.b_lo) {
    throw DomainError("crossing search needs a finite range 0 <= b_lo <= b_hi");
  }
  if (!(search.step > 0.0)) throw DomainError("crossing search step must be > 0");
  for (const auto& l : levels) validate(l);

  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::ceil((search.b_hi - search.b_lo) / search.step));
  grid.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(search.b_lo + static_cast<double>(i) * search.step);
  grid.push_back(search.b_hi);

  numerics::SolverSettings solver;
  solver.abs_tol = 1e-15;
  solver.rel_tol = search.tolerance;

  std::vector<LevelCrossing> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      if (levels[i] == levels[j]) throw DomainError("crossing search levels must be distinct");
      const LevelIndex a = levels[i];
      const LevelIndex c = levels[j];
      const auto gap = [&](double b) { return reduced::energy(a, b) - reduced::energy(c, b); };
      for (const auto& br : numerics::scan_sign_changes(gap, grid)) {
        const double b_star = br.lo == br.hi ? br.lo : numerics::find_root_bracketed(gap, br.lo, br.hi, solver);
        out.push_back({std::min(a, c), std::max(a, c), b_star});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const LevelCrossing& x, const LevelCrossing& y) {
    if (x.b_star != y.b_star) return x.b_star < y.b_star;
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  return out;
}

std::vector<LevelIndex> level_set(int max_n_rho, int max_abs_m) {
  if (max_n_rho < 0 || max_abs_m < 0) throw DomainError("level caps must be >= 0");
  std::vector<LevelIndex> out;
  for (int n = 0; n <= max_n_rho; ++n) {
    for (int m = -max_abs_m; m <= max_abs_m; ++m) out.push_back({n, m});
  }
  return out;
}

}  // namespace qhe

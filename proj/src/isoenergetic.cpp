#include "qhe/isoenergetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {

namespace {

constexpr double kTwoSqrtTwo = 2.0 * std::numbers::sqrt2;
constexpr double kOccupationSlack = 1e-12;

// Reduced-unit view of the trajectory through (start, p1_start).
struct Trajectory {
  const TwoLevelSystem& sys;
  double energy;  // conserved ensemble energy, reduced units

  Trajectory(const TwoLevelSystem& s, FieldPoint start, double p1_start) : sys(s) {
    if (!(p1_start >= 0.0 && p1_start <= 1.0)) {
      throw DomainError("initial occupation must lie in [0, 1], got " + std::to_string(p1_start));
    }
    const double e1 = reduced::energy(sys.lower(), start.b());
    const double e2 = reduced::energy(sys.upper(), start.b());
    energy = e2 + (e1 - e2) * p1_start;
  }

  double p1(double b) const {
    const double e1 = reduced::energy(sys.lower(), b);
    const double e2 = reduced::energy(sys.upper(), b);
    return (energy - e2) / (e1 - e2);
  }

  double p1_slope(double b) const {
    const double e1 = reduced::energy(sys.lower(), b);
    const double e2 = reduced::energy(sys.upper(), b);
    const double d = e1 - e2;
    const double e2s = reduced::energy_slope(sys.upper(), b);
    const double ds = reduced::energy_slope(sys.lower(), b) - e2s;
    return (-e2s * d - (energy - e2) * ds) / (d * d);
  }

  double heat_integrand(double b) const {
    const double d = reduced::energy(sys.lower(), b) - reduced::energy(sys.upper(), b);
    return d * p1_slope(b);
  }

  double work_integrand(double b) const {
    const double p = p1(b);
    return p * reduced::energy_slope(sys.lower(), b) + (1.0 - p) * reduced::energy_slope(sys.upper(), b);
  }

  Occupation checked(double b) const {
    double p = p1(b);
    if (p < -kOccupationSlack || p > 1.0 + kOccupationSlack) {
      std::ostringstream os;
      os << "field b=" << b << " lies beyond maximal expansion/compression (p1=" << p << ")";
      throw TrajectoryRangeError(os.str());
    }
    p = std::clamp(p, 0.0, 1.0);
    return {p, 1.0 - p};
  }
};

void require_valid_n_phi(double n_phi1) {
  if (!std::isfinite(n_phi1) || !(n_phi1 > kTwoSqrtTwo)) {
    std::ostringstream os;
    os.precision(17);
    os << "no iso-energetic cycle for N_Phi1 = " << n_phi1
       << ": maximal expansion requires N_Phi1 > 2*sqrt(2), i.e. B1 > 4*sqrt(2)*hbar/(e*l_d^2)";
    throw ExistenceError(os.str());
  }
}

void require_valid_alpha(double alpha) {
  if (!std::isfinite(alpha) || !(alpha >= 1.0)) {
    throw DomainError("expansion parameter alpha must be >= 1, got " + std::to_string(alpha));
  }
}

}  // namespace

TwoLevelSystem::TwoLevelSystem(LevelIndex lower, LevelIndex upper, PhysicalParams params)
    : lower_(lower), upper_(upper), params_(params) {
  validate(lower_);
  validate(upper_);
  params_.validate();
  if (lower_.m != upper_.m) {
    throw SelectionRuleError("transition " + to_string(lower_) + " <-> " + to_string(upper_) +
                             " is forbidden: quasi-static driving conserves m");
  }
  if (lower_.n_rho >= upper_.n_rho) {
    throw DomainError("upper level must have larger n_rho than lower level");
  }
}

TwoLevelSystem TwoLevelSystem::ground_pair(PhysicalParams params) {
  return TwoLevelSystem({0, 0}, {1, 0}, params);
}

double TwoLevelSystem::energy_lower(FieldPoint f) const { return energy_level(lower_, f, params_); }
double TwoLevelSystem::energy_upper(FieldPoint f) const { return energy_level(upper_, f, params_); }
double TwoLevelSystem::gap(FieldPoint f) const { return energy_lower(f) - energy_upper(f); }

Occupation iso_energetic_occupation(const TwoLevelSystem& sys, FieldPoint start, double p1_start,
                                    FieldPoint field) {
  if (field == start) return {p1_start, 1.0 - p1_start};
  return Trajectory(sys, start, p1_start).checked(field.b());
}

double iso_energetic_occupation_slope(const TwoLevelSystem& sys, FieldPoint start, double p1_start,
                                      FieldPoint field) {
  return Trajectory(sys, start, p1_start).p1_slope(field.b());
}

double alpha1(double n_phi1) {
  require_valid_n_phi(n_phi1);
  // N^2 - 8 factored to keep precision just above the threshold.
  const double excess = (n_phi1 - kTwoSqrtTwo) * (n_phi1 + kTwoSqrtTwo);
  return std::sqrt(3.0 * n_phi1) / std::pow(excess, 0.25);
}

double alpha3(double n_phi1, double alpha) {
  require_valid_alpha(alpha);
  const double a = alpha1(n_phi1) * alpha;
  const double a4 = (a * a) * (a * a);
  return std::sqrt(n_phi1) / std::pow(8.0 * a4 + 9.0 * n_phi1 * n_phi1, 0.25);
}

double heat_leg_closed_form(const TwoLevelSystem& sys, FieldPoint start, double p1_start, FieldPoint end) {
  if (!sys.both_m_zero()) {
    throw UnsupportedClosedFormError("closed-form heat needs m = 0 on both levels; use quadrature");
  }
  const Trajectory traj(sys, start, p1_start);
  traj.checked(end.b());
  if (end == start) return 0.0;
  const double gap_start = reduced::energy(sys.lower(), start.b()) - reduced::energy(sys.upper(), start.b());
  const double gap_end = reduced::energy(sys.lower(), end.b()) - reduced::energy(sys.upper(), end.b());
  return sys.params().energy_unit() * traj.energy * std::log(gap_start / gap_end);
}

double heat_leg_quadrature(const TwoLevelSystem& sys, FieldPoint start, double p1_start, FieldPoint end,
                           const numerics::QuadratureSettings& settings) {
  const Trajectory traj(sys, start, p1_start);
  traj.checked(end.b());
  const auto q = numerics::integrate_adaptive([&](double b) { return traj.heat_integrand(b); },
                                              start.b(), end.b(), settings);
  return sys.params().energy_unit() * q.value;
}

double work_leg_quadrature(const TwoLevelSystem& sys, FieldPoint start, double p1_start, FieldPoint end,
                           const numerics::QuadratureSettings& settings) {
  const Trajectory traj(sys, start, p1_start);
  traj.checked(end.b());
  const auto q = numerics::integrate_adaptive([&](double b) { return traj.work_integrand(b); },
                                              start.b(), end.b(), settings);
  return sys.params().energy_unit() * q.value;
}

double work_isoentropic(const TwoLevelSystem& sys, Occupation fixed, FieldPoint start, FieldPoint end) {
  if (!(fixed.p1 >= 0.0 && fixed.p2 >= 0.0) ||
      std::abs(fixed.p1 + fixed.p2 - 1.0) > 1e-12) {
    throw DomainError("iso-entropic occupations must be a normalized two-level distribution");
  }
  return fixed.p1 * (sys.energy_lower(end) - sys.energy_lower(start)) +
         fixed.p2 * (sys.energy_upper(end) - sys.energy_upper(start));
}

void IsoCycleSpec::validate() const {
  require_valid_n_phi(n_phi1);
  require_valid_alpha(alpha);
  params.validate();
}

IsoCycleReport run_iso_cycle(const IsoCycleSpec& spec) {
  spec.validate();
  IsoCycleReport r;
  r.n_phi1 = spec.n_phi1;
  r.alpha = spec.alpha;
  r.alpha1 = alpha1(spec.n_phi1);
  r.alpha3 = alpha3(spec.n_phi1, spec.alpha);

  const double b1 = 2.0 * spec.n_phi1;
  const double b2 = b1 / (r.alpha1 * r.alpha1);
  const double b3 = b2 / (spec.alpha * spec.alpha);
  const double b4 = b3 / (r.alpha3 * r.alpha3);
  r.b1 = FieldPoint(b1);
  r.b2 = FieldPoint(b2);
  r.b3 = FieldPoint(b3);
  r.b4 = FieldPoint(b4);

  const auto sys = TwoLevelSystem::ground_pair(spec.params);

  // 1 -> 2: iso-energetic expansion from the ground state to full excitation.
  r.Q_12 = heat_leg_closed_form(sys, r.b1, 1.0, r.b2);
  r.Q_12_quadrature = heat_leg_quadrature(sys, r.b1, 1.0, r.b2);
  r.W_12 = -r.Q_12;
  const double w12_quad = work_leg_quadrature(sys, r.b1, 1.0, r.b2);

  // 2 -> 3: iso-entropic expansion in the excited state.
  r.W_23 = work_isoentropic(sys, {0.0, 1.0}, r.b2, r.b3);

  // 3 -> 4: iso-energetic compression back to the ground state.
  r.Q_34 = heat_leg_closed_form(sys, r.b3, 0.0, r.b4);
  r.Q_34_quadrature = heat_leg_quadrature(sys, r.b3, 0.0, r.b4);
  r.W_34 = -r.Q_34;
  const double w34_quad = work_leg_quadrature(sys, r.b3, 0.0, r.b4);

  // 4 -> 1: iso-entropic compression in the ground state.
  r.W_41 = work_isoentropic(sys, {1.0, 0.0}, r.b4, r.b1);

  r.eta = 1.0 - std::abs(r.Q_34 / r.Q_12);

  const double scale = std::abs(r.Q_12);
  r.residuals.first_law = std::abs((w12_quad + r.Q_12) + r.W_23 + (w34_quad + r.Q_34) + r.W_41) / scale;
  r.residuals.adiabatic_cancellation = std::abs(r.W_23 + r.W_41) / scale;
  r.residuals.heat_oracle = std::max(std::abs(r.Q_12 - r.Q_12_quadrature) / std::abs(r.Q_12),
                                     std::abs(r.Q_34 - r.Q_34_quadrature) / std::abs(r.Q_34));

  double drift = 0.0;
  const auto sample_leg = [&](FieldPoint from, double p1_from, FieldPoint to) {
    const Trajectory traj(sys, from, p1_from);
    for (int k = 1; k <= kIsoEnergySamples; ++k) {
      const double b = from.b() + (to.b() - from.b()) * k / (kIsoEnergySamples + 1.0);
      const auto occ = traj.checked(b);
      const double e = occ.p1 * reduced::energy(sys.lower(), b) + occ.p2 * reduced::energy(sys.upper(), b);
      drift = std::max(drift, std::abs(e - traj.energy) / traj.energy);
    }
  };
  sample_leg(r.b1, 1.0, r.b2);
  sample_leg(r.b3, 0.0, r.b4);
  r.residuals.iso_energy_drift = drift;
  return r;
}

double efficiency(double n_phi1, double alpha) {
  require_valid_n_phi(n_phi1);
  require_valid_alpha(alpha);
  const double a1 = alpha1(n_phi1);
  const double a3 = alpha3(n_phi1, alpha);
  const double n2 = n_phi1 * n_phi1;
  const auto theta = [n2](double x) {
    const double x2 = x * x;
    return std::sqrt(1.0 + n2 / (x2 * x2));
  };
  const double expanded = alpha * a1;
  return 1.0 - 3.0 * theta(expanded) / theta(1.0) * std::log(theta(expanded * a3) / theta(expanded)) /
                   std::log(theta(1.0) / theta(a1));
}

double asymptotic_efficiency(double alpha) {
  require_valid_alpha(alpha);
  return 1.0 - 1.0 / (alpha * alpha);
}

FieldPoint minimal_field_point() { return FieldPoint::from_flux_quanta(kTwoSqrtTwo); }

double minimal_field(const PhysicalParams& params) {
  params.validate();
  return minimal_field_point().field(params);
}

}  // namespace qhe

#include "qhe/carnot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qhe/errors.hpp"

namespace qhe {

double isothermal_heat(FieldPoint a, FieldPoint b, double beta, const PhysicalParams& params) {
  if (a == b) return 0.0;
  const double dE = thermal_energy(b, beta, params) - thermal_energy(a, beta, params);
  const double dlogZ = log_partition_function(b, beta, params) - log_partition_function(a, beta, params);
  return dE + dlogZ / beta;
}

FieldPoint entropy_match(FieldPoint known, double beta_from, double beta_to, const PhysicalParams& params,
                         const numerics::SolverSettings& solver) {
  solver.validate();
  const double target = thermal_entropy(known, beta_from, params);
  const auto residual = [&](double b) { return thermal_entropy(FieldPoint(b), beta_to, params) - target; };

  std::vector<double> grid = solver.bracket_grid.points();
  if (grid.front() > 0.0) grid.insert(grid.begin(), 0.0);

  const auto brackets = numerics::scan_sign_changes(residual, grid);
  if (brackets.empty()) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double b : grid) {
      const double s = thermal_entropy(FieldPoint(b), beta_to, params);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    std::ostringstream os;
    os.precision(12);
    os << "no field in [" << grid.front() << ", " << grid.back() << "] reaches entropy " << target
       << " at beta " << beta_to << "; scanned S range [" << lo << ", " << hi << "]";
    throw NoSolutionError(os.str(), lo, hi);
  }
  if (brackets.size() > 1) {
    std::ostringstream os;
    os << "entropy match is ambiguous: " << brackets.size() << " brackets";
    for (const auto& br : brackets) os << " [" << br.lo << ", " << br.hi << "]";
    throw AmbiguityError(os.str(), brackets);
  }

  const auto& br = brackets.front();
  const double b = br.lo == br.hi ? br.lo : numerics::find_root_bracketed(residual, br.lo, br.hi, solver);
  const double miss = std::abs(residual(b));
  if (miss > kEntropyMatchTolerance) {
    std::ostringstream os;
    os << "entropy match residual " << miss << " exceeds " << kEntropyMatchTolerance;
    throw ConvergenceError(os.str(), b);
  }
  return FieldPoint(b);
}

double adiabatic_work(FieldPoint a, double beta_a, FieldPoint b, double beta_b, const PhysicalParams& params) {
  return thermal_energy(a, beta_a, params) - thermal_energy(b, beta_b, params);
}

double isentrope_beta(FieldPoint field, double entropy, const PhysicalParams& params) {
  if (!(entropy > 0.0) || !std::isfinite(entropy)) {
    throw DomainError("isentrope entropy must be finite and > 0");
  }
  // S decreases monotonically in beta; bracket in log(beta).
  const auto residual = [&](double log_beta) {
    return thermal_entropy(field, std::exp(log_beta), params) - entropy;
  };
  double lo = -std::log(params.energy_unit());
  double hi = lo;
  for (int i = 0; residual(lo) < 0.0; ++i) {
    if (i > 200) throw NoSolutionError("isentrope temperature bracket failed (high T)", 0.0, entropy);
    lo -= 1.0;
  }
  for (int i = 0; residual(hi) > 0.0; ++i) {
    if (i > 200) throw NoSolutionError("isentrope temperature bracket failed (low T)", 0.0, entropy);
    hi += 1.0;
  }
  numerics::SolverSettings s;
  return std::exp(numerics::find_root_bracketed(residual, lo, hi, s));
}

void CarnotSpec::validate() const {
  params.validate();
  solver.validate();
  if (!(T_cold > 0.0) || !std::isfinite(T_hot) || !(T_hot >= T_cold)) {
    throw DomainError("Carnot cycle needs T_hot >= T_cold > 0");
  }
  if (b1 == b2) throw DomainError("Carnot cycle needs B1 != B2");
}

bool CarnotResiduals::within_tolerance() const {
  return entropy_match_23 <= kEntropyMatchTolerance && entropy_match_41 <= kEntropyMatchTolerance &&
         combined_condition <= kCombinedConditionTolerance && first_law <= kCarnotFirstLawTolerance &&
         net_work <= kCarnotFirstLawTolerance && heat_entropy_12 <= kHeatEntropyTolerance &&
         heat_entropy_34 <= kHeatEntropyTolerance && efficiency <= kCarnotEfficiencyTolerance;
}

CarnotReport run_carnot_cycle(const CarnotSpec& spec) {
  spec.validate();
  const auto& p = spec.params;
  const double beta_h = 1.0 / (p.k_B * spec.T_hot);
  const double beta_c = 1.0 / (p.k_B * spec.T_cold);

  CarnotReport r;
  r.b1 = spec.b1;
  r.b2 = spec.b2;
  r.T_hot = spec.T_hot;
  r.T_cold = spec.T_cold;
  r.b3 = entropy_match(spec.b2, beta_h, beta_c, p, spec.solver);
  r.b4 = entropy_match(spec.b1, beta_h, beta_c, p, spec.solver);

  const double e1 = thermal_energy(r.b1, beta_h, p);
  const double e2 = thermal_energy(r.b2, beta_h, p);
  const double e3 = thermal_energy(r.b3, beta_c, p);
  const double e4 = thermal_energy(r.b4, beta_c, p);
  const double z1 = log_partition_function(r.b1, beta_h, p);
  const double z2 = log_partition_function(r.b2, beta_h, p);
  const double z3 = log_partition_function(r.b3, beta_c, p);
  const double z4 = log_partition_function(r.b4, beta_c, p);
  r.S_1 = beta_h * e1 + z1;
  r.S_2 = beta_h * e2 + z2;
  r.S_3 = beta_c * e3 + z3;
  r.S_4 = beta_c * e4 + z4;

  r.Q_12 = isothermal_heat(r.b1, r.b2, beta_h, p);
  r.Q_34 = isothermal_heat(r.b3, r.b4, beta_c, p);
  r.W_23 = adiabatic_work(r.b2, beta_h, r.b3, beta_c, p);
  r.W_41 = adiabatic_work(r.b4, beta_c, r.b1, beta_h, p);
  r.W_12 = r.Q_12 - (e2 - e1);
  r.W_34 = r.Q_34 - (e4 - e3);

  r.eta_numeric = 1.0 - std::abs(r.Q_34 / r.Q_12);
  r.eta_formula = 1.0 - spec.T_cold / spec.T_hot;

  auto& res = r.residuals;
  res.entropy_match_23 = std::abs(r.S_3 - r.S_2);
  res.entropy_match_41 = std::abs(r.S_4 - r.S_1);
  const double lhs = beta_c * (e3 - e4) + (z3 - z4);
  const double rhs = beta_h * (e2 - e1) + (z2 - z1);
  res.combined_condition = std::abs(lhs - rhs);
  const double scale = std::abs(r.Q_12);
  const double w_net = r.W_12 + r.W_23 + r.W_34 + r.W_41;
  res.first_law = std::abs(w_net - (r.Q_12 + r.Q_34)) / scale;
  res.net_work = std::abs(w_net - r.eta_numeric * r.Q_12) / scale;
  const double kT_h = p.k_B * spec.T_hot;
  const double kT_c = p.k_B * spec.T_cold;
  res.heat_entropy_12 = std::abs(r.Q_12 - kT_h * (r.S_2 - r.S_1)) / scale;
  res.heat_entropy_34 = std::abs(r.Q_34 - kT_c * (r.S_4 - r.S_3)) / std::abs(r.Q_34);
  res.efficiency = std::abs(r.eta_numeric - r.eta_formula);
  return r;
}

}  // namespace qhe

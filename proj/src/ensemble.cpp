#include "qhe/ensemble.hpp"

#include <cmath>
#include <cstdlib>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "qhe/errors.hpp"
#include "qhe/numerics.hpp"

namespace qhe {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("beta must be finite and > 0, got " + std::to_string(beta));
  }
}

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct ReducedThermal {
  double omega;  // Omega / omega_d
  FrequencyPair w;
  double x_plus;
  double x_minus;
};

ReducedThermal reduce(FieldPoint field, double beta, const PhysicalParams& params) {
  require_beta(beta);
  const double beta_r = beta * params.energy_unit();
  const auto w = reduced::omega_pm(field.b());
  return {reduced::effective_frequency(field.b()), w, 0.5 * beta_r * w.plus, 0.5 * beta_r * w.minus};
}

}  // namespace

MixedState::MixedState(FieldPoint field, Occupations occupations, double omitted_mass)
    : field_(field), occupations_(std::move(occupations)), omitted_mass_(omitted_mass) {
  if (!(omitted_mass_ >= 0.0) || omitted_mass_ > 1.0) throw DomainError("omitted mass must lie in [0, 1]");
  CompensatedSum total;
  for (const auto& [level, p] : occupations_) {
    validate(level);
    if (!(p >= 0.0) || p > 1.0) {
      throw DomainError("occupation of " + to_string(level) + " outside [0, 1]: " + std::to_string(p));
    }
    total.add(p);
  }
  total.add(omitted_mass_);
  if (std::abs(total.value() - 1.0) > kNormalizationTolerance) {
    throw DomainError("occupations are not normalized: total " + std::to_string(total.value()));
  }
}

MixedState MixedState::pure(FieldPoint field, LevelIndex level) {
  return MixedState(field, {{level, 1.0}});
}

double MixedState::probability(const LevelIndex& level) const {
  const auto it = occupations_.find(level);
  return it == occupations_.end() ? 0.0 : it->second;
}

double entropy(const MixedState& state) {
  CompensatedSum s;
  for (const auto& [level, p] : state.occupations()) {
    if (p > 0.0) s.add(-p * std::log(p));
  }
  return s.value();
}

double average_energy(const MixedState& state, const PhysicalParams& params) {
  CompensatedSum e;
  for (const auto& [level, p] : state.occupations()) {
    e.add(p * reduced::energy(level, state.field().b()));
  }
  return params.energy_unit() * e.value();
}

LadderIndex to_ladder(const LevelIndex& level) {
  validate(level);
  const int abs_m = std::abs(level.m);
  return {level.n_rho + (abs_m - level.m) / 2, level.n_rho + (abs_m + level.m) / 2};
}

LevelIndex from_ladder(const LadderIndex& ladder) {
  if (ladder.n_plus < 0 || ladder.n_minus < 0) throw DomainError("ladder indices must be >= 0");
  return {std::min(ladder.n_plus, ladder.n_minus), ladder.n_minus - ladder.n_plus};
}

double ladder_energy(int n, double omega, const PhysicalParams& params) {
  return params.hbar * omega * (n + 0.5);
}

double PartitionFunction::value() const { return std::exp(log_value()); }

PartitionFunction partition_function(FieldPoint field, double beta, const PhysicalParams& params) {
  const auto r = reduce(field, beta, params);
  return {-numerics::log_two_sinh(r.x_plus), -numerics::log_two_sinh(r.x_minus)};
}

double log_partition_function(FieldPoint field, double beta, const PhysicalParams& params) {
  return partition_function(field, beta, params).log_value();
}

double thermal_energy(FieldPoint field, double beta, const PhysicalParams& params) {
  const auto r = reduce(field, beta, params);
  const double e = 0.5 * r.w.plus * numerics::coth_stable(r.x_plus) +
                   0.5 * r.w.minus * numerics::coth_stable(r.x_minus);
  return params.energy_unit() * e;
}

double thermal_entropy(FieldPoint field, double beta, const PhysicalParams& params) {
  return beta * thermal_energy(field, beta, params) + log_partition_function(field, beta, params);
}

double magnetization(FieldPoint field, double beta, const PhysicalParams& params) {
  const auto r = reduce(field, beta, params);
  const double scale = 0.5 / r.omega;
  return -scale * r.w.plus * numerics::coth_stable(r.x_plus) +
         scale * r.w.minus * numerics::coth_stable(r.x_minus);
}

MixedState boltzmann_state(FieldPoint field, double beta, const PhysicalParams& params,
                           double truncation) {
  if (!(truncation > 0.0) || truncation > 1e-6) {
    throw DomainError("truncation must lie in (0, 1e-6], got " + std::to_string(truncation));
  }
  const auto r = reduce(field, beta, params);
  const double log_z = -numerics::log_two_sinh(r.x_plus) - numerics::log_two_sinh(r.x_minus);
  const double beta_r = beta * params.energy_unit();

  // Best-first over the two ladders; (n+, n-) is pushed from (n+ - 1, n-) and
  // (0, n-) additionally from (0, n- - 1), so each pair enters exactly once.
  using Entry = std::tuple<double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  const auto ladder_e = [&](int np, int nm) { return r.w.plus * (np + 0.5) + r.w.minus * (nm + 0.5); };
  frontier.emplace(ladder_e(0, 0), 0, 0);

  MixedState::Occupations occ;
  CompensatedSum included;
  while (1.0 - included.value() >= truncation) {
    if (frontier.empty()) break;
    const auto [e, np, nm] = frontier.top();
    frontier.pop();
    const LevelIndex level = from_ladder({np, nm});
    if (level.n_rho > kLevelCap || std::abs(level.m) > kLevelCap) {
      throw ResourceError("Boltzmann truncation " + std::to_string(truncation) +
                          " not reached within level cap n_rho, |m| <= " + std::to_string(kLevelCap));
    }
    const double p = std::exp(-beta_r * e - log_z);
    occ.emplace(level, p);
    included.add(p);
    frontier.emplace(ladder_e(np + 1, nm), np + 1, nm);
    if (np == 0) frontier.emplace(ladder_e(0, nm + 1), 0, nm + 1);
  }
  const double omitted = std::max(0.0, 1.0 - included.value());
  return MixedState(field, std::move(occ), omitted);
}

ThermalState::ThermalState(FieldPoint field, double beta, PhysicalParams params)
    : field_(field), beta_(beta), params_(params) {
  require_beta(beta);
  params_.validate();
}

double ThermalState::partition_function() const {
  return qhe::partition_function(field_, beta_, params_).value();
}

double ThermalState::log_partition_function() const {
  return qhe::log_partition_function(field_, beta_, params_);
}

double ThermalState::energy() const { return thermal_energy(field_, beta_, params_); }

double ThermalState::entropy() const { return thermal_entropy(field_, beta_, params_); }

double ThermalState::magnetization() const { return qhe::magnetization(field_, beta_, params_); }

double ThermalState::occupation(const LevelIndex& level) const {
  validate(level);
  return std::exp(-beta_ * energy_level(level, field_, params_) - log_partition_function());
}

MixedState ThermalState::to_mixed(double truncation) const {
  return boltzmann_state(field_, beta_, params_, truncation);
}

}  // namespace qhe

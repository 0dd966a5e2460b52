#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qhe/carnot.hpp"
#include "qhe/errors.hpp"

using namespace qhe;

namespace {

const auto kDim = PhysicalParams::dimensionless();

CarnotSpec spec(double b1, double b2, double t_hot, double t_cold) {
  CarnotSpec s;
  s.b1 = FieldPoint(b1);
  s.b2 = FieldPoint(b2);
  s.T_hot = t_hot;
  s.T_cold = t_cold;
  return s;
}

// Entropy from the brute-force partition sum.
double oracle_entropy(double b, double beta) { return oracle::brute_force_partition(b, beta).entropy; }

}  // namespace

TEST_CASE("isothermal heat") {
  const FieldPoint a(1.0), b(3.0);
  CHECK(isothermal_heat(a, a, 0.7, kDim) == 0.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> field(0.0, 10.0), beta(0.1, 5.0);
  for (int i = 0; i < 50; ++i) {
    const FieldPoint x(field(rng)), y(field(rng));
    const double be = beta(rng);
    const double q = isothermal_heat(x, y, be, kDim);
    const double tds = (thermal_entropy(y, be, kDim) - thermal_entropy(x, be, kDim)) / be;
    CHECK(std::abs(q - tds) <= 1e-10 * std::max(std::abs(q), 1e-3));
  }
}

TEST_CASE("isothermal heat matches quadrature of E dp with Boltzmann occupations") {
  // sum_n E_n dp_n/db integrated over b, levels truncated to a fixed set.
  const double beta = 1.0;
  const double lo = 1.0, hi = 3.0;
  const auto integrand = [&](double b) {
    const double h = 1e-4;
    const auto p = [&](int n, int m, double x) {
      return std::exp(-beta * oracle::level_energy(n, m, x) - log_partition_function(FieldPoint(x), beta, kDim));
    };
    oracle::Sum s;
    for (int n = 0; n <= 40; ++n) {
      for (int m = -150; m <= 150; ++m) {
        const double dp = (p(n, m, b + h) - p(n, m, b - h)) / (2 * h);
        s.add(oracle::level_energy(n, m, b) * dp);
      }
    }
    return s.value();
  };
  const double quad = oracle::gauss_legendre(integrand, lo, hi, 8);
  const double q = isothermal_heat(FieldPoint(lo), FieldPoint(hi), beta, kDim);
  CHECK(oracle::rel_diff(quad, q) < 1e-7);
}

TEST_CASE("entropy match") {
  const FieldPoint b2(1.0);
  // beta_to = beta_from returns the known field.
  CHECK(entropy_match(b2, 0.7, 0.7, kDim).b() == doctest::Approx(1.0).epsilon(1e-12));

  const double beta_h = 0.5, beta_c = 1.0;
  const FieldPoint b3 = entropy_match(b2, beta_h, beta_c, kDim);
  const double target = oracle_entropy(1.0, beta_h);
  const double ref = oracle::bisect([&](double b) { return oracle_entropy(b, beta_c) - target; }, 1e-4, 1e4);
  CHECK(std::abs(b3.b() - ref) <= 1e-9 * ref);
  CHECK(std::abs(thermal_entropy(b3, beta_c, kDim) - thermal_entropy(b2, beta_h, kDim)) <= kEntropyMatchTolerance);

  // Round trip.
  const FieldPoint back = entropy_match(b3, beta_c, beta_h, kDim);
  CHECK(oracle::rel_diff(back.b(), 1.0) <= 1e-9);
}

TEST_CASE("entropy match failures") {
  // Entropy at b = 0 and high temperature cannot be reached at a much lower temperature
  // within a small scan window.
  numerics::SolverSettings narrow;
  narrow.bracket_grid.lo = 1e-3;
  narrow.bracket_grid.hi = 1.0;
  try {
    entropy_match(FieldPoint(5.0), 0.2, 5.0, kDim, narrow);
    FAIL("expected NoSolutionError");
  } catch (const NoSolutionError& e) {
    CHECK(e.scanned_min() <= e.scanned_max());
    CHECK(e.scanned_max() < thermal_entropy(FieldPoint(5.0), 0.2, kDim));
  }
}

TEST_CASE("adiabatic work") {
  CHECK(adiabatic_work(FieldPoint(2.0), 1.0, FieldPoint(2.0), 1.0, kDim) == 0.0);
  CHECK(adiabatic_work(FieldPoint(1.0), 1.0, FieldPoint(2.0), 1.0, kDim) ==
        thermal_energy(FieldPoint(1.0), 1.0, kDim) - thermal_energy(FieldPoint(2.0), 1.0, kDim));
  const auto r = run_carnot_cycle(spec(2.0, 1.0, 2.0, 1.0));
  const double bh = 0.5, bc = 1.0;
  const double rhs = (thermal_energy(r.b2, bh, kDim) - thermal_energy(r.b1, bh, kDim)) +
                     (thermal_energy(r.b4, bc, kDim) - thermal_energy(r.b3, bc, kDim));
  CHECK(std::abs(r.W_23 + r.W_41 - rhs) <= 1e-12 * std::abs(r.Q_12) + 1e-14);
}

TEST_CASE("isentrope temperature") {
  const FieldPoint f(3.0);
  for (double beta : {0.05, 0.5, 2.0, 10.0}) {
    const double s = thermal_entropy(f, beta, kDim);
    CHECK(oracle::rel_diff(isentrope_beta(f, s, kDim), beta) < 1e-10);
  }
  CHECK_THROWS_AS(isentrope_beta(f, 0.0, kDim), DomainError);
}

TEST_CASE("Carnot cycle at b1 = 2, b2 = 1, T_H = 2, T_C = 1") {
  const auto r = run_carnot_cycle(spec(2.0, 1.0, 2.0, 1.0));
  CHECK(std::abs(r.eta_numeric - 0.5) <= 1e-9);
  CHECK(r.eta_formula == 0.5);
  CHECK(r.residuals.within_tolerance());
  const double wnet = r.W_12 + r.W_23 + r.W_34 + r.W_41;
  CHECK(std::abs(wnet - r.eta_numeric * r.Q_12) <= 1e-9 * std::abs(r.Q_12));
  CHECK(std::abs(wnet - (r.Q_12 + r.Q_34)) <= 1e-9 * std::abs(r.Q_12));
}

TEST_CASE("Carnot cycle at equal temperatures has zero efficiency") {
  const auto r = run_carnot_cycle(spec(2.0, 1.0, 1.5, 1.5));
  CHECK(std::abs(r.eta_numeric) <= 1e-9);
  CHECK(oracle::rel_diff(r.b3.b(), r.b2.b()) <= 1e-9);
}

TEST_CASE("Carnot cycle at T_C/T_H = 0.7") {
  const auto r = run_carnot_cycle(spec(1.0, 4.0, 1.0, 0.7));
  CHECK(std::abs(r.eta_numeric - 0.3) <= 1e-9);
}

TEST_CASE("property: Carnot efficiency over a grid") {
  for (double b1 : {0.1, 1.0, 5.0}) {
    for (double b2 : {0.5, 3.0, 10.0}) {
      for (double t_hot : {0.2, 1.0, 20.0}) {
        for (double ratio : {0.1, 0.5, 0.95}) {
          CAPTURE(b1);
          CAPTURE(b2);
          CAPTURE(t_hot);
          CAPTURE(ratio);
          const auto r = run_carnot_cycle(spec(b1, b2, t_hot, ratio * t_hot));
          CHECK(r.residuals.efficiency <= kCarnotEfficiencyTolerance);
          CHECK(r.residuals.entropy_match_23 <= kEntropyMatchTolerance);
          CHECK(r.residuals.entropy_match_41 <= kEntropyMatchTolerance);
          CHECK(r.residuals.combined_condition <= kCombinedConditionTolerance);
          CHECK(r.residuals.heat_entropy_12 <= kHeatEntropyTolerance);
          CHECK(r.residuals.heat_entropy_34 <= kHeatEntropyTolerance);
          CHECK(r.residuals.first_law <= kCarnotFirstLawTolerance);
          CHECK(r.residuals.net_work <= kCarnotFirstLawTolerance);
        }
      }
    }
  }
}

TEST_CASE("adiabat endpoints vary smoothly with T_C") {
  const auto a = run_carnot_cycle(spec(2.0, 1.0, 2.0, 1.0));
  const auto b = run_carnot_cycle(spec(2.0, 1.0, 2.0, 1.0 * (1.0 + 1e-6)));
  const double rel = oracle::rel_diff(a.b3.b(), b.b3.b());
  CHECK(rel > 0.0);
  CHECK(rel < 1e-5);
}

TEST_CASE("Carnot spec validation") {
  CHECK_THROWS_AS(run_carnot_cycle(spec(1.0, 1.0, 2.0, 1.0)), DomainError);
  CHECK_THROWS_AS(run_carnot_cycle(spec(1.0, 2.0, 1.0, 2.0)), DomainError);
  CHECK_THROWS_AS(run_carnot_cycle(spec(1.0, 2.0, 1.0, 0.0)), DomainError);
}

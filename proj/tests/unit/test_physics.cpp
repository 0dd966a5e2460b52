#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhe/errors.hpp"
#include "qhe/physics.hpp"

using namespace qhe;

namespace {
const auto kDim = PhysicalParams::dimensionless();
}

TEST_CASE("parameters") {
  CHECK_NOTHROW(kDim.validate());
  CHECK(kDim.energy_unit() == 1.0);
  CHECK(kDim.field_unit() == 1.0);
  CHECK(kDim.confinement_length() == 1.0);

  const auto g = PhysicalParams::gaas();
  CHECK(g.unit_mode == UnitMode::si);
  CHECK(g.m_star == doctest::Approx(0.067 * codata::electron_mass).epsilon(1e-15));
  CHECK(g.confinement_length() == doctest::Approx(70e-9).epsilon(1e-14));
  CHECK_THROWS_AS(PhysicalParams::si(0.0, 1e-9), DomainError);
  PhysicalParams bad;
  bad.omega_d = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("cyclotron frequency") {
  CHECK(cyclotron_frequency(0.0, kDim) == 0.0);
  CHECK(cyclotron_frequency(1.0, kDim) == 1.0);
  // eB/m* for GaAs at 1 T
  const double ref = 2.62510449368979e12;
  CHECK(oracle::rel_diff(cyclotron_frequency(1.0, PhysicalParams::gaas()), ref) < 1e-13);
  CHECK_THROWS_AS(cyclotron_frequency(-1.0, kDim), DomainError);
}

TEST_CASE("effective frequency") {
  CHECK(effective_frequency(0.0, kDim) == 1.0);
  CHECK(reduced::effective_frequency(6.0) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-16));
  CHECK(reduced::effective_frequency(1e8) / 5e7 == doctest::Approx(1.0).epsilon(1e-15));
  for (double b : {0.0, 0.3, 2.0, 40.0}) CHECK(reduced::effective_frequency(b) >= 1.0);
  const double b = 2.7;
  CHECK(reduced::effective_frequency_slope(b) ==
        doctest::Approx(oracle::derivative([](double x) { return oracle::omega(x); }, b, 1e-3)).epsilon(1e-10));
}

TEST_CASE("energy levels") {
  for (double b : {0.0, 1.0, 6.0}) {
    CHECK(energy_level({0, 0}, FieldPoint(b), kDim) == doctest::Approx(oracle::omega(b)));
  }
  CHECK(energy_level({1, 0}, FieldPoint(0.0), kDim) == 3.0);
  CHECK(energy_level({1, 0}, FieldPoint(6.0), kDim) == doctest::Approx(3.0 * std::sqrt(10.0)).epsilon(1e-15));
  const double bx = 1.0 / std::numbers::sqrt2;
  CHECK(energy_level({0, 3}, FieldPoint(bx), kDim) ==
        doctest::Approx(energy_level({1, 0}, FieldPoint(bx), kDim)).epsilon(1e-15));
  CHECK_THROWS_AS(energy_level({-1, 0}, FieldPoint(1.0), kDim), DomainError);
}

TEST_CASE("energy levels match an independent formula on a grid") {
  for (int n = 0; n <= 6; ++n) {
    for (int m = -6; m <= 6; ++m) {
      for (double b : {0.0, 0.25, 1.0, 3.3, 12.0}) {
        CHECK(oracle::rel_diff(reduced::energy({n, m}, b), oracle::level_energy(n, m, b)) < 1e-15);
        const double slope = oracle::derivative([&](double x) { return oracle::level_energy(n, m, x); },
                                                std::max(b, 0.01), 1e-3);
        CHECK(std::abs(reduced::energy_slope({n, m}, std::max(b, 0.01)) - slope) < 1e-9);
      }
    }
  }
}

TEST_CASE("property: ground state lies strictly below every other level") {
  for (int i = 0; i <= 400; ++i) {
    const double b = 0.05 * i;
    const double e0 = reduced::energy({0, 0}, b);
    for (int n = 0; n <= 10; ++n) {
      for (int m = -10; m <= 10; ++m) {
        if (n == 0 && m == 0) continue;
        REQUIRE(reduced::energy({n, m}, b) > e0);
      }
    }
  }
}

TEST_CASE("property: levels with m <= 0 are non-decreasing in b") {
  for (int n = 0; n <= 5; ++n) {
    for (int m = -5; m <= 0; ++m) {
      double prev = reduced::energy({n, m}, 0.0);
      for (int i = 1; i <= 200; ++i) {
        const double e = reduced::energy({n, m}, 0.1 * i);
        REQUIRE(e >= prev);
        prev = e;
      }
    }
  }
}

TEST_CASE("ladder frequencies") {
  const auto z = reduced::omega_pm(0.0);
  CHECK(z.plus == 1.0);
  CHECK(z.minus == 1.0);
  const auto w = omega_pm(FieldPoint::from_flux_quanta(3.0), kDim);
  CHECK(w.plus == doctest::Approx(std::sqrt(10.0) + 3.0).epsilon(1e-15));
  CHECK(w.minus == doctest::Approx(std::sqrt(10.0) - 3.0).epsilon(1e-14));
  for (double b : {0.0, 1e-8, 0.4, 3.0, 77.0, 1e6}) {
    const auto p = reduced::omega_pm(b);
    CHECK(std::abs(p.plus * p.minus - 1.0) <= 2e-16);
    CHECK(p.plus >= p.minus);
    CHECK(p.minus > 0.0);
    CHECK(oracle::rel_diff(p.plus + p.minus, 2.0 * oracle::omega(b)) < 1e-12);
  }
}

TEST_CASE("landau radius") {
  const auto g = PhysicalParams::gaas();
  CHECK(landau_radius(FieldPoint(0.0), g) == doctest::Approx(70e-9).epsilon(1e-14));
  CHECK(landau_radius(FieldPoint::from_flux_quanta(3.0), kDim) ==
        doctest::Approx(std::pow(10.0, -0.25)).epsilon(1e-15));
  for (double b : {0.1, 1.0, 4.0, 25.0}) {
    const FieldPoint f(b);
    const double direct = landau_radius(f, g);
    const double via_lengths = landau_radius_from_lengths(g.confinement_length(), magnetic_length(f, g));
    CHECK(oracle::rel_diff(direct, via_lengths) < 1e-12);
  }
  CHECK(std::isinf(magnetic_length(FieldPoint(0.0), kDim)));
}

TEST_CASE("flux quanta") {
  CHECK(flux_quanta(FieldPoint(0.0)) == 0.0);
  CHECK(flux_quanta(FieldPoint(2.0)) == 1.0);
  const auto g = PhysicalParams::gaas();
  const double expected = codata::elementary_charge * 1.0 * 70e-9 * 70e-9 / (2.0 * codata::hbar);
  CHECK(oracle::rel_diff(flux_quanta(FieldPoint::from_field(1.0, g)), expected) < 1e-12);
}

TEST_CASE("field point") {
  CHECK_THROWS_AS(FieldPoint(-0.1), DomainError);
  CHECK_THROWS_AS(static_cast<void>(FieldPoint(INFINITY)), DomainError);
  CHECK_THROWS_AS(FieldPoint::from_field(-1.0, kDim), DomainError);
  const auto g = PhysicalParams::gaas();
  CHECK(FieldPoint::from_field(2.5, g).field(g) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("level crossings") {
  const std::vector<LevelIndex> pair{{1, 0}, {0, 3}};
  const auto c = find_level_crossings(pair);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0].b_star - 1.0 / std::numbers::sqrt2) <= 1e-10);

  const std::vector<LevelIndex> parallel{{1, 0}, {2, 0}};
  CrossingSearch wide;
  wide.b_hi = 100.0;
  CHECK(find_level_crossings(parallel, wide).empty());

  const auto levels = level_set(5, 5);
  CrossingSearch s;
  s.b_hi = 20.0;
  const auto all = find_level_crossings(levels, s);
  CHECK_FALSE(all.empty());
  for (const auto& x : all) {
    CHECK(x.first != LevelIndex{0, 0});
    CHECK(x.second != LevelIndex{0, 0});
    CHECK(std::abs(reduced::energy(x.first, x.b_star) - reduced::energy(x.second, x.b_star)) < 1e-9);
  }
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].b_star <= all[i].b_star);

  const std::vector<LevelIndex> dup{{1, 0}, {1, 0}};
  CHECK_THROWS_AS(find_level_crossings(dup), DomainError);
}

TEST_CASE("level set") {
  const auto l = level_set(3, 3);
  CHECK(l.size() == 4 * 7);
  CHECK(l.front() == LevelIndex{0, -3});
  CHECK_THROWS_AS(level_set(-1, 0), DomainError);
}

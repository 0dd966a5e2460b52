#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qhe/errors.hpp"

namespace qhe::numerics {

using ScalarFunction = std::function<double(double)>;

/// Grid used to scan for sign changes before refinement.
struct BracketGrid {
  std::size_t count = 400;
  double lo = 1e-4;
  double hi = 1e4;
  bool logarithmic = true;

  std::vector<double> points() const;
};

struct SolverSettings {
  double abs_tol = 1e-14;
  double rel_tol = 1e-15;
  int max_iterations = 200;
  BracketGrid bracket_grid{};

  void validate() const;
};

/// Bracket-preserving root refinement: regula falsi (Illinois weighting) with a
/// bisection fallback whenever the bracket fails to halve in two steps.
/// Requires f(lo) * f(hi) <= 0. Deterministic for identical inputs.
double find_root_bracketed(const ScalarFunction& f, double lo, double hi,
                           const SolverSettings& settings = {});

/// All sub-intervals of `points` over which f changes sign. A grid point where
/// f vanishes exactly yields a degenerate bracket {x, x} and is reported once.
std::vector<Bracket> scan_sign_changes(const ScalarFunction& f, const std::vector<double>& points);

struct QuadratureSettings {
  double abs_tol = 1e-12;
  int max_depth = 40;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  // Set when some panel hit max_depth before meeting its tolerance.
  bool depth_limited = false;
};

/// Adaptive Simpson with Richardson correction. Orientation is respected:
/// integrate_adaptive(f, b, a) == -integrate_adaptive(f, a, b).
QuadratureResult integrate_adaptive(const ScalarFunction& f, double a, double b,
                                    const QuadratureSettings& settings = {});

double central_difference(const ScalarFunction& f, double x, double h);

/// ln(2 sinh x) for x > 0, stable from x ~ 1e-300 up to overflow of x itself.
double log_two_sinh(double x);

/// coth(x) for x > 0.
double coth_stable(double x);

}  // namespace qhe::numerics

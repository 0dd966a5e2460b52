#include "qhe/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace qhe::numerics {

namespace {

bool same_sign(double a, double b) { return (a < 0.0) == (b < 0.0); }

struct SimpsonState {
  const ScalarFunction& f;
  std::size_t evaluations = 0;
  double error = 0.0;
  bool depth_limited = false;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }
};

constexpr int kMinDepth = 4;

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth, int level) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.eval(lm);
  const double frm = st.eval(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;

  if (level >= kMinDepth && std::abs(delta) <= 15.0 * tol) {
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    st.depth_limited = true;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return adaptive_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, level + 1) +
         adaptive_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, level + 1);
}

}  // namespace

std::vector<double> BracketGrid::points() const {
  if (count < 2) throw DomainError("bracket grid needs at least 2 points");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("bracket grid range must be finite with hi > lo");
  }
  if (logarithmic && !(lo > 0.0)) throw DomainError("logarithmic bracket grid needs lo > 0");

  std::vector<double> xs(count);
  const double n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / n;
    xs[i] = logarithmic ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

void SolverSettings::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("solver tolerances must be > 0");
  if (max_iterations < 1) throw DomainError("solver max_iterations must be >= 1");
}

double find_root_bracketed(const ScalarFunction& f, double lo, double hi,
                           const SolverSettings& settings) {
  settings.validate();
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw BracketError("non-finite function value at bracket endpoint");
  }
  if (same_sign(flo, fhi)) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << flo << ", f(hi)=" << fhi;
    throw BracketError(os.str());
  }

  double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double best_abs = std::min(std::abs(flo), std::abs(fhi));
  // Illinois weights are applied to copies so `best` tracks true |f|.
  double wlo = flo;
  double whi = fhi;
  int last_side = 0;
  double width_prev = hi - lo;
  double width_prev2 = width_prev;

  for (int it = 0; it < settings.max_iterations; ++it) {
    const double width = hi - lo;
    const bool force_bisect = it >= 2 && width > 0.5 * width_prev2;
    double x = (lo * whi - hi * wlo) / (whi - wlo);
    if (force_bisect || !(x > lo && x < hi)) x = 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) return best;  // adjacent doubles, nothing left to split

    const double fx = f(x);
    if (!std::isfinite(fx)) throw ConvergenceError("non-finite function value during refinement", best);
    if (std::abs(fx) < best_abs) {
      best_abs = std::abs(fx);
      best = x;
    }
    if (std::abs(fx) <= settings.abs_tol) return x;

    if (same_sign(fx, flo)) {
      lo = x;
      flo = wlo = fx;
      if (last_side == -1) whi *= 0.5;
      last_side = -1;
    } else {
      hi = x;
      fhi = whi = fx;
      if (last_side == 1) wlo *= 0.5;
      last_side = 1;
    }

    width_prev2 = width_prev;
    width_prev = width;
    if (hi - lo <= settings.rel_tol * std::max(std::abs(lo), std::abs(hi))) return best;
  }

  std::ostringstream os;
  os << "root refinement did not converge in " << settings.max_iterations
     << " iterations; bracket [" << lo << ", " << hi << "]";
  throw ConvergenceError(os.str(), best);
}

std::vector<Bracket> scan_sign_changes(const ScalarFunction& f, const std::vector<double>& points) {
  std::vector<Bracket> out;
  if (points.empty()) return out;
  double x_prev = points.front();
  double f_prev = f(x_prev);
  if (f_prev == 0.0) out.push_back({x_prev, x_prev});
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double x = points[i];
    const double fx = f(x);
    if (fx == 0.0) {
      out.push_back({x, x});
    } else if (f_prev != 0.0 && !same_sign(f_prev, fx)) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

QuadratureResult integrate_adaptive(const ScalarFunction& f, double a, double b,
                                    const QuadratureSettings& settings) {
  if (!(settings.abs_tol > 0.0)) throw DomainError("quadrature abs_tol must be > 0");
  QuadratureResult result;
  if (a == b) return result;
  if (a > b) {
    result = integrate_adaptive(f, b, a, settings);
    result.value = -result.value;
    return result;
  }

  SimpsonState st{f};
  const double fa = st.eval(a);
  const double fb = st.eval(b);
  const double fm = st.eval(0.5 * (a + b));
  const double whole = simpson(a, b, fa, fm, fb);
  result.value = adaptive_step(st, a, b, fa, fm, fb, whole, settings.abs_tol, settings.max_depth, 0);
  result.error_estimate = st.error;
  result.evaluations = st.evaluations;
  result.depth_limited = st.depth_limited;
  return result;
}

double central_difference(const ScalarFunction& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double log_two_sinh(double x) {
  if (!(x > 0.0)) throw DomainError("log_two_sinh requires x > 0, got " + std::to_string(x));
  // 2 sinh x = e^x (1 - e^{-2x}); expm1 keeps the small-x branch exact.
  return x + std::log(-std::expm1(-2.0 * x));
}

double coth_stable(double x) {
  if (!(x > 0.0)) throw DomainError("coth_stable requires x > 0, got " + std::to_string(x));
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 / x + x / 3.0 - x * x2 / 45.0;
  }
  return 1.0 + 2.0 / std::expm1(2.0 * x);
}

}  // namespace qhe::numerics

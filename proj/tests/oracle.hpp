#pragma once

// Reference values computed by a route independent of the code under test:
// adaptive Simpson quadrature with an explicit substitution for the kernel
// singularity, plus the closed form for power functions.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace detail {

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-12,
                               int depth = 52) {
  if (!(a < b)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Reference fractional integral at a single point. For alpha < 1 the kernel
// (x-t)^(alpha-1) blows up at t = x, so the last stretch is integrated in
// the variable u = (x-t)^alpha, which removes the singularity:
//   integral_{x-d}^{x} (x-t)^(alpha-1) f(t) dt
//     = (1/alpha) integral_0^{d^alpha} f(x - u^(1/alpha)) du.
inline double rl_reference(const std::function<double(double)>& f, double a,
                           double alpha, double x, double tol = 1e-12) {
  if (!(alpha > 0.0)) throw std::invalid_argument("rl_reference: alpha <= 0");
  if (x <= a) return 0.0;
  const double gamma = std::tgamma(alpha);

  if (alpha >= 1.0) {
    auto integrand = [&](double t) {
      return std::pow(x - t, alpha - 1.0) * f(t);
    };
    return adaptive_simpson(integrand, a, x, tol) / gamma;
  }

  const double d = 0.5 * (x - a);
  auto smooth = [&](double t) { return std::pow(x - t, alpha - 1.0) * f(t); };
  const double head = adaptive_simpson(smooth, a, x - d, tol);
  const double inv_alpha = 1.0 / alpha;
  auto tail_integrand = [&](double u) { return f(x - std::pow(u, inv_alpha)); };
  const double tail =
      inv_alpha * adaptive_simpson(tail_integrand, 0.0, std::pow(d, alpha), tol);
  return (head + tail) / gamma;
}

// I^alpha (t-a)^beta (x) = Gamma(beta+1)/Gamma(alpha+beta+1) (x-a)^(alpha+beta)
inline double power_rule(double a, double alpha, double beta, double x) {
  return std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 1.0) *
         std::pow(x - a, alpha + beta);
}

}  // namespace oracle

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace fracbv {

// Compensated accumulator (Neumaier's variant of Kahan summation).
// Error bound ~2*eps*sum|x| independent of the number of terms.
class NeumaierSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Gamma function. Backed by the platform's std::tgamma, which meets the
// <= 1e-13 relative-error requirement on [0.5, 5] with margin; the backend
// name is recorded in report metadata (see version.hpp).
inline double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("gamma_fn: argument must be positive and finite");
  return std::tgamma(x);
}

inline constexpr std::uint64_t fnv1a64_init = 0xcbf29ce484222325ull;

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = fnv1a64_init) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Dyadic rational in [-1, 1) with a 2^-20 denominator. Sampling catalog
// fixtures on dyadic grids then stays exact in double arithmetic, which the
// variation-identity tests rely on.
inline double dyadic_unit(std::uint64_t bits) {
  return std::ldexp(static_cast<double>(bits >> 43), -20) - 1.0;
}

namespace detail {

struct GaussRule24 {
  // Extended precision: consumers fold many rule evaluations into sums that
  // must stay correct to the last double bit.
  std::array<long double, 24> x{};  // nodes on [0, 1]
  std::array<long double, 24> w{};  // weights summing to 1
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence,
// mapped from [-1, 1] to [0, 1].
inline GaussRule24 compute_gauss24() {
  constexpr int n = 24;
  GaussRule24 rule;
  for (int k = 0; k < (n + 1) / 2; ++k) {
    long double x = std::cos(
        static_cast<long double>(M_PI) * (k + 0.75L) / (n + 0.5L));
    long double pp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const long double p2 =
            ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-18L) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * pp * pp);
    rule.x[k] = 0.5L * (1.0L - x);  // symmetric partner below
    rule.w[k] = 0.5L * w;
    rule.x[n - 1 - k] = 0.5L * (1.0L + x);
    rule.w[n - 1 - k] = 0.5L * w;
  }
  return rule;
}

inline const GaussRule24& gauss24() {
  static const GaussRule24 rule = compute_gauss24();
  return rule;
}

}  // namespace detail

}  // namespace fracbv

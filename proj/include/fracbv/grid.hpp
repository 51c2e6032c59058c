#pragma once

#include <cmath>
#include <stdexcept>

namespace fracbv {

// Uniform grid on [a, b] with n subintervals (n+1 nodes).
//
// node(i) is computed as a + (b-a)*(i/n) rather than a + i*h: the quotient
// i/n for the doubled grid, (2i)/(2n), is the same real number and therefore
// rounds to the same double, so every coarse node reappears bit-for-bit in
// refine(). On [0, 1] the nodes are exactly the dyadics i/n when n is a
// power of two.
struct Grid {
  double a = 0.0;
  double b = 1.0;
  long n = 1;

  double h() const { return (b - a) / static_cast<double>(n); }

  double node(long i) const {
    return a + (b - a) * (static_cast<double>(i) / static_cast<double>(n));
  }

  Grid refine() const { return Grid{a, b, 2 * n}; }
};

inline Grid make_grid(double a, double b, long n) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("make_grid: endpoints must be finite");
  if (!(a < b))
    throw std::invalid_argument("make_grid: need a < b");
  if (n < 1)
    throw std::invalid_argument("make_grid: need n >= 1");
  return Grid{a, b, n};
}

inline bool operator==(const Grid& x, const Grid& y) {
  return x.a == y.a && x.b == y.b && x.n == y.n;
}

}  // namespace fracbv

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "grid.hpp"
#include "numeric.hpp"

namespace fracbv {

struct FracOrder {
  double alpha;
  explicit FracOrder(double a) : alpha(a) {
    if (!std::isfinite(a) || !(a > 0.0))
      throw std::invalid_argument("FracOrder: order must be finite and > 0");
  }
};

// Quadrature weights for one output node: I(x_i) ~= sum_j w[j] * f(x_j).
struct WeightRow {
  long i = 0;
  std::vector<double> w;  // size i + 1
};

// Left-sided integral of order alpha,
//
//   I(x) = 1/Gamma(alpha) * integral_a^x (x - t)^(alpha-1) f(t) dt,
//
// discretised by integrating the kernel exactly against the piecewise-linear
// interpolant of the samples (product trapezoid). With s in [0, 1],
//
//   A(m) = integral_0^1 s * (m-1+s)^(alpha-1) ds
//   B(m) = integral_0^1 (1-s) * (m-1+s)^(alpha-1) ds
//
// give I(x_i) = h^alpha/Gamma(alpha) * [ A(i) f_0
//                + sum_{m=1}^{i-1} (A(m) + B(m+1)) f_{i-m} + B(1) f_i ].
//
// The weights depend only on the lag i - j, so the tables are O(n) and are
// shared by every output node. All weights are nonnegative (integrals of
// nonnegative integrands), and for alpha = 1 the rule collapses to the
// composite trapezoid rule.
//
// A and B have closed forms, but evaluating those for large m subtracts
// nearly equal numbers and loses up to m*eps relative accuracy, which is
// enough to break the weight-sum identity checked by the tests. For m >= 2
// the integrands are analytic on [0, 1], so a 24-point Gauss-Legendre rule
// evaluates them to machine precision instead; m = 1 keeps the exact forms
// A(1) = 1/(alpha+1), B(1) = 1/(alpha*(alpha+1)).
class RlOperator {
public:
  RlOperator(const Grid& grid, FracOrder order)
      : grid_(grid), alpha_(order.alpha) {
    const long n = grid_.n;
    a_.resize(static_cast<std::size_t>(n));
    b_.resize(static_cast<std::size_t>(n));
    a_[0] = 1.0 / (alpha_ + 1.0);
    b_[0] = 1.0 / (alpha_ * (alpha_ + 1.0));
    // Accumulate the moment integrals in extended precision so each stored
    // entry is correct to the last double bit; the row-sum identity consumes
    // a few hundred entries and cannot afford per-entry bias.
    const auto& gl = detail::gauss24();
    const long double ae = static_cast<long double>(alpha_) - 1.0L;
    for (long m = 2; m <= n; ++m) {
      long double sa = 0.0L, sb = 0.0L;
      for (std::size_t q = 0; q < gl.x.size(); ++q) {
        const long double s = gl.x[q];
        const long double kq =
            gl.w[q] * powl(static_cast<long double>(m - 1) + s, ae);
        sa += kq * s;
        sb += kq * (1.0L - s);
      }
      a_[static_cast<std::size_t>(m - 1)] = static_cast<double>(sa);
      b_[static_cast<std::size_t>(m - 1)] = static_cast<double>(sb);
    }
    scale_ = static_cast<double>(
        powl(static_cast<long double>(grid_.h()),
             static_cast<long double>(alpha_)) /
        std::tgamma(static_cast<long double>(alpha_)));
    if (!std::isfinite(scale_) || !(scale_ > 0.0))
      throw std::domain_error(
          "RlOperator: step^alpha / Gamma(alpha) not representable for this "
          "grid/order");
  }

  const Grid& grid() const { return grid_; }
  double alpha() const { return alpha_; }

  WeightRow weight_row(long i) const {
    if (i < 0 || i > grid_.n)
      throw std::invalid_argument("weight_row: node index out of range");
    WeightRow row;
    row.i = i;
    row.w.assign(static_cast<std::size_t>(i) + 1, 0.0);
    if (i == 0) return row;
    row.w[0] = scale_ * a_[static_cast<std::size_t>(i - 1)];
    for (long j = 1; j < i; ++j) {
      const long m = i - j;
      row.w[static_cast<std::size_t>(j)] =
          scale_ * (a_[static_cast<std::size_t>(m - 1)] +
                    b_[static_cast<std::size_t>(m)]);
    }
    row.w[static_cast<std::size_t>(i)] = scale_ * b_[0];
    return row;
  }

  double apply_at(const std::vector<double>& f, long i) const {
    check_input(f);
    if (i < 0 || i > grid_.n)
      throw std::invalid_argument("apply_at: node index out of range");
    return value_at(f, i);
  }

  std::vector<double> apply(const std::vector<double>& f) const {
    check_input(f);
    std::vector<double> out(f.size());
    out[0] = 0.0;  // I(a) = 0 by definition
    for (long i = 1; i <= grid_.n; ++i) {
      const double v = value_at(f, i);
      if (!std::isfinite(v))
        throw std::domain_error("RlOperator: non-finite output at node " +
                                std::to_string(i));
      out[static_cast<std::size_t>(i)] = v;
    }
    return out;
  }

private:
  void check_input(const std::vector<double>& f) const {
    if (f.size() != static_cast<std::size_t>(grid_.n) + 1)
      throw std::invalid_argument("RlOperator: sample size does not match grid");
    for (double v : f)
      if (!std::isfinite(v))
        throw std::invalid_argument("RlOperator: samples must be finite");
  }

  // Fixed summation order (increasing lag), compensated; rerunning on the
  // same inputs reproduces identical bits.
  double value_at(const std::vector<double>& f, long i) const {
    if (i == 0) return 0.0;
    NeumaierSum s;
    s.add(a_[static_cast<std::size_t>(i - 1)] * f[0]);
    for (long m = 1; m < i; ++m)
      s.add((a_[static_cast<std::size_t>(m - 1)] +
             b_[static_cast<std::size_t>(m)]) *
            f[static_cast<std::size_t>(i - m)]);
    s.add(b_[0] * f[static_cast<std::size_t>(i)]);
    return scale_ * s.value();
  }

  Grid grid_;
  double alpha_;
  double scale_;
  std::vector<double> a_, b_;
};

inline WeightRow rl_weights(const Grid& grid, FracOrder order, long i) {
  return RlOperator(grid, order).weight_row(i);
}

inline SampledFunction rl_integral(const SampledFunction& f, FracOrder order) {
  SampledFunction out;
  out.grid = f.grid;
  out.values = RlOperator(f.grid, order).apply(f.values);
  return out;
}

inline double rl_integral_at(const SampledFunction& f, FracOrder order,
                             long i) {
  return RlOperator(f.grid, order).apply_at(f.values, i);
}

// max_i | I^alpha(I^beta f)(x_i) - I^(alpha+beta) f(x_i) |, where the outer
// operator acts on the sampled inner image. Exact in the continuum; the
// discrete residual shrinks under refinement.
inline double semigroup_residual(const FunctionHandle& f, double alpha,
                                 double beta, const Grid& grid) {
  const SampledFunction fs = sample(f, grid);
  const RlOperator inner(grid, FracOrder{beta});
  const RlOperator outer(grid, FracOrder{alpha});
  const RlOperator direct(grid, FracOrder{alpha + beta});
  const std::vector<double> composed = outer.apply(inner.apply(fs.values));
  const std::vector<double> straight = direct.apply(fs.values);
  double worst = 0.0;
  for (std::size_t i = 0; i < composed.size(); ++i)
    worst = std::max(worst, std::abs(composed[i] - straight[i]));
  return worst;
}

struct MonotoneReport {
  bool pass = true;
  double tolerance = 0.0;
  double worst_drop = 0.0;   // most negative forward difference, as a drop >= 0
  long first_violation = -1;  // node index, -1 when none
};

// Checks that the image of a non-decreasing, nonnegative sample is itself
// non-decreasing up to a grid-resolution tolerance. The input must satisfy
// the hypothesis exactly; that part is a precondition, not a finding.
inline MonotoneReport monotone_image_check(const SampledFunction& g,
                                           FracOrder order) {
  const auto& v = g.values;
  if (v.empty() || v[0] < 0.0)
    throw std::invalid_argument("monotone_image_check: need g(a) >= 0");
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] < v[i])
      throw std::invalid_argument(
          "monotone_image_check: input is not non-decreasing");
    sup = std::max(sup, std::abs(v[i]));
  }
  sup = std::max(sup, std::abs(v.back()));

  const std::vector<double> img = RlOperator(g.grid, order).apply(v);
  const double h = g.grid.h();
  MonotoneReport rep;
  rep.tolerance = 10.0 * h * h * (1.0 + sup);
  for (std::size_t i = 0; i + 1 < img.size(); ++i) {
    const double drop = img[i] - img[i + 1];
    rep.worst_drop = std::max(rep.worst_drop, drop);
    if (drop > rep.tolerance && rep.first_violation < 0)
      rep.first_violation = static_cast<long>(i + 1);
  }
  rep.pass = rep.worst_drop <= rep.tolerance;
  return rep;
}

}  // namespace fracbv

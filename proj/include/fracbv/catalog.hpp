#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "numeric.hpp"

namespace fracbv {

using ParamMap = std::map<std::string, double>;

// A named scalar function on a fixed interval. Besides pointwise evaluation
// it can list its local extrema inside a window (used to make total-variation
// sums extrema-aware) and any points where variation is expected to
// accumulate (used to seed candidate scans).
class FunctionHandle {
public:
  using Eval = std::function<double(double)>;
  using ExtremaFn =
      std::function<void(double, double, std::size_t, std::vector<double>&)>;

  FunctionHandle() = default;
  FunctionHandle(std::string name, ParamMap params, double lo, double hi,
                 Eval eval, ExtremaFn extrema = {},
                 std::vector<double> singular = {})
      : name_(std::move(name)),
        params_(std::move(params)),
        lo_(lo),
        hi_(hi),
        eval_(std::move(eval)),
        extrema_(std::move(extrema)),
        singular_(std::move(singular)) {}

  double operator()(double x) const { return eval_(x); }

  const std::string& name() const { return name_; }
  const ParamMap& params() const { return params_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }

  // Local extrema in the open window (lo, hi), ascending, at most cap of
  // them (coarsest-scale ones first when truncation is needed).
  std::vector<double> extrema_in(double lo, double hi, std::size_t cap) const {
    std::vector<double> out;
    if (extrema_) extrema_(lo, hi, cap, out);
    return out;
  }

  const std::vector<double>& singular_points() const { return singular_; }

private:
  std::string name_;
  ParamMap params_;
  double lo_ = 0.0;
  double hi_ = 1.0;
  Eval eval_;
  ExtremaFn extrema_;
  std::vector<double> singular_;
};

struct SampledFunction {
  Grid grid;
  std::vector<double> values;
  // Set when the samples came from a catalog function; raw sample vectors
  // leave it empty.
  std::shared_ptr<const FunctionHandle> source;
};

namespace detail {

inline double require_param(const ParamMap& p, const std::string& key,
                            double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

inline long require_int_param(const ParamMap& p, const std::string& key,
                              long fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  const double v = it->second;
  if (!(std::isfinite(v)) || v != std::floor(v))
    throw std::invalid_argument("catalog_lookup: parameter '" + key +
                                "' must be an integer");
  return static_cast<long>(v);
}

inline void reject_unknown_params(const ParamMap& p,
                                  std::initializer_list<const char*> known) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok)
      throw std::invalid_argument("catalog_lookup: unknown parameter '" + key +
                                  "'");
  }
}

// Piecewise-linear interpolation through equispaced breakpoint values.
// Breakpoint j sits at lo + (hi-lo)*(j/k); on [0, 1] with k a power of two
// the arithmetic below is exact for dyadic x, so sampled values land on the
// same dyadic lattice as the breakpoint values.
inline double interp_equispaced(const std::vector<double>& vals, double lo,
                                double hi, double x) {
  const long k = static_cast<long>(vals.size()) - 1;
  const double u = (x - lo) / (hi - lo);
  const double s = u * static_cast<double>(k);
  long j = static_cast<long>(std::floor(s));
  j = std::clamp(j, 0L, k - 1);
  const double theta = s - static_cast<double>(j);
  return vals[static_cast<std::size_t>(j)] +
         (vals[static_cast<std::size_t>(j) + 1] -
          vals[static_cast<std::size_t>(j)]) *
             theta;
}

inline void equispaced_interior_extrema(double dom_lo, double dom_hi, long k,
                                        double lo, double hi, std::size_t cap,
                                        std::vector<double>& out) {
  const double span = dom_hi - dom_lo;
  long j_lo = static_cast<long>(std::floor((lo - dom_lo) / span * k)) - 1;
  long j_hi = static_cast<long>(std::ceil((hi - dom_lo) / span * k)) + 1;
  j_lo = std::max(j_lo, 1L);
  j_hi = std::min(j_hi, k - 1);
  std::vector<double> pts;
  for (long j = j_lo; j <= j_hi; ++j) {
    const double t =
        dom_lo + span * (static_cast<double>(j) / static_cast<double>(k));
    if (t > lo && t < hi) pts.push_back(t);
  }
  if (pts.size() > cap && cap > 0) {
    const std::size_t stride = (pts.size() + cap - 1) / cap;
    std::vector<double> thin;
    for (std::size_t i = 0; i < pts.size(); i += stride) thin.push_back(pts[i]);
    pts.swap(thin);
  }
  out.insert(out.end(), pts.begin(), pts.end());
}

}  // namespace detail

// Named test functions. Parameters not listed are rejected.
//
//   constant                c=1
//   linear                  slope=1, intercept=0
//   power                   beta=1            (x - lo)^beta, beta >= 0
//   sin_recip               -                 sin(1/x), 0 at x = 0
//   piecewise_linear_random k=8, seed=0       dyadic values in [-1, 1)
//   weierstrass             hurst=0.5, lambda=2, terms=32
//   takagi                  w=0.75, terms=40
inline FunctionHandle catalog_lookup(const std::string& name,
                                     const ParamMap& params = {},
                                     double lo = 0.0, double hi = 1.0) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw std::invalid_argument("catalog_lookup: need finite lo < hi");

  if (name == "constant") {
    detail::reject_unknown_params(params, {"c"});
    const double c = detail::require_param(params, "c", 1.0);
    return FunctionHandle(name, {{"c", c}}, lo, hi,
                          [c](double) { return c; });
  }

  if (name == "linear") {
    detail::reject_unknown_params(params, {"slope", "intercept"});
    const double s = detail::require_param(params, "slope", 1.0);
    const double c = detail::require_param(params, "intercept", 0.0);
    return FunctionHandle(name, {{"slope", s}, {"intercept", c}}, lo, hi,
                          [s, c](double x) { return s * x + c; });
  }

  if (name == "power") {
    detail::reject_unknown_params(params, {"beta"});
    const double beta = detail::require_param(params, "beta", 1.0);
    if (!(beta >= 0.0))
      throw std::invalid_argument("catalog_lookup: power needs beta >= 0");
    return FunctionHandle(name, {{"beta", beta}}, lo, hi,
                          [beta, lo](double x) {
                            const double u = x - lo;
                            return std::pow(u > 0.0 ? u : 0.0, beta);
                          });
  }

  if (name == "sin_recip") {
    detail::reject_unknown_params(params, {});
    if (lo < 0.0)
      throw std::invalid_argument("catalog_lookup: sin_recip needs lo >= 0");
    auto eval = [](double x) { return x > 0.0 ? std::sin(1.0 / x) : 0.0; };
    // Interior extrema at t_j = 2/((2j+1)*pi), largest first.
    auto extrema = [](double wlo, double whi, std::size_t cap,
                      std::vector<double>& out) {
      if (whi <= 0.0) return;
      long j = 0;
      if (whi < 2.0 / M_PI) {
        j = static_cast<long>(std::floor((2.0 / (M_PI * whi) - 1.0) / 2.0)) + 1;
        if (j < 0) j = 0;
      }
      std::vector<double> pts;
      for (; pts.size() < cap; ++j) {
        const double t = 2.0 / ((2.0 * static_cast<double>(j) + 1.0) * M_PI);
        if (t <= wlo) break;
        if (t < whi) pts.push_back(t);
      }
      std::sort(pts.begin(), pts.end());
      out.insert(out.end(), pts.begin(), pts.end());
    };
    std::vector<double> singular;
    if (lo == 0.0) singular.push_back(0.0);
    return FunctionHandle(name, {}, lo, hi, eval, extrema, std::move(singular));
  }

  if (name == "piecewise_linear_random") {
    detail::reject_unknown_params(params, {"k", "seed"});
    const long k = detail::require_int_param(params, "k", 8);
    const long seed = detail::require_int_param(params, "seed", 0);
    if (k < 1)
      throw std::invalid_argument(
          "catalog_lookup: piecewise_linear_random needs k >= 1");
    std::mt19937_64 gen(static_cast<std::uint64_t>(seed));
    std::vector<double> vals(static_cast<std::size_t>(k) + 1);
    for (auto& v : vals) v = dyadic_unit(gen());
    auto eval = [vals, lo, hi](double x) {
      return detail::interp_equispaced(vals, lo, hi, x);
    };
    auto extrema = [lo, hi, k](double wlo, double whi, std::size_t cap,
                               std::vector<double>& out) {
      detail::equispaced_interior_extrema(lo, hi, k, wlo, whi, cap, out);
    };
    return FunctionHandle(name,
                          {{"k", static_cast<double>(k)},
                           {"seed", static_cast<double>(seed)}},
                          lo, hi, eval, extrema);
  }

  if (name == "weierstrass") {
    detail::reject_unknown_params(params, {"hurst", "lambda", "terms"});
    const double hurst = detail::require_param(params, "hurst", 0.5);
    const double lambda = detail::require_param(params, "lambda", 2.0);
    const long terms = detail::require_int_param(params, "terms", 32);
    if (!(hurst > 0.0 && hurst < 1.0))
      throw std::invalid_argument("catalog_lookup: weierstrass needs 0 < hurst < 1");
    if (!(lambda > 1.0))
      throw std::invalid_argument("catalog_lookup: weierstrass needs lambda > 1");
    if (terms < 1 || terms > 64)
      throw std::invalid_argument("catalog_lookup: weierstrass needs 1 <= terms <= 64");
    auto eval = [hurst, lambda, terms](double x) {
      NeumaierSum s;
      double freq = 1.0, amp = 1.0;
      const double decay = std::pow(lambda, -hurst);
      for (long j = 0; j < terms; ++j) {
        s.add(amp * std::sin(freq * x));
        freq *= lambda;
        amp *= decay;
      }
      return s.value();
    };
    return FunctionHandle(name,
                          {{"hurst", hurst},
                           {"lambda", lambda},
                           {"terms", static_cast<double>(terms)}},
                          lo, hi, eval);
  }

  if (name == "takagi") {
    detail::reject_unknown_params(params, {"w", "terms"});
    const double w = detail::require_param(params, "w", 0.75);
    const long terms = detail::require_int_param(params, "terms", 40);
    if (!(w > 0.0 && w < 1.0))
      throw std::invalid_argument("catalog_lookup: takagi needs 0 < w < 1");
    if (terms < 1 || terms > 64)
      throw std::invalid_argument("catalog_lookup: takagi needs 1 <= terms <= 64");
    auto eval = [w, terms](double x) {
      NeumaierSum s;
      double scale = 1.0, amp = 1.0;
      for (long j = 0; j < terms; ++j) {
        const double y = scale * x;
        s.add(amp * std::abs(y - std::nearbyint(y)));
        scale *= 2.0;
        amp *= w;
      }
      return s.value();
    };
    return FunctionHandle(name,
                          {{"w", w}, {"terms", static_cast<double>(terms)}},
                          lo, hi, eval);
  }

  throw std::invalid_argument(
      "catalog_lookup: unknown function '" + name +
      "' (known: constant, linear, power, sin_recip, piecewise_linear_random, "
      "weierstrass, takagi)");
}

inline SampledFunction sample(const FunctionHandle& f, const Grid& grid) {
  if (grid.a < f.domain_lo() || grid.b > f.domain_hi())
    throw std::invalid_argument("sample: grid exceeds the function's domain");
  SampledFunction s;
  s.grid = grid;
  s.values.resize(static_cast<std::size_t>(grid.n) + 1);
  for (long i = 0; i <= grid.n; ++i) {
    const double v = f(grid.node(i));
    if (!std::isfinite(v))
      throw std::domain_error("sample: non-finite value at node " +
                              std::to_string(i));
    s.values[static_cast<std::size_t>(i)] = v;
  }
  s.source = std::make_shared<FunctionHandle>(f);
  return s;
}

// Piecewise-linear interpolant through the samples, exposed as a handle so
// the variation and scan tools can treat computed images like catalog
// functions. Interior grid nodes double as the extrema hints.
inline FunctionHandle from_samples(const SampledFunction& s) {
  if (s.values.size() != static_cast<std::size_t>(s.grid.n) + 1)
    throw std::invalid_argument("from_samples: values/grid size mismatch");
  const auto vals = std::make_shared<const std::vector<double>>(s.values);
  const double lo = s.grid.a, hi = s.grid.b;
  const long n = s.grid.n;
  auto eval = [vals, lo, hi](double x) {
    return detail::interp_equispaced(*vals, lo, hi, x);
  };
  auto extrema = [lo, hi, n](double wlo, double whi, std::size_t cap,
                             std::vector<double>& out) {
    detail::equispaced_interior_extrema(lo, hi, n, wlo, whi, cap, out);
  };
  return FunctionHandle("sampled_interpolant",
                        {{"n", static_cast<double>(n)}}, lo, hi, eval,
                        extrema);
}

}  // namespace fracbv

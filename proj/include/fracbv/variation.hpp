#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "fracint.hpp"
#include "grid.hpp"
#include "numeric.hpp"

namespace fracbv {

// Total variation of the samples over node range [i_lo, i_hi]. This is the
// exact variation of the piecewise-linear interpolant on that range and a
// lower bound for the variation of whatever was sampled.
inline double discrete_tv(const SampledFunction& f, long i_lo, long i_hi) {
  const long n = f.grid.n;
  if (i_lo < 0 || i_hi > n || i_lo > i_hi)
    throw std::invalid_argument("discrete_tv: bad node range");
  NeumaierSum s;
  for (long i = i_lo + 1; i <= i_hi; ++i)
    s.add(std::abs(f.values[static_cast<std::size_t>(i)] -
                   f.values[static_cast<std::size_t>(i - 1)]));
  return s.value();
}

inline double discrete_tv(const SampledFunction& f) {
  return discrete_tv(f, 0, f.grid.n);
}

inline double bv_norm(const SampledFunction& f) {
  return std::abs(f.values.at(0)) + discrete_tv(f);
}

// f = rising - falling with both parts non-decreasing. Increments route to
// exactly one part, so the identity holds exactly whenever the sample
// differences are exact (dyadic fixtures), and to one rounding otherwise.
// Starting values: rising(a) = max(f(a), 0), falling(a) = max(-f(a), 0).
struct JordanPair {
  SampledFunction rising;
  SampledFunction falling;
};

inline JordanPair jordan_decompose(const SampledFunction& f) {
  const std::size_t sz = f.values.size();
  if (sz != static_cast<std::size_t>(f.grid.n) + 1)
    throw std::invalid_argument("jordan_decompose: values/grid size mismatch");
  JordanPair out;
  out.rising.grid = f.grid;
  out.falling.grid = f.grid;
  out.rising.values.resize(sz);
  out.falling.values.resize(sz);
  double g = f.values[0] >= 0.0 ? f.values[0] : 0.0;
  out.rising.values[0] = g;
  out.falling.values[0] = g - f.values[0];
  for (std::size_t i = 1; i < sz; ++i) {
    const double d = f.values[i] - f.values[i - 1];
    if (d > 0.0) g += d;
    out.rising.values[i] = g;
    out.falling.values[i] = g - f.values[i];
  }
  return out;
}

// Variation of f over [lo, hi] measured on nsub equispaced subintervals,
// with the function's own extrema merged in (capped at 2*nsub) so oscillation
// between sample points is not missed.
inline double window_tv(const FunctionHandle& f, double lo, double hi,
                        long nsub) {
  if (nsub < 1) throw std::invalid_argument("window_tv: need nsub >= 1");
  if (!(lo < hi)) return 0.0;
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(nsub) + 1);
  for (long i = 0; i <= nsub; ++i)
    pts.push_back(lo + (hi - lo) * (static_cast<double>(i) /
                                    static_cast<double>(nsub)));
  const auto extra =
      f.extrema_in(lo, hi, 2 * static_cast<std::size_t>(nsub));
  pts.insert(pts.end(), extra.begin(), extra.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  NeumaierSum s;
  double prev = f(pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double cur = f(pts[i]);
    s.add(std::abs(cur - prev));
    prev = cur;
  }
  return s.value();
}

inline double estimate_sup_norm(const FunctionHandle& f) {
  const double lo = f.domain_lo(), hi = f.domain_hi();
  double sup = 0.0;
  for (long i = 0; i <= 4096; ++i) {
    const double x = lo + (hi - lo) * (static_cast<double>(i) / 4096.0);
    sup = std::max(sup, std::abs(f(x)));
  }
  for (double x : f.extrema_in(lo, hi, 1024))
    sup = std::max(sup, std::abs(f(x)));
  return sup;
}

enum class VarClass { bounded, unbounded, inconclusive };

inline const char* to_string(VarClass c) {
  switch (c) {
    case VarClass::bounded: return "bounded";
    case VarClass::unbounded: return "unbounded";
    default: return "inconclusive";
  }
}

struct ProfileParams {
  double base_delta = 0.25;  // first window half-width, halved per level
  int levels = 8;
  long n_per_level = 256;  // subintervals at level 0, doubled per level
};

struct ProfileThresholds {
  double rho = 1.5;     // growth factor that votes "unbounded"
  int m = 3;            // consecutive votes required
  double floor_mult = 10.0;       // TV must also exceed this multiple of sup|f|
  double bounded_ceiling = 1.05;  // growth below this votes "bounded"
  // With rho inside the bounded band the two verdicts cannot be separated.
  bool degenerate() const { return !(rho > bounded_ceiling); }
};

inline void validate(const ProfileParams& p) {
  if (!(p.base_delta > 0.0) || !std::isfinite(p.base_delta))
    throw std::invalid_argument("ProfileParams: need base_delta > 0");
  if (p.levels < 1)
    throw std::invalid_argument("ProfileParams: need levels >= 1");
  if (p.n_per_level < 4)
    throw std::invalid_argument("ProfileParams: need n_per_level >= 4");
}

inline void validate(const ProfileThresholds& t) {
  if (!(t.rho > 0.0) || !(t.bounded_ceiling > 0.0) || !(t.floor_mult >= 0.0))
    throw std::invalid_argument("ProfileThresholds: thresholds must be positive");
  if (t.m < 1) throw std::invalid_argument("ProfileThresholds: need m >= 1");
}

inline VarClass classify_growth(const std::vector<double>& ratios,
                                double tv_last, double sup_norm,
                                const ProfileThresholds& th) {
  if (th.degenerate()) return VarClass::inconclusive;
  if (ratios.size() < static_cast<std::size_t>(th.m))
    return VarClass::inconclusive;
  bool all_up = true, all_flat = true;
  for (std::size_t j = ratios.size() - static_cast<std::size_t>(th.m);
       j < ratios.size(); ++j) {
    all_up = all_up && ratios[j] > th.rho;
    all_flat = all_flat && ratios[j] < th.bounded_ceiling;
  }
  if (all_up && tv_last > th.floor_mult * sup_norm) return VarClass::unbounded;
  if (all_flat) return VarClass::bounded;
  return VarClass::inconclusive;
}

namespace detail {
// Stand-in for an infinite growth ratio (fine TV positive on a window where
// the coarse TV vanished); keeps reports free of non-finite values.
inline constexpr double kDivergedRatio = 1e300;

inline double growth_ratio(double fine, double coarse) {
  if (coarse > 0.0) return fine / coarse;
  return fine > 0.0 ? kDivergedRatio : 1.0;
}
}  // namespace detail

struct VariationLevel {
  double window_lo = 0.0;
  double window_hi = 0.0;
  double delta = 0.0;
  long nsub = 0;
  double tv = 0.0;
  double tv_coarse = 0.0;  // same window at 4x coarser spacing
};

struct VariationReport {
  double center = 0.0;
  std::vector<VariationLevel> levels;
  std::vector<double> growth_ratios;  // tv / tv_coarse per level
  VarClass classification = VarClass::inconclusive;
  double sup_norm = 0.0;
  double tv_floor = 0.0;
  ProfileParams params;
  ProfileThresholds thresholds;
};

// Shrinking-window variation profile at x0. Each level halves the window
// half-width and doubles the subinterval count; the growth ratio compares
// the same window sampled at 4x coarser spacing, so resolving more variation
// in a fixed window reads as growth even while the window shrinks. Near a
// point of unbounded variation the ratios stay high at every level; anywhere
// else they settle to 1 once the sampling resolves the function.
inline VariationReport variation_profile(const FunctionHandle& f, double x0,
                                         const ProfileParams& params = {},
                                         const ProfileThresholds& th = {}) {
  validate(params);
  validate(th);
  if (!(x0 >= f.domain_lo() && x0 <= f.domain_hi()))
    throw std::invalid_argument("variation_profile: x0 outside the domain");

  VariationReport rep;
  rep.center = x0;
  rep.params = params;
  rep.thresholds = th;
  rep.sup_norm = estimate_sup_norm(f);
  rep.tv_floor = th.floor_mult * rep.sup_norm;

  double delta = params.base_delta;
  long nsub = params.n_per_level;
  for (int k = 0; k < params.levels; ++k) {
    VariationLevel lev;
    lev.delta = delta;
    lev.window_lo = std::max(f.domain_lo(), x0 - delta);
    lev.window_hi = std::min(f.domain_hi(), x0 + delta);
    lev.nsub = nsub;
    lev.tv = window_tv(f, lev.window_lo, lev.window_hi, nsub);
    lev.tv_coarse = window_tv(f, lev.window_lo, lev.window_hi,
                              std::max(1L, nsub / 4));
    rep.levels.push_back(lev);
    rep.growth_ratios.push_back(detail::growth_ratio(lev.tv, lev.tv_coarse));
    delta *= 0.5;
    nsub *= 2;
  }
  rep.classification = classify_growth(rep.growth_ratios,
                                       rep.levels.back().tv, rep.sup_norm, th);
  return rep;
}

struct WindowGrowthReport {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<long> nsubs;
  std::vector<double> tvs;
  std::vector<double> ratios;  // successive refinement, one fewer than tvs
  VarClass classification = VarClass::inconclusive;
  double sup_norm = 0.0;
};

// Fixed-window variant: keeps [lo, hi] and refines the sampling 4x per
// level. Bounded variation on the window makes the TVs converge (ratios
// near 1); unbounded variation keeps them growing.
inline WindowGrowthReport window_growth(const FunctionHandle& f, double lo,
                                        double hi, int levels, long n0,
                                        const ProfileThresholds& th = {}) {
  validate(th);
  if (levels < 2) throw std::invalid_argument("window_growth: need levels >= 2");
  if (n0 < 1) throw std::invalid_argument("window_growth: need n0 >= 1");
  if (!(lo >= f.domain_lo() && hi <= f.domain_hi() && lo < hi))
    throw std::invalid_argument("window_growth: bad window");
  WindowGrowthReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.sup_norm = estimate_sup_norm(f);
  long n = n0;
  for (int k = 0; k < levels; ++k) {
    rep.nsubs.push_back(n);
    rep.tvs.push_back(window_tv(f, lo, hi, n));
    if (k > 0)
      rep.ratios.push_back(
          detail::growth_ratio(rep.tvs[static_cast<std::size_t>(k)],
                               rep.tvs[static_cast<std::size_t>(k) - 1]));
    n *= 4;
  }
  rep.classification =
      classify_growth(rep.ratios, rep.tvs.back(), rep.sup_norm, th);
  return rep;
}

struct UvpScanResult {
  std::vector<double> candidates;        // ascending, deduplicated
  std::vector<VariationReport> reports;  // aligned with candidates
  std::vector<double> unbounded;
  std::vector<double> inconclusive;
};

inline UvpScanResult detect_uvp_at(const FunctionHandle& f,
                                   std::vector<double> candidates,
                                   const ProfileParams& params = {},
                                   const ProfileThresholds& th = {}) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  UvpScanResult out;
  out.candidates = std::move(candidates);
  out.reports.reserve(out.candidates.size());
  for (double x0 : out.candidates) {
    out.reports.push_back(variation_profile(f, x0, params, th));
    switch (out.reports.back().classification) {
      case VarClass::unbounded: out.unbounded.push_back(x0); break;
      case VarClass::inconclusive: out.inconclusive.push_back(x0); break;
      case VarClass::bounded: break;
    }
  }
  return out;
}

// Scans every stride-th node of the grid plus the function's own flagged
// points. The verdict is relative to this candidate set: points between
// candidates are not examined.
inline UvpScanResult detect_uvp(const FunctionHandle& f, const Grid& grid,
                                long stride = 1,
                                const ProfileParams& params = {},
                                const ProfileThresholds& th = {}) {
  if (stride < 1) throw std::invalid_argument("detect_uvp: need stride >= 1");
  if (grid.a < f.domain_lo() || grid.b > f.domain_hi())
    throw std::invalid_argument("detect_uvp: grid exceeds the function's domain");
  std::vector<double> candidates;
  for (long i = 0; i <= grid.n; i += stride) candidates.push_back(grid.node(i));
  if (candidates.back() != grid.node(grid.n))
    candidates.push_back(grid.node(grid.n));
  for (double s : f.singular_points())
    if (s >= grid.a && s <= grid.b) candidates.push_back(s);
  return detect_uvp_at(f, std::move(candidates), params, th);
}

struct OperatorBoundReport {
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  double f_bv = 0.0;
  double image_bv = 0.0;
  double bound_constant = 0.0;  // 2 (b-a)^alpha / Gamma(alpha+1)
  double bound = 0.0;           // bound_constant * f_bv
  double ratio = 0.0;           // image_bv / bound
  double slack = 0.0;           // discretisation allowance added to the bound
  bool within = false;
  bool catalog_backed = false;  // samples came from a catalog function
};

// Checks ||I f||_BV <= 2 (b-a)^alpha / Gamma(alpha+1) * ||f||_BV on the
// grid. The allowance covers the quadrature's own variation error; the
// underlying inequality needs f continuous, so raw sample vectors are
// still checked but flagged via catalog_backed = false.
inline OperatorBoundReport operator_bound_check(const SampledFunction& f,
                                                const RlOperator& op) {
  if (!(f.grid == op.grid()))
    throw std::invalid_argument("operator_bound_check: grid mismatch");
  OperatorBoundReport rep;
  rep.alpha = op.alpha();
  rep.a = f.grid.a;
  rep.b = f.grid.b;
  rep.catalog_backed = static_cast<bool>(f.source);
  rep.f_bv = bv_norm(f);

  SampledFunction img;
  img.grid = f.grid;
  img.values = op.apply(f.values);
  rep.image_bv = bv_norm(img);

  rep.bound_constant = 2.0 * std::pow(f.grid.b - f.grid.a, rep.alpha) /
                       gamma_fn(rep.alpha + 1.0);
  rep.bound = rep.bound_constant * rep.f_bv;
  rep.slack = 1e-6 + 10.0 * std::pow(f.grid.h(), std::min(rep.alpha, 1.0)) *
                         rep.f_bv;
  rep.ratio = rep.bound > 0.0 ? rep.image_bv / rep.bound : 0.0;
  rep.within = rep.image_bv <= rep.bound + rep.slack;
  return rep;
}

inline OperatorBoundReport operator_bound_check(const SampledFunction& f,
                                                FracOrder order) {
  return operator_bound_check(f, RlOperator(f.grid, order));
}

}  // namespace fracbv

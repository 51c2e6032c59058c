#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <fracbv/catalog.hpp>
#include <fracbv/fracint.hpp>
#include <fracbv/grid.hpp>
#include <fracbv/variation.hpp>

using namespace fracbv;

namespace {

SampledFunction pwl_samples(long k, long seed, long n) {
  const auto f = catalog_lookup(
      "piecewise_linear_random",
      {{"k", static_cast<double>(k)}, {"seed", static_cast<double>(seed)}});
  return sample(f, make_grid(0.0, 1.0, n));
}

}  // namespace

TEST_CASE("discrete_tv on a hand-checked vector") {
  SampledFunction f;
  f.grid = make_grid(0.0, 1.0, 3);
  f.values = {0.0, 1.0, -1.0, 0.5};
  CHECK(discrete_tv(f) == 4.5);
  CHECK(discrete_tv(f, 0, 1) == 1.0);
  CHECK(discrete_tv(f, 1, 3) == 3.5);
  CHECK(bv_norm(f) == 4.5);
  f.values[0] = -2.0;
  CHECK(bv_norm(f) == std::abs(-2.0) + discrete_tv(f));
  CHECK_THROWS_AS(discrete_tv(f, -1, 2), std::invalid_argument);
  CHECK_THROWS_AS(discrete_tv(f, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(discrete_tv(f, 0, 4), std::invalid_argument);
}

TEST_CASE("variation is exactly additive over subranges for dyadic samples") {
  for (long seed : {1L, 2L, 3L}) {
    const SampledFunction f = pwl_samples(16, seed, 1024);
    for (long mid : {1L, 300L, 512L, 1023L})
      CHECK(discrete_tv(f) == discrete_tv(f, 0, mid) + discrete_tv(f, mid, 1024));
  }
}

TEST_CASE("refinement never decreases the measured variation") {
  const auto f = catalog_lookup("sin_recip");
  const Grid coarse = make_grid(0.0, 1.0, 256);
  const double tv_c = discrete_tv(sample(f, coarse));
  const double tv_f = discrete_tv(sample(f, coarse.refine()));
  CHECK(tv_f >= tv_c);
}

TEST_CASE("jordan decomposition identities hold exactly on dyadic fixtures") {
  for (long seed : {5L, 6L, 7L, 8L}) {
    const SampledFunction f = pwl_samples(8, seed, 512);
    const JordanPair jp = jordan_decompose(f);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      CHECK(jp.rising.values[i] - jp.falling.values[i] == f.values[i]);
      CHECK(jp.rising.values[i] >= 0.0);
      CHECK(jp.falling.values[i] >= 0.0);
      if (i > 0) {
        CHECK(jp.rising.values[i] >= jp.rising.values[i - 1]);
        CHECK(jp.falling.values[i] >= jp.falling.values[i - 1]);
      }
    }
    // The split is tight: the parts' variations add up to the total exactly.
    CHECK(discrete_tv(f) ==
          discrete_tv(jp.rising) + discrete_tv(jp.falling));
    // Endpoint normalisation by the sign of f(a).
    const double f0 = f.values[0];
    if (f0 >= 0.0) {
      CHECK(jp.rising.values[0] == f0);
      CHECK(jp.falling.values[0] == 0.0);
    } else {
      CHECK(jp.rising.values[0] == 0.0);
      CHECK(jp.falling.values[0] == -f0);
    }
  }
}

TEST_CASE("window_tv agrees with the closed-form oscillation count") {
  // sin(1/x) on [2/(9 pi), 1]: u = 1/x runs over [1, 9 pi/2], whose monotone
  // pieces contribute (1 - sin 1) + 4 * 2, so TV = 9 - sin(1).
  const auto f = catalog_lookup("sin_recip");
  const double lo = 2.0 / (9.0 * M_PI);
  const double exact = 9.0 - std::sin(1.0);
  CHECK(window_tv(f, lo, 1.0, 1024) == Catch::Approx(exact).margin(1e-9));
  CHECK(window_tv(f, lo, 1.0, 4096) == Catch::Approx(exact).margin(1e-9));
  CHECK_THROWS_AS(window_tv(f, 0.1, 0.9, 0), std::invalid_argument);
  CHECK(window_tv(f, 0.5, 0.5, 16) == 0.0);
}

TEST_CASE("variation profile flags the singular point and clears elsewhere") {
  const auto f = catalog_lookup("sin_recip");
  const VariationReport at0 = variation_profile(f, 0.0);
  CHECK(at0.classification == VarClass::unbounded);
  REQUIRE(at0.levels.size() == 8);
  REQUIRE(at0.growth_ratios.size() == 8);
  CHECK(at0.levels.back().tv > at0.tv_floor);

  const VariationReport at_half = variation_profile(f, 0.5);
  CHECK(at_half.classification == VarClass::bounded);

  const auto lin = catalog_lookup("linear");
  CHECK(variation_profile(lin, 0.3).classification == VarClass::bounded);
  CHECK(variation_profile(lin, 0.0).classification == VarClass::bounded);

  CHECK_THROWS_AS(variation_profile(f, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(variation_profile(f, 0.5, ProfileParams{0.0, 8, 256}),
                  std::invalid_argument);
}

TEST_CASE("degenerate thresholds refuse to classify") {
  const auto f = catalog_lookup("sin_recip");
  ProfileThresholds th;
  th.rho = 1.0;  // inside the bounded band
  CHECK(th.degenerate());
  CHECK(variation_profile(f, 0.0, {}, th).classification ==
        VarClass::inconclusive);
  CHECK(variation_profile(f, 0.5, {}, th).classification ==
        VarClass::inconclusive);
}

TEST_CASE("constant functions classify bounded with zero variation") {
  const auto c = catalog_lookup("constant", {{"c", 0.0}});
  const VariationReport rep = variation_profile(c, 0.5);
  CHECK(rep.classification == VarClass::bounded);
  CHECK(rep.levels.back().tv == 0.0);
  CHECK(rep.sup_norm == 0.0);
}

TEST_CASE("detect_uvp isolates the blow-up point of the oscillator") {
  const auto f = catalog_lookup("sin_recip");
  const UvpScanResult scan = detect_uvp(f, make_grid(0.0, 1.0, 64));
  REQUIRE(scan.candidates.size() == 65);
  REQUIRE(scan.unbounded.size() == 1);
  CHECK(scan.unbounded[0] == 0.0);
  CHECK(scan.inconclusive.empty());
  REQUIRE(scan.reports.size() == 65);
  CHECK(scan.reports[0].classification == VarClass::unbounded);

  const auto lin = catalog_lookup("linear");
  const UvpScanResult clean = detect_uvp(lin, make_grid(0.0, 1.0, 64));
  CHECK(clean.unbounded.empty());
  CHECK(clean.inconclusive.empty());

  const UvpScanResult strided = detect_uvp(f, make_grid(0.0, 1.0, 64), 8);
  CHECK(strided.candidates.size() == 9);
  REQUIRE(strided.unbounded.size() == 1);
  CHECK(strided.unbounded[0] == 0.0);

  CHECK_THROWS_AS(detect_uvp(f, make_grid(0.0, 1.0, 64), 0),
                  std::invalid_argument);
}

TEST_CASE("fixed-window growth classifies windows by their variation") {
  const auto f = catalog_lookup("sin_recip");
  const WindowGrowthReport inner = window_growth(f, 0.25, 0.75, 5, 64);
  CHECK(inner.classification == VarClass::bounded);
  const WindowGrowthReport touching = window_growth(f, 0.0, 0.5, 5, 64);
  CHECK(touching.classification == VarClass::unbounded);
  REQUIRE(touching.ratios.size() == 4);
  CHECK(touching.tvs.back() > touching.tvs.front());

  const auto lin = catalog_lookup("linear");
  CHECK(window_growth(lin, 0.1, 0.9, 5, 64).classification ==
        VarClass::bounded);
  CHECK_THROWS_AS(window_growth(f, 0.5, 0.4, 5, 64), std::invalid_argument);
  CHECK_THROWS_AS(window_growth(f, 0.1, 0.9, 1, 64), std::invalid_argument);
}

TEST_CASE("operator bound holds with generous margin on random fixtures") {
  const Grid g = make_grid(0.0, 1.0, 1024);
  for (long seed : {7L, 21L}) {
    const SampledFunction f = pwl_samples(8, seed, 1024);
    for (double a : {0.25, 0.5, 1.0, 1.5}) {
      const OperatorBoundReport rep = operator_bound_check(f, FracOrder{a});
      CHECK(rep.within);
      CHECK(rep.ratio < 0.9);
      CHECK(rep.catalog_backed);
      CHECK(rep.f_bv > 0.0);
      CHECK(rep.bound == rep.bound_constant * rep.f_bv);
    }
  }

  SampledFunction raw;
  raw.grid = g;
  raw.values.assign(1025, 0.5);
  const OperatorBoundReport rep = operator_bound_check(raw, FracOrder{0.5});
  CHECK_FALSE(rep.catalog_backed);
  CHECK(rep.within);
}

TEST_CASE("operator bound regression baseline") {
  // Frozen numbers for one fixture so silent behaviour drift is caught.
  const SampledFunction f = pwl_samples(8, 7, 4096);
  const OperatorBoundReport rep = operator_bound_check(f, FracOrder{0.5});
  CHECK(rep.within);
  CHECK(rep.bound_constant ==
        Catch::Approx(2.0 / gamma_fn(1.5)).epsilon(1e-15));
  CHECK(rep.f_bv == Catch::Approx(8.7633523941040039).epsilon(1e-14));
  CHECK(rep.ratio == Catch::Approx(0.10483921652765525).epsilon(1e-10));
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <fracbv/catalog.hpp>
#include <fracbv/grid.hpp>

using namespace fracbv;

TEST_CASE("make_grid validates its arguments") {
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, INFINITY, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(NAN, 1.0, 8), std::invalid_argument);
}

TEST_CASE("grid endpoints are exact and refinement shares nodes bitwise") {
  for (const Grid g : {make_grid(0.0, 1.0, 64), make_grid(0.3, 1.7, 80),
                       make_grid(-2.5, 3.25, 17)}) {
    CHECK(g.node(0) == g.a);
    CHECK(g.node(g.n) == g.b);
    const Grid fine = g.refine();
    REQUIRE(fine.n == 2 * g.n);
    for (long i = 0; i <= g.n; ++i) CHECK(g.node(i) == fine.node(2 * i));
  }
}

TEST_CASE("unit-interval power-of-two grids produce exact dyadic nodes") {
  const Grid g = make_grid(0.0, 1.0, 256);
  for (long i = 0; i <= g.n; ++i)
    CHECK(g.node(i) == static_cast<double>(i) / 256.0);
}

TEST_CASE("catalog rejects unknown names and parameters") {
  CHECK_THROWS_AS(catalog_lookup("cubic"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("constant", {{"slope", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("power", {{"beta", -0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("piecewise_linear_random", {{"k", 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("piecewise_linear_random", {{"k", 2.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("weierstrass", {{"hurst", 1.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("takagi", {{"w", 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("sin_recip", {}, -0.5, 1.0),
                  std::invalid_argument);
}

TEST_CASE("basic catalog evaluations") {
  const auto c = catalog_lookup("constant", {{"c", 2.5}});
  CHECK(c(0.3) == 2.5);

  const auto lin = catalog_lookup("linear", {{"slope", 2.0}, {"intercept", -1.0}});
  CHECK(lin(0.5) == 0.0);

  const auto p = catalog_lookup("power", {{"beta", 0.5}}, 0.25, 1.25);
  CHECK(p(0.25) == 0.0);
  CHECK(p(1.25) == 1.0);
  const auto p0 = catalog_lookup("power", {{"beta", 0.0}});
  CHECK(p0(0.0) == 1.0);  // beta = 0 matches the constant function everywhere
}

TEST_CASE("sin_recip samples on a coarse grid match hand values") {
  const auto f = catalog_lookup("sin_recip");
  const SampledFunction s = sample(f, make_grid(0.0, 1.0, 4));
  CHECK(s.values[0] == 0.0);
  CHECK(s.values[1] == std::sin(4.0));
  CHECK(s.values[2] == std::sin(2.0));
  CHECK(s.values[3] == std::sin(4.0 / 3.0));
  CHECK(s.values[4] == std::sin(1.0));
  REQUIRE(s.source);
  CHECK(s.source->name() == "sin_recip");
  REQUIRE(f.singular_points().size() == 1);
  CHECK(f.singular_points()[0] == 0.0);
}

TEST_CASE("sin_recip extrema enumeration") {
  const auto f = catalog_lookup("sin_recip");
  const auto ext = f.extrema_in(0.05, 0.7, 100);
  // t_j = 2/((2j+1) pi) lies in (0.05, 0.7) exactly for j = 0..5
  REQUIRE(ext.size() == 6);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const double j = 5.0 - static_cast<double>(i);
    CHECK(ext[i] == 2.0 / ((2.0 * j + 1.0) * M_PI));
    if (i > 0) CHECK(ext[i] > ext[i - 1]);
  }
  // Capping keeps the coarsest (largest) extrema.
  const auto capped = f.extrema_in(0.05, 0.7, 2);
  REQUIRE(capped.size() == 2);
  CHECK(capped[1] == ext[5]);
  CHECK(capped[0] == ext[4]);
}

TEST_CASE("piecewise_linear_random is deterministic and dyadic on dyadic grids") {
  const ParamMap prm = {{"k", 8.0}, {"seed", 42.0}};
  const auto f1 = catalog_lookup("piecewise_linear_random", prm);
  const auto f2 = catalog_lookup("piecewise_linear_random", prm);
  const Grid g = make_grid(0.0, 1.0, 64);
  const auto s1 = sample(f1, g), s2 = sample(f2, g);
  CHECK(s1.values == s2.values);

  // Values live on the 2^-23 lattice: breakpoints carry 2^-20 values and the
  // interpolation parameter on this grid is a multiple of 2^-3.
  for (double v : s1.values) {
    const double scaled = v * 8388608.0;
    CHECK(scaled == std::floor(scaled));
    CHECK(std::abs(v) <= 1.0);
  }

  const auto f3 = catalog_lookup("piecewise_linear_random",
                                 {{"k", 8.0}, {"seed", 43.0}});
  CHECK(sample(f3, g).values != s1.values);
}

TEST_CASE("sample rejects grids outside the handle domain") {
  const auto f = catalog_lookup("power", {{"beta", 0.5}}, 0.0, 1.0);
  CHECK_THROWS_AS(sample(f, make_grid(-0.5, 1.0, 8)), std::invalid_argument);
  CHECK_THROWS_AS(sample(f, make_grid(0.0, 2.0, 8)), std::invalid_argument);
}

TEST_CASE("from_samples reproduces node values and interpolates linearly") {
  const auto f = catalog_lookup("piecewise_linear_random",
                                {{"k", 16.0}, {"seed", 7.0}});
  const Grid g = make_grid(0.0, 1.0, 128);
  const SampledFunction s = sample(f, g);
  const FunctionHandle itp = from_samples(s);
  for (long i = 0; i <= g.n; ++i)
    CHECK(itp(g.node(i)) == s.values[static_cast<std::size_t>(i)]);
  // midpoint of a grid cell is the average of its endpoints
  const double mid = 0.5 * (g.node(3) + g.node(4));
  CHECK(itp(mid) ==
        Catch::Approx(0.5 * (s.values[3] + s.values[4])).margin(1e-15));
}

TEST_CASE("weierstrass and takagi evaluate finitely and deterministically") {
  const auto w = catalog_lookup("weierstrass");
  const auto t = catalog_lookup("takagi");
  double bound_w = 0.0;
  for (int j = 0; j < 32; ++j) bound_w += std::pow(2.0, -0.5 * j);
  for (double x : {0.0, 0.1, 0.33, 0.5, 0.999, 1.0}) {
    CHECK(std::isfinite(w(x)));
    CHECK(std::abs(w(x)) <= bound_w);
    CHECK(std::isfinite(t(x)));
    CHECK(t(x) >= 0.0);
    CHECK(w(x) == w(x));
    CHECK(w(x) == catalog_lookup("weierstrass")(x));
  }
}

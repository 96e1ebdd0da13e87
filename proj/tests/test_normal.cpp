#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "secl/normal.hpp"

using Catch::Matchers::WithinAbs;
using namespace secl;

namespace {

// Independent quantile oracle: plain bisection on normal_cdf.
double bisect_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal_cdf reference values", "[normal]") {
  REQUIRE_THAT(normal_cdf(0.0), WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(normal_cdf(1.959963985), WithinAbs(0.9750000000268816, 1e-12));
  REQUIRE(normal_cdf(-8.0) < 1e-15);
  REQUIRE(normal_cdf(-8.0) > 0.0);

  // Frozen high-precision values.
  REQUIRE_THAT(normal_cdf(-5.0), WithinAbs(2.8665157187919391e-07, 1e-18));
  REQUIRE_THAT(normal_cdf(-2.5), WithinAbs(0.0062096653257761351, 1e-14));
  REQUIRE_THAT(normal_cdf(-1.0), WithinAbs(0.15865525393145705, 1e-13));
  REQUIRE_THAT(normal_cdf(-0.5), WithinAbs(0.30853753872598690, 1e-13));
  REQUIRE_THAT(normal_cdf(0.5), WithinAbs(0.69146246127401310, 1e-13));
  REQUIRE_THAT(normal_cdf(1.0), WithinAbs(0.84134474606854295, 1e-13));
  REQUIRE_THAT(normal_cdf(2.345), WithinAbs(0.99048646020045308, 1e-13));
  REQUIRE_THAT(normal_cdf(4.2), WithinAbs(0.99998665425098409, 1e-13));
}

TEST_CASE("normal_cdf is symmetric", "[normal][property]") {
  for (double x = 0.0; x <= 6.0; x += 0.37) {
    REQUIRE_THAT(normal_cdf(x) + normal_cdf(-x), WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("normal_quantile reference values", "[normal]") {
  REQUIRE_THAT(normal_quantile(0.5), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(normal_quantile(0.975), WithinAbs(1.959964, 1e-6));
  REQUIRE_THAT(normal_quantile(0.02), WithinAbs(-2.053749, 1e-6));
  REQUIRE_THAT(normal_quantile(0.975),
               WithinAbs(1.9599639845400542, 1e-10));
  REQUIRE_THAT(normal_quantile(0.02), WithinAbs(-2.0537489106318231, 1e-10));
}

TEST_CASE("normal_quantile matches the bisection oracle", "[normal]") {
  const double probs[] = {1e-10, 1e-6, 1e-4, 0.001, 0.01,  0.02, 0.05,
                          0.1,   0.25, 0.4,  0.5,   0.6,   0.75, 0.9,
                          0.95,  0.98, 0.99, 0.999, 0.9999, 1.0 - 1e-6,
                          1.0 - 1e-10};
  for (double p : probs) {
    REQUIRE_THAT(normal_quantile(p), WithinAbs(bisect_quantile(p), 1e-8));
  }
}

TEST_CASE("normal_quantile inverts normal_cdf to 1e-12", "[normal][property]") {
  for (double p = 1e-10; p < 1.0 - 1e-10;) {
    REQUIRE_THAT(normal_cdf(normal_quantile(p)), WithinAbs(p, 1e-12));
    p = p < 0.001 ? p * 3.7 : p + 0.0137;
  }
}

TEST_CASE("quantile round-trip over x in [-6, 6]", "[normal][property]") {
  for (double x = -6.0; x <= 6.0; x += 0.001) {
    REQUIRE_THAT(normal_quantile(normal_cdf(x)), WithinAbs(x, 1e-8));
  }
}

TEST_CASE("normal_quantile domain handling", "[normal]") {
  REQUIRE_THROWS_AS(normal_quantile(0.0), DomainError);
  REQUIRE_THROWS_AS(normal_quantile(1.0), DomainError);
  REQUIRE_THROWS_AS(normal_quantile(-0.3), DomainError);
  // With clamping enabled the same inputs resolve to large finite values.
  REQUIRE(std::isfinite(normal_quantile(0.0, /*clamp=*/true)));
  REQUIRE(normal_quantile(0.0, /*clamp=*/true) < -30.0);
  REQUIRE(normal_quantile(1.0, /*clamp=*/true) > 8.0);
}

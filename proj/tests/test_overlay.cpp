#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <limits>

#include "secl/overlay.hpp"
#include "secl/synth.hpp"

using Catch::Matchers::WithinAbs;
using namespace secl;

namespace {
constexpr double kLn3 = 1.0986122886681098;
}

TEST_CASE("apply_overlay with zero delta is the identity", "[overlay]") {
  REQUIRE_THAT(apply_overlay(0.2, 0.0), WithinAbs(0.2, 1e-15));
}

TEST_CASE("apply_overlay worked values", "[overlay]") {
  // logit(0.5) = 0, sigmoid(ln 3) = 3/4.
  REQUIRE_THAT(apply_overlay(0.5, kLn3), WithinAbs(0.75, 1e-15));
  // High-precision evaluation: sigmoid(logit(0.01) + 2).
  REQUIRE_THAT(apply_overlay(0.01, 2.0),
               WithinAbs(0.06945315965638048, 1e-12));
}

TEST_CASE("apply_overlay rejects non-finite deltas", "[overlay]") {
  REQUIRE_THROWS_AS(apply_overlay(0.2, std::nan("")), NonFiniteDelta);
  REQUIRE_THROWS_AS(
      apply_overlay(0.2, std::numeric_limits<double>::infinity()),
      NonFiniteDelta);
  REQUIRE_THROWS_AS(apply_overlay(1.2, 0.0), DomainError);
}

TEST_CASE("apply_overlay is strictly increasing in p and delta",
          "[overlay][property]") {
  synth::Rng rng(31337);
  for (int trial = 0; trial < 2000; ++trial) {
    const double p1 = rng.uniform(1e-6, 1.0 - 1e-6);
    const double p2 = rng.uniform(1e-6, 1.0 - 1e-6);
    const double d = rng.uniform(-4.0, 4.0);
    if (p1 < p2) {
      REQUIRE(apply_overlay(p1, d) < apply_overlay(p2, d));
    } else if (p2 < p1) {
      REQUIRE(apply_overlay(p2, d) < apply_overlay(p1, d));
    }
    const double p = rng.uniform(1e-6, 1.0 - 1e-6);
    REQUIRE(apply_overlay(p, d) < apply_overlay(p, d + 0.1));
  }
}

TEST_CASE("apply_overlay composes additively in delta", "[overlay][property]") {
  synth::Rng rng(90210);
  for (int trial = 0; trial < 10000; ++trial) {
    const double p = rng.uniform(1e-6, 1.0 - 1e-6);
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-3.0, 3.0);
    REQUIRE_THAT(apply_overlay(apply_overlay(p, a), b),
                 WithinAbs(apply_overlay(p, a + b), 1e-12));
  }
}

TEST_CASE("lookup_delta interpolates between snapshots", "[overlay]") {
  DeltaTable table("transition");
  const BucketKey key{"IND01", "REG01", 2};
  table.set(key, 2030, 0.4);
  table.set(key, 2035, 0.8);

  REQUIRE_THAT(lookup_delta(table, key, 2030), WithinAbs(0.4, 1e-15));
  REQUIRE_THAT(lookup_delta(table, key, 2035), WithinAbs(0.8, 1e-15));
  // Linear: 0.4 + (2/5) * 0.4.
  REQUIRE_THAT(lookup_delta(table, key, 2032), WithinAbs(0.56, 1e-15));
  // Flat extrapolation on both sides.
  REQUIRE_THAT(lookup_delta(table, key, 2040), WithinAbs(0.8, 1e-15));
  REQUIRE_THAT(lookup_delta(table, key, 2020), WithinAbs(0.4, 1e-15));
}

TEST_CASE("lookup_delta rejects unknown buckets and bad deltas", "[overlay]") {
  DeltaTable table("transition");
  table.set({"IND01", "REG01", 1}, 2030, 0.1);
  REQUIRE_THROWS_AS(lookup_delta(table, {"IND02", "REG01", 1}, 2030),
                    UnknownBucket);
  REQUIRE_THROWS_AS(table.set({"IND01", "REG01", 1}, 2035, std::nan("")),
                    NonFiniteDelta);
}

TEST_CASE("adjust_term_structure with zero deltas is the identity",
          "[overlay]") {
  DeltaTable table("zero");
  const BucketKey key{"IND01", "REG01", 3};
  table.set(key, 2030, 0.0);

  const PdTermStructure pd{{0.02, 0.05, 0.1, 0.2}, PdKind::kUnconditional};
  const PdTermStructure out = adjust_term_structure(pd, table, key, 2030);
  for (std::size_t t = 0; t < pd.n(); ++t) {
    REQUIRE_THAT(out.values[t], WithinAbs(pd.values[t], 1e-9));
  }
}

TEST_CASE("adjust_term_structure composes overlay with hazard conversions",
          "[overlay]") {
  // pd = [0.1, 0.09] has hazards [0.1, 0.1]; a flat ln 3 add-on moves each
  // hazard to 0.25, giving unconditional [0.25, 0.1875].
  DeltaTable table("stress");
  const BucketKey key{"IND01", "REG02", 1};
  table.set(key, 2030, kLn3);

  const PdTermStructure pd{{0.1, 0.09}, PdKind::kUnconditional};
  const PdTermStructure out = adjust_term_structure(pd, table, key, 2030);
  REQUIRE_THAT(out.values[0], WithinAbs(0.25, 1e-12));
  REQUIRE_THAT(out.values[1], WithinAbs(0.1875, 1e-12));
}

TEST_CASE("adjust_term_structure clamps zero PDs to the epsilon floor",
          "[overlay]") {
  DeltaTable table("stress");
  const BucketKey key{"IND01", "REG01", 1};
  table.set(key, 2030, 0.5);

  const PdTermStructure pd{{0.0, 0.0}, PdKind::kUnconditional};
  const PdTermStructure out = adjust_term_structure(pd, table, key, 2030);
  for (double v : out.values) {
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 2e-12);
  }
}

TEST_CASE("overlay preserves rank ordering of baseline PDs",
          "[overlay][property]") {
  synth::Rng rng(424242);
  for (int trial = 0; trial < 2000; ++trial) {
    double p1 = rng.uniform(1e-6, 1.0 - 1e-6);
    double p2 = rng.uniform(1e-6, 1.0 - 1e-6);
    if (p1 == p2) continue;
    if (p1 > p2) std::swap(p1, p2);
    const double d = rng.uniform(-5.0, 5.0);
    REQUIRE(apply_overlay(p1, d) < apply_overlay(p2, d));
  }
}

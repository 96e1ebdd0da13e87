#include <catch2/catch_amalgamated.hpp>

#include "secl/lgd.hpp"
#include "secl/synth.hpp"

using Catch::Matchers::WithinAbs;
using namespace secl;

TEST_CASE("frye_jacobs identity when pd is unchanged", "[lgd]") {
  // The two quantile terms cancel: phi(phi^-1(pd*lgd)) / pd = lgd.
  REQUIRE_THAT(frye_jacobs(0.02, 0.4, 0.02), WithinAbs(0.4, 1e-12));
}

TEST_CASE("frye_jacobs worked value", "[lgd]") {
  // High-precision oracle value for pd_bs=0.02, lgd_bs=0.4, pd_sc=0.05.
  REQUIRE_THAT(frye_jacobs(0.02, 0.4, 0.05),
               WithinAbs(0.45498075996173877, 1e-9));
}

TEST_CASE("frye_jacobs degenerate fallbacks", "[lgd]") {
  // No scenario default mass: LGD is irrelevant, keep the baseline.
  REQUIRE(frye_jacobs(0.02, 0.4, 0.0) == 0.4);
  // Zero baseline expected loss: the floored quantile sends the proxy to ~0.
  REQUIRE(frye_jacobs(0.02, 0.0, 0.05) < 1e-12);
  REQUIRE(frye_jacobs(0.0, 0.4, 0.05) < 1e-12);
  REQUIRE_THROWS_AS(frye_jacobs(1.5, 0.4, 0.05), DomainError);
}

TEST_CASE("frye_jacobs identity across the randomized grid",
          "[lgd][property]") {
  synth::Rng rng(8675309);
  for (int trial = 0; trial < 2000; ++trial) {
    const double pd = rng.uniform(1e-6, 0.5);
    const double lgd = rng.uniform(0.01, 0.99);
    REQUIRE_THAT(frye_jacobs(pd, lgd, pd), WithinAbs(lgd, 1e-9));
  }
}

TEST_CASE("frye_jacobs is non-decreasing in pd_sc", "[lgd][property]") {
  const double grid[] = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05,
                         0.1,   0.15,  0.2,   0.3,  0.4,  0.5};
  synth::Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const double pd_bs = rng.uniform(1e-4, 0.3);
    const double lgd_bs = rng.uniform(0.05, 0.95);
    double prev = -1.0;
    for (double pd_sc : grid) {
      const double lgd_sc = frye_jacobs(pd_bs, lgd_bs, pd_sc);
      REQUIRE(lgd_sc >= prev - 1e-12);
      prev = lgd_sc;
    }
  }
}

TEST_CASE("frye_jacobs output stays in [0, 1]", "[lgd][property]") {
  synth::Rng rng(5551212);
  for (int trial = 0; trial < 5000; ++trial) {
    const double lgd = frye_jacobs(rng.uniform01(), rng.uniform01(),
                                   rng.uniform01());
    REQUIRE(lgd >= 0.0);
    REQUIRE(lgd <= 1.0);
  }
}

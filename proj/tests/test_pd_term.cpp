#include <catch2/catch_amalgamated.hpp>

#include "secl/pd_term.hpp"
#include "secl/synth.hpp"

using Catch::Matchers::WithinAbs;
using namespace secl;

namespace {

PdTermStructure unconditional(std::vector<double> values) {
  return {std::move(values), PdKind::kUnconditional};
}

PdTermStructure conditional(std::vector<double> values) {
  return {std::move(values), PdKind::kConditional};
}

}  // namespace

TEST_CASE("to_conditional on single period is identity", "[pd_term]") {
  const auto cpd = to_conditional(unconditional({0.1}));
  REQUIRE(cpd.values.size() == 1);
  REQUIRE_THAT(cpd.values[0], WithinAbs(0.1, 1e-15));
}

TEST_CASE("to_conditional recovers a constant hazard", "[pd_term]") {
  // pd = [0.1, 0.09] is a constant hazard of 0.1: pd(2) = 0.9 * 0.1.
  const auto cpd = to_conditional(unconditional({0.1, 0.09}));
  REQUIRE_THAT(cpd.values[0], WithinAbs(0.1, 1e-15));
  REQUIRE_THAT(cpd.values[1], WithinAbs(0.1, 1e-15));
}

TEST_CASE("to_conditional keeps zero-risk curves at zero", "[pd_term]") {
  const auto cpd = to_conditional(unconditional({0.0, 0.0, 0.0}));
  for (double v : cpd.values) REQUIRE(v == 0.0);
}

TEST_CASE("to_conditional rejects infeasible curves", "[pd_term]") {
  // cpd(2) = 0.6 / (1 - 0.5) = 1.2 > 1.
  REQUIRE_THROWS_AS(to_conditional(unconditional({0.5, 0.6})),
                    InfeasibleTermStructure);
}

TEST_CASE("to_conditional rejects certain default before the final period",
          "[pd_term]") {
  REQUIRE_THROWS_AS(to_conditional(unconditional({1.0, 0.1})),
                    InfeasibleTermStructure);
  REQUIRE_THROWS_AS(to_conditional(unconditional({1.0, 0.0})),
                    InfeasibleTermStructure);
}

TEST_CASE("to_conditional validates kind and range", "[pd_term]") {
  REQUIRE_THROWS_AS(to_conditional(conditional({0.1})), DomainError);
  REQUIRE_THROWS_AS(to_conditional(unconditional({1.5})), DomainError);
  REQUIRE_THROWS_AS(to_conditional(unconditional({})), DomainError);
}

TEST_CASE("to_unconditional examples", "[pd_term]") {
  const auto one = to_unconditional(conditional({0.1}));
  REQUIRE_THAT(one.values[0], WithinAbs(0.1, 1e-15));

  const auto two = to_unconditional(conditional({0.1, 0.1}));
  REQUIRE_THAT(two.values[0], WithinAbs(0.1, 1e-15));
  REQUIRE_THAT(two.values[1], WithinAbs(0.09, 1e-15));

  // Certain default in year 1 leaves no mass for later years.
  const auto absorbed = to_unconditional(conditional({1.0, 0.3}));
  REQUIRE_THAT(absorbed.values[0], WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(absorbed.values[1], WithinAbs(0.0, 1e-15));
}

TEST_CASE("survival_curve examples", "[pd_term]") {
  const auto curve = survival_curve(conditional({0.1, 0.1}));
  REQUIRE(curve.ps.size() == 3);
  REQUIRE_THAT(curve.ps[0], WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(curve.ps[1], WithinAbs(0.9, 1e-15));
  REQUIRE_THAT(curve.ps[2], WithinAbs(0.81, 1e-15));

  REQUIRE(survival_curve(conditional({0.0})).ps == std::vector<double>{1.0, 1.0});
  REQUIRE(survival_curve(conditional({1.0})).ps == std::vector<double>{1.0, 0.0});
}

TEST_CASE("round trip over random term structures", "[pd_term][property]") {
  synth::Rng rng(20240901);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(30));
    PdTermStructure cpd;
    cpd.kind = PdKind::kConditional;
    for (int t = 0; t < n; ++t) cpd.values.push_back(rng.uniform(0.0, 0.5));
    const PdTermStructure pd = to_unconditional(cpd);

    const PdTermStructure back = to_unconditional(to_conditional(pd));
    for (int t = 0; t < n; ++t) {
      REQUIRE_THAT(back.values[t], WithinAbs(pd.values[t], 1e-12));
    }
  }
}

TEST_CASE("unconditional mass plus final survival is one",
          "[pd_term][property]") {
  synth::Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(20));
    PdTermStructure cpd;
    cpd.kind = PdKind::kConditional;
    for (int t = 0; t < n; ++t) cpd.values.push_back(rng.uniform(0.0, 0.9));
    const PdTermStructure pd = to_unconditional(cpd);
    const SurvivalCurve curve = survival_curve(cpd);

    double mass = 0.0;
    for (double v : pd.values) mass += v;
    REQUIRE_THAT(mass, WithinAbs(1.0 - curve.ps.back(), 1e-12));
  }
}

TEST_CASE("survival curves never increase", "[pd_term][property]") {
  synth::Rng rng(5150);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(25));
    PdTermStructure cpd;
    cpd.kind = PdKind::kConditional;
    for (int t = 0; t < n; ++t) cpd.values.push_back(rng.uniform(0.0, 1.0));
    const SurvivalCurve curve = survival_curve(cpd);
    for (std::size_t t = 1; t < curve.ps.size(); ++t) {
      REQUIRE(curve.ps[t] <= curve.ps[t - 1]);
    }
  }
}

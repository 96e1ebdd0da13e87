#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "secl/errors.hpp"

namespace secl {

enum class PdKind { kUnconditional, kConditional };

// Annual default probabilities over the remaining life of an exposure,
// index t = 1..n. Unconditional values are probabilities of defaulting in
// year t as seen from today; conditional values (hazards) are conditioned on
// survival through years 1..t-1.
struct PdTermStructure {
  std::vector<double> values;
  PdKind kind = PdKind::kUnconditional;

  std::size_t n() const { return values.size(); }
};

// Survival probabilities: ps[t] = probability of no default through years
// 1..t, with ps[0] = 1. Length is n + 1.
struct SurvivalCurve {
  std::vector<double> ps;
};

namespace detail {

inline void check_pd_values(const PdTermStructure& pd, const char* op) {
  if (pd.values.empty()) {
    throw DomainError(std::string(op) + ": term structure must have n >= 1");
  }
  for (double v : pd.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError(std::string(op) + ": PD value " + std::to_string(v) +
                        " outside [0, 1]");
    }
  }
}

}  // namespace detail

// Tolerance absorbing rounding when a consistent input lands a hair above 1.
inline constexpr double kCpdUnitTol = 1e-12;

// A survival product this small makes further conditional PDs meaningless;
// treat it like a zero denominator.
inline constexpr double kSurvivalFloor = 1e-300;

// Decomposes unconditional PDs into annual conditional PDs via
//   cpd[1] = pd[1],  cpd[t] = pd[t] / prod_{j<t}(1 - cpd[j]).
// Throws InfeasibleTermStructure when a computed hazard exceeds 1 or a
// survival denominator vanishes before the final period.
inline PdTermStructure to_conditional(const PdTermStructure& pd) {
  if (pd.kind != PdKind::kUnconditional) {
    throw DomainError("to_conditional: input must be unconditional");
  }
  detail::check_pd_values(pd, "to_conditional");

  const std::size_t n = pd.n();
  std::vector<double> cpd(n);
  double survival = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t > 0 && survival < kSurvivalFloor) {
      throw InfeasibleTermStructure(
          "to_conditional: survival factor vanished before the final period "
          "(period " + std::to_string(t) + " of " + std::to_string(n) + ")");
    }
    double c = (t == 0) ? pd.values[0] : pd.values[t] / survival;
    if (c > 1.0) {
      if (c > 1.0 + kCpdUnitTol) {
        throw InfeasibleTermStructure(
            "to_conditional: conditional PD " + std::to_string(c) +
            " exceeds 1 at period " + std::to_string(t + 1));
      }
      c = 1.0;
    }
    cpd[t] = c;
    survival *= 1.0 - c;
  }
  return {std::move(cpd), PdKind::kConditional};
}

// Rebuilds unconditional PDs from hazards: pd[t] = prod_{j<t}(1 - cpd[j]) * cpd[t].
inline PdTermStructure to_unconditional(const PdTermStructure& cpd) {
  if (cpd.kind != PdKind::kConditional) {
    throw DomainError("to_unconditional: input must be conditional");
  }
  detail::check_pd_values(cpd, "to_unconditional");

  const std::size_t n = cpd.n();
  std::vector<double> pd(n);
  double survival = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    pd[t] = survival * cpd.values[t];
    survival *= 1.0 - cpd.values[t];
  }
  return {std::move(pd), PdKind::kUnconditional};
}

// ps[t] = prod_{j<=t}(1 - cpd[j]), ps[0] = 1. Exposures terminate only
// through default, so survival is the plain product of non-default odds.
inline SurvivalCurve survival_curve(const PdTermStructure& cpd) {
  if (cpd.kind != PdKind::kConditional) {
    throw DomainError("survival_curve: input must be conditional");
  }
  detail::check_pd_values(cpd, "survival_curve");

  std::vector<double> ps(cpd.n() + 1);
  ps[0] = 1.0;
  for (std::size_t t = 0; t < cpd.n(); ++t) {
    ps[t + 1] = ps[t] * (1.0 - cpd.values[t]);
  }
  return {std::move(ps)};
}

}  // namespace secl

#pragma once

#include <algorithm>
#include <cmath>

namespace secl {

// Probabilities are clamped into [kProbEps, 1 - kProbEps] before any logit so
// the transform stays finite. The same epsilon is used on the calibration and
// the application side, which makes the two transforms exact inverses.
inline constexpr double kProbEps = 1e-12;

inline double clamp_prob(double p) {
  return std::clamp(p, kProbEps, 1.0 - kProbEps);
}

// logit(x) = ln(x / (1 - x)), on the clamped domain.
inline double logit(double p) {
  p = clamp_prob(p);
  return std::log(p / (1.0 - p));
}

// Numerically stable inverse logit.
inline double sigmoid(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace secl

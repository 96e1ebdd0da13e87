#pragma once

#include <cmath>
#include <string>

#include "secl/errors.hpp"

namespace secl {

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace detail {

// Continued fraction for the incomplete beta, evaluated with the modified
// Lentz algorithm. Converges quickly for x < (a+1)/(a+b+2).
inline double ibeta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  throw DomainError("ibeta: continued fraction failed to converge (a=" +
                    std::to_string(a) + ", b=" + std::to_string(b) + ")");
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b).
inline double ibeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw DomainError("ibeta: parameters must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::ibeta_cf(a, b, x) / a;
  }
  return 1.0 - front * detail::ibeta_cf(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a Student-t statistic with dof degrees of freedom:
//   P(|T| >= |t|) = I_{dof/(dof+t^2)}(dof/2, 1/2).
inline double student_t_two_sided_pvalue(double t, double dof) {
  if (!(dof > 0.0)) {
    throw DomainError("student_t_two_sided_pvalue: dof must be positive");
  }
  if (std::isnan(t)) return std::nan("");
  if (std::isinf(t)) return 0.0;
  return ibeta(0.5 * dof, 0.5, dof / (dof + t * t));
}

// Upper tail of the F distribution, P(F_{d1,d2} >= f). This is the p-value
// of the overall-significance F test.
inline double f_survival(double f, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) {
    throw DomainError("f_survival: degrees of freedom must be positive");
  }
  if (std::isnan(f)) return std::nan("");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return ibeta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

}  // namespace secl

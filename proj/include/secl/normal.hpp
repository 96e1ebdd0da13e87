#pragma once

#include <cmath>
#include <string>

#include "secl/errors.hpp"

namespace secl {

// Standard normal density.
inline double normal_pdf(double x) {
  constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Standard normal CDF via the complementary error function,
//   Phi(x) = erfc(-x / sqrt(2)) / 2.
// erfc keeps the lower tail accurate where 1 - erf would cancel.
inline double normal_cdf(double x) {
  constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490393;
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

namespace detail {

// Acklam's rational approximation to the normal quantile, relative error
// below 1.2e-9 over the full domain. A single Halley step against
// normal_cdf afterwards takes the result to machine precision.
// https://web.archive.org/web/20151030215612/http://home.online.no/~pjacklam/notes/invnorm/
inline double acklam_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

// Inverse of normal_cdf. With clamp = false (the default) arguments outside
// (0, 1) raise DomainError; with clamp = true they are clamped into
// [1e-300, 1 - 1e-16] first, which callers use for degenerate probabilities.
inline double normal_quantile(double p, bool clamp = false) {
  if (!clamp && !(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: probability " + std::to_string(p) +
                      " outside (0, 1)");
  }
  if (p < 1e-300) p = 1e-300;
  if (p > 1.0 - 1e-16) p = 1.0 - 1e-16;

  double x = detail::acklam_quantile(p);
  // Halley refinement: u = (Phi(x) - p) / phi(x); x <- x - u / (1 + x*u/2).
  const double u = (normal_cdf(x) - p) / normal_pdf(x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace secl

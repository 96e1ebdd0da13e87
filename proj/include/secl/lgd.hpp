#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "secl/errors.hpp"
#include "secl/normal.hpp"

namespace secl {

// Per-year, unconditional inputs to the Frye-Jacobs proxy.
struct LgdInputs {
  double pd_bs = 0.0;
  double lgd_bs = 0.0;
  double pd_sc = 0.0;
};

// Frye-Jacobs LGD proxy: maps a PD shift into an LGD shift,
//   lgd_sc = Phi( Phi^-1(pd_sc) - Phi^-1(pd_bs) + Phi^-1(pd_bs * lgd_bs) ) / pd_sc.
// Vasicek correlation parameters are fixed to zero.
//
// Degenerate inputs resolve to documented fallbacks instead of errors:
//  - pd_sc = 0: no default mass under the scenario, return lgd_bs unchanged.
//  - pd_bs * lgd_bs = 0 with pd_sc > 0: the product is floored at 1e-300 so
//    the quantile stays finite; the proxy then returns ~0.
inline double frye_jacobs(const LgdInputs& in) {
  if (!(in.pd_bs >= 0.0 && in.pd_bs <= 1.0) ||
      !(in.lgd_bs >= 0.0 && in.lgd_bs <= 1.0) ||
      !(in.pd_sc >= 0.0 && in.pd_sc <= 1.0)) {
    throw DomainError("frye_jacobs: inputs must lie in [0, 1]");
  }
  if (in.pd_sc == 0.0) return in.lgd_bs;

  const double q_sc = normal_quantile(in.pd_sc, /*clamp=*/true);
  const double q_bs = normal_quantile(in.pd_bs, /*clamp=*/true);
  const double q_el = normal_quantile(in.pd_bs * in.lgd_bs, /*clamp=*/true);
  const double lgd = normal_cdf(q_sc - q_bs + q_el) / in.pd_sc;
  return std::clamp(lgd, 0.0, 1.0);
}

inline double frye_jacobs(double pd_bs, double lgd_bs, double pd_sc) {
  return frye_jacobs(LgdInputs{pd_bs, lgd_bs, pd_sc});
}

}  // namespace secl

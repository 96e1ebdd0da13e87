#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "secl/errors.hpp"
#include "secl/stats.hpp"

namespace secl {

// Core least-squares fit of y on [X | 1]. Coefficient order in the
// covariance matrix is the X columns first, intercept last.
struct OlsFit {
  double alpha = 0.0;
  Eigen::VectorXd betas;

  double r_squared = 0.0;
  double f_stat = std::numeric_limits<double>::quiet_NaN();
  double f_pvalue = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;
  double alpha_t = std::numeric_limits<double>::quiet_NaN();
  double alpha_p = std::numeric_limits<double>::quiet_NaN();

  int n_obs = 0;
  int n_regressors = 0;
  int dof = 0;  // n_obs - n_regressors - 1
  bool rank_deficient = false;

  // Unbiased residual variance and (A^T A)^-1; only meaningful when
  // diagnostics_valid (full rank and dof > 0).
  double sigma2 = std::numeric_limits<double>::quiet_NaN();
  Eigen::MatrixXd cov_unscaled;
  bool diagnostics_valid = false;
};

// Least squares via complete orthogonal decomposition. Rank-deficient
// designs yield the minimum-norm solution with rank_deficient set instead
// of an error. Diagnostics follow the textbook formulas:
//   R^2 = 1 - SSR/SST (0 when SST = 0),
//   F   = ((SST - SSR)/p) / (SSR/(n-p-1)),
//   t_j = b_j / sqrt(sigma2 * (A^T A)^-1_jj),
// with p-values from the regularized incomplete beta function.
inline OlsFit fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const Eigen::Index n = y.size();
  if (n == 0) {
    throw DegenerateSystem("fit_ols: no observations");
  }
  if (X.rows() != n) {
    throw DimensionMismatch("fit_ols: X has " + std::to_string(X.rows()) +
                            " rows but y has " + std::to_string(n));
  }
  const Eigen::Index p = X.cols();

  Eigen::MatrixXd design(n, p + 1);
  if (p > 0) design.leftCols(p) = X;
  design.col(p).setOnes();

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  const Eigen::VectorXd coef = cod.solve(y);

  OlsFit fit;
  fit.n_obs = static_cast<int>(n);
  fit.n_regressors = static_cast<int>(p);
  fit.dof = static_cast<int>(n - p - 1);
  fit.betas = coef.head(p);
  fit.alpha = coef(p);
  fit.rank_deficient = cod.rank() < p + 1;

  const Eigen::VectorXd resid = y - design * coef;
  const double ssr = resid.squaredNorm();
  const double sst = (y.array() - y.mean()).matrix().squaredNorm();
  fit.r_squared = sst == 0.0 ? 0.0 : std::clamp(1.0 - ssr / sst, 0.0, 1.0);

  fit.t_stats = Eigen::VectorXd::Constant(
      p, std::numeric_limits<double>::quiet_NaN());
  fit.p_values = fit.t_stats;

  if (!fit.rank_deficient && fit.dof > 0) {
    fit.sigma2 = ssr / fit.dof;
    // Full column rank: (A^T A)^-1 = A+ A+^T with A+ the pseudoinverse.
    const Eigen::MatrixXd pinv = cod.pseudoInverse();
    fit.cov_unscaled = pinv * pinv.transpose();
    fit.diagnostics_valid = true;

    for (Eigen::Index j = 0; j <= p; ++j) {
      const double se = std::sqrt(fit.sigma2 * fit.cov_unscaled(j, j));
      const double t = coef(j) / se;
      const double pv = student_t_two_sided_pvalue(t, fit.dof);
      if (j < p) {
        fit.t_stats(j) = t;
        fit.p_values(j) = pv;
      } else {
        fit.alpha_t = t;
        fit.alpha_p = pv;
      }
    }

    if (p > 0) {
      if (ssr <= 0.0) {
        fit.f_stat = sst > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      } else {
        const double explained = std::max(sst - ssr, 0.0);
        fit.f_stat = (explained / p) / (ssr / fit.dof);
      }
      fit.f_pvalue = f_survival(fit.f_stat, static_cast<double>(p),
                                static_cast<double>(fit.dof));
    }
  }
  return fit;
}

// Standard error of the fitted value at regressor point x0 (without the
// intercept element, which is appended internally):
//   se = sqrt(sigma2 * [x0;1]^T (A^T A)^-1 [x0;1]).
inline double fitted_value_se(const OlsFit& fit, const Eigen::VectorXd& x0) {
  if (!fit.diagnostics_valid) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (x0.size() != fit.betas.size()) {
    throw DimensionMismatch("fitted_value_se: x0 has wrong length");
  }
  Eigen::VectorXd z(x0.size() + 1);
  z.head(x0.size()) = x0;
  z(x0.size()) = 1.0;
  const double quad = z.dot(fit.cov_unscaled * z);
  return std::sqrt(std::max(fit.sigma2 * quad, 0.0));
}

}  // namespace secl

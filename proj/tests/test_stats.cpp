#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <functional>
#include <limits>

#include "secl/stats.hpp"

using Catch::Matchers::WithinAbs;
using namespace secl;

namespace {

// Adaptive Simpson quadrature, independent of the incomplete-beta route.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fb, double fm, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, fm, flm, eps / 2.0, depth - 1) +
         simpson(f, m, b, fm, fb, frm, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps = 1e-12) {
  const double m = 0.5 * (a + b);
  return simpson(f, a, b, f(a), f(b), f(m), eps, 40);
}

double t_pdf(double x, double dof) {
  return std::exp(std::lgamma((dof + 1.0) / 2.0) - std::lgamma(dof / 2.0)) /
         std::sqrt(dof * M_PI) *
         std::pow(1.0 + x * x / dof, -(dof + 1.0) / 2.0);
}

double f_pdf(double x, double d1, double d2) {
  const double lognum = 0.5 * d1 * std::log(d1) + 0.5 * d2 * std::log(d2) +
                        (0.5 * d1 - 1.0) * std::log(x) -
                        0.5 * (d1 + d2) * std::log(d2 + d1 * x);
  return std::exp(lognum - log_beta(0.5 * d1, 0.5 * d2));
}

}  // namespace

TEST_CASE("ibeta reference values", "[stats]") {
  REQUIRE_THAT(ibeta(0.5, 0.5, 0.5), WithinAbs(0.5, 1e-13));
  REQUIRE_THAT(ibeta(2.5, 3.5, 0.3), WithinAbs(0.29675298929566640, 1e-12));
  REQUIRE_THAT(ibeta(8.0, 10.0, 0.7), WithinAbs(0.98730727527772270, 1e-12));
  REQUIRE(ibeta(2.0, 3.0, 0.0) == 0.0);
  REQUIRE(ibeta(2.0, 3.0, 1.0) == 1.0);
  REQUIRE_THROWS_AS(ibeta(-1.0, 2.0, 0.5), DomainError);
}

TEST_CASE("student t p-values match frozen references", "[stats]") {
  REQUIRE_THAT(student_t_two_sided_pvalue(2.0, 10.0),
               WithinAbs(0.073388034770740366, 1e-12));
  REQUIRE_THAT(student_t_two_sided_pvalue(2.2281388519649933, 10.0),
               WithinAbs(0.05, 1e-10));
  REQUIRE_THAT(student_t_two_sided_pvalue(-1.3, 4.0),
               WithinAbs(0.26345159647122415, 1e-12));
  REQUIRE(student_t_two_sided_pvalue(
              std::numeric_limits<double>::infinity(), 5.0) == 0.0);
}

TEST_CASE("f survival matches frozen references", "[stats]") {
  REQUIRE_THAT(f_survival(3.5, 3.0, 20.0),
               WithinAbs(0.034493103885124387, 1e-12));
  REQUIRE_THAT(f_survival(1.0, 2.0, 30.0),
               WithinAbs(0.37981240581524565, 1e-12));
  REQUIRE(f_survival(0.0, 2.0, 30.0) == 1.0);
  REQUIRE(f_survival(std::numeric_limits<double>::infinity(), 2.0, 30.0) ==
          0.0);
}

TEST_CASE("t p-values agree with direct quadrature", "[stats][property]") {
  const double cases[][2] = {{0.5, 3.0}, {1.7, 8.0},  {2.9, 12.0},
                             {0.1, 47.0}, {3.8, 2.0}, {1.0, 96.0}};
  for (const auto& c : cases) {
    const double t = c[0];
    const double dof = c[1];
    // Two-sided tail mass via 1 - central integral.
    const double central =
        integrate([&](double x) { return t_pdf(x, dof); }, -t, t);
    REQUIRE_THAT(student_t_two_sided_pvalue(t, dof),
                 WithinAbs(1.0 - central, 1e-10));
  }
}

TEST_CASE("F survival agrees with direct quadrature", "[stats][property]") {
  const double cases[][3] = {{0.7, 2.0, 10.0},
                             {1.9, 3.0, 21.0},
                             {3.2, 5.0, 44.0},
                             {0.4, 1.0, 9.0}};
  for (const auto& c : cases) {
    const double f = c[0];
    const double d1 = c[1];
    const double d2 = c[2];
    const double below =
        integrate([&](double x) { return f_pdf(x, d1, d2); }, 1e-12, f);
    REQUIRE_THAT(f_survival(f, d1, d2), WithinAbs(1.0 - below, 1e-9));
  }
}

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "secl/errors.hpp"
#include "secl/lgd.hpp"
#include "secl/overlay.hpp"
#include "secl/pd_term.hpp"
#include "secl/scheme.hpp"

namespace secl {

// Per-ECL-scenario inputs of one exposure; all sequences run over years
// t = 1..n of the remaining life.
struct ScenarioInputs {
  PdTermStructure pd_bs;    // unconditional
  std::vector<double> lgd_bs;
  std::vector<double> ead;
};

struct ExposureRecord {
  std::string id;
  BucketKey key;
  int maturity = 0;  // n, whole years
  double discount_rate = 0.0;
  std::vector<ScenarioInputs> scenarios;  // k = 1..m

  void validate() const {
    if (maturity < 1) {
      throw DimensionMismatch("exposure " + id + ": maturity must be >= 1");
    }
    if (!(discount_rate > -1.0)) {
      throw DomainError("exposure " + id + ": discount rate must exceed -1");
    }
    if (scenarios.empty()) {
      throw DimensionMismatch("exposure " + id + ": no ECL scenarios");
    }
    const auto n = static_cast<std::size_t>(maturity);
    for (std::size_t k = 0; k < scenarios.size(); ++k) {
      const auto& s = scenarios[k];
      if (s.pd_bs.n() != n || s.lgd_bs.size() != n || s.ead.size() != n) {
        throw DimensionMismatch("exposure " + id + ", ECL scenario " +
                                std::to_string(k + 1) +
                                ": sequence lengths disagree with maturity");
      }
      for (std::size_t t = 0; t < n; ++t) {
        if (!(s.pd_bs.values[t] >= 0.0 && s.pd_bs.values[t] <= 1.0)) {
          throw DomainError("exposure " + id + ": pd outside [0, 1]");
        }
        if (!(s.lgd_bs[t] >= 0.0 && s.lgd_bs[t] <= 1.0)) {
          throw DomainError("exposure " + id + ": lgd outside [0, 1]");
        }
        if (!(s.ead[t] >= 0.0)) {
          throw DomainError("exposure " + id + ": ead must be >= 0");
        }
      }
    }
  }
};

// Probability weights over the m ECL scenarios.
struct ScenarioWeightConfig {
  std::vector<double> weights;

  void validate() const {
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) {
        throw DomainError("scenario weights must be non-negative");
      }
      sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw DomainError("scenario weights must sum to 1 (got " +
                        std::to_string(sum) + ")");
    }
  }
};

enum class LgdMode { kFryeJacobs, kDirect };

// End-of-year discrete discounting: amount / (1 + rate)^t.
inline double present_value(double amount, double rate, int t) {
  return amount * std::pow(1.0 + rate, -t);
}

// One side (baseline or scenario) of an exposure's ECL, with the per-year
// present-value contributions that sum to the total.
struct EclPartial {
  std::string exposure_id;
  double total = 0.0;
  std::vector<double> pv_per_year;  // index t-1
};

struct YearContribution {
  int year = 0;
  double pv_bs = 0.0;
  double pv_sc = 0.0;
};

struct EclBreakdown {
  std::string exposure_id;
  double ecl_bs = 0.0;
  double ecl_sc = 0.0;
  double delta_ecl = 0.0;  // always ecl_sc - ecl_bs
  std::vector<YearContribution> per_year;
};

namespace detail {

inline void check_weights(const ExposureRecord& exposure,
                          const ScenarioWeightConfig& weights) {
  weights.validate();
  if (weights.weights.size() != exposure.scenarios.size()) {
    throw DimensionMismatch("exposure " + exposure.id + ": " +
                            std::to_string(exposure.scenarios.size()) +
                            " ECL scenarios but " +
                            std::to_string(weights.weights.size()) +
                            " weights");
  }
}

}  // namespace detail

// Lifetime baseline ECL:
//   ECL = sum_k w_k sum_t PV(pd_k(t) * lgd_k(t) * ead_k(t)).
// Staging is deliberately ignored; every exposure is measured lifetime.
inline EclPartial ecl_baseline(const ExposureRecord& exposure,
                               const ScenarioWeightConfig& weights) {
  exposure.validate();
  detail::check_weights(exposure, weights);

  EclPartial out;
  out.exposure_id = exposure.id;
  out.pv_per_year.assign(static_cast<std::size_t>(exposure.maturity), 0.0);
  for (std::size_t k = 0; k < exposure.scenarios.size(); ++k) {
    const auto& s = exposure.scenarios[k];
    const double w = weights.weights[k];
    for (int t = 1; t <= exposure.maturity; ++t) {
      const std::size_t i = static_cast<std::size_t>(t - 1);
      const double loss = s.pd_bs.values[i] * s.lgd_bs[i] * s.ead[i];
      out.pv_per_year[i] +=
          w * present_value(loss, exposure.discount_rate, t);
    }
  }
  for (double pv : out.pv_per_year) out.total += pv;
  return out;
}

// Scenario ECL: PDs pass through the logit overlay, LGDs either follow the
// Frye-Jacobs proxy per year or stay as supplied (kDirect), EADs are
// scenario-agnostic. Same weights and summation as the baseline.
inline EclPartial ecl_scenario(const ExposureRecord& exposure,
                               const ScenarioWeightConfig& weights,
                               const DeltaTable& table, int start_year,
                               LgdMode lgd_mode) {
  exposure.validate();
  detail::check_weights(exposure, weights);

  EclPartial out;
  out.exposure_id = exposure.id;
  out.pv_per_year.assign(static_cast<std::size_t>(exposure.maturity), 0.0);
  for (std::size_t k = 0; k < exposure.scenarios.size(); ++k) {
    const auto& s = exposure.scenarios[k];
    const double w = weights.weights[k];
    const PdTermStructure pd_sc =
        adjust_term_structure(s.pd_bs, table, exposure.key, start_year);
    for (int t = 1; t <= exposure.maturity; ++t) {
      const std::size_t i = static_cast<std::size_t>(t - 1);
      const double lgd_sc =
          lgd_mode == LgdMode::kFryeJacobs
              ? frye_jacobs(s.pd_bs.values[i], s.lgd_bs[i], pd_sc.values[i])
              : s.lgd_bs[i];
      const double loss = pd_sc.values[i] * lgd_sc * s.ead[i];
      out.pv_per_year[i] +=
          w * present_value(loss, exposure.discount_rate, t);
    }
  }
  for (double pv : out.pv_per_year) out.total += pv;
  return out;
}

// Merges the two sides; delta is computed once here so every consumer sees
// the same arithmetic path.
inline EclBreakdown delta_ecl(const EclPartial& bs, const EclPartial& sc) {
  if (bs.exposure_id != sc.exposure_id) {
    throw MismatchedExposure("delta_ecl: '" + bs.exposure_id + "' vs '" +
                             sc.exposure_id + "'");
  }
  if (bs.pv_per_year.size() != sc.pv_per_year.size()) {
    throw DimensionMismatch("delta_ecl: per-year horizons differ");
  }
  EclBreakdown out;
  out.exposure_id = bs.exposure_id;
  out.ecl_bs = bs.total;
  out.ecl_sc = sc.total;
  out.delta_ecl = sc.total - bs.total;
  out.per_year.reserve(bs.pv_per_year.size());
  for (std::size_t i = 0; i < bs.pv_per_year.size(); ++i) {
    out.per_year.push_back(
        {static_cast<int>(i + 1), bs.pv_per_year[i], sc.pv_per_year[i]});
  }
  return out;
}

struct AggregateRow {
  double ecl_bs = 0.0;
  double ecl_sc = 0.0;
  double delta_ecl = 0.0;  // sum of per-exposure deltas

  void add(const EclBreakdown& b) {
    ecl_bs += b.ecl_bs;
    ecl_sc += b.ecl_sc;
    delta_ecl += b.delta_ecl;
  }
};

struct PortfolioResult {
  std::vector<EclBreakdown> results;  // sorted by exposure id
  std::map<std::string, AggregateRow> by_industry;
  std::map<std::string, AggregateRow> by_region;
  std::map<int, AggregateRow> by_credit_bucket;
  AggregateRow total;
  std::vector<std::pair<std::string, std::string>> errors;  // id -> message
};

// Batch run. Per-exposure failures land in the error ledger instead of
// aborting; the output order is sorted by exposure id regardless of input
// order.
inline PortfolioResult run_portfolio(const std::vector<ExposureRecord>& exposures,
                                     const ScenarioWeightConfig& weights,
                                     const DeltaTable& table, int start_year,
                                     LgdMode lgd_mode) {
  std::vector<const ExposureRecord*> ordered;
  ordered.reserve(exposures.size());
  for (const auto& e : exposures) ordered.push_back(&e);
  std::sort(ordered.begin(), ordered.end(),
            [](const ExposureRecord* a, const ExposureRecord* b) {
              return a->id < b->id;
            });

  PortfolioResult out;
  for (const ExposureRecord* e : ordered) {
    try {
      const EclPartial bs = ecl_baseline(*e, weights);
      const EclPartial sc =
          ecl_scenario(*e, weights, table, start_year, lgd_mode);
      EclBreakdown breakdown = delta_ecl(bs, sc);
      out.by_industry[e->key.industry].add(breakdown);
      out.by_region[e->key.region].add(breakdown);
      out.by_credit_bucket[e->key.credit_bucket].add(breakdown);
      out.total.add(breakdown);
      out.results.push_back(std::move(breakdown));
    } catch (const Error& err) {
      out.errors.emplace_back(e->id, err.what());
    }
  }
  return out;
}

}  // namespace secl

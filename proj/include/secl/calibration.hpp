#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "secl/errors.hpp"
#include "secl/overlay.hpp"
#include "secl/prob.hpp"
#include "secl/regression.hpp"
#include "secl/scheme.hpp"

namespace secl {

// One calibration-sample entity: features plus baseline and scenario PD
// forecasts per snapshot year.
struct EntityObservation {
  std::string entity_id;
  std::map<std::string, std::string> features;         // name -> raw value
  std::map<int, double> pd_bs;                         // year -> PD
  std::map<std::string, std::map<int, double>> pd_sc;  // scenario -> year -> PD
};

enum class Encoding { kOrdinal, kCategoricalDummy };

struct RegressorSpec {
  std::string name;
  Encoding encoding = Encoding::kOrdinal;
};

// Partition of entity features into bucket-defining (homogeneous response)
// and regressor (heterogeneity-capturing) sets, plus the calibration grid.
struct CalibrationSpec {
  std::vector<std::string> homogeneous_features = {"industry"};
  std::vector<RegressorSpec> regressors = {
      {"credit_bucket", Encoding::kOrdinal},
      {"region", Encoding::kCategoricalDummy}};
  int min_bucket_size = 30;
  std::vector<int> snapshot_years;
  std::vector<std::string> scenarios;

  void validate() const {
    for (const auto& h : homogeneous_features) {
      for (const auto& r : regressors) {
        if (r.name == h) {
          throw DomainError("calibration spec: feature '" + h +
                            "' is both bucket-defining and a regressor");
        }
      }
    }
    if (min_bucket_size < 1) {
      throw DomainError("calibration spec: min_bucket_size must be >= 1");
    }
  }
};

// Response vector build: y_i = logit(pd_sc) - logit(pd_bs) for the entities
// holding both PDs at the snapshot; the rest are skipped and counted.
struct LogitDifferences {
  std::vector<double> y;
  std::vector<const EntityObservation*> included;
  int n_missing = 0;
};

inline LogitDifferences logit_differences(
    const std::vector<const EntityObservation*>& entities,
    const std::string& scenario, int snapshot_year) {
  LogitDifferences out;
  out.y.reserve(entities.size());
  out.included.reserve(entities.size());
  for (const EntityObservation* e : entities) {
    const auto bs_it = e->pd_bs.find(snapshot_year);
    const auto sc_scen = e->pd_sc.find(scenario);
    const auto sc_it = sc_scen == e->pd_sc.end()
                           ? std::map<int, double>::const_iterator()
                           : sc_scen->second.find(snapshot_year);
    if (bs_it == e->pd_bs.end() || sc_scen == e->pd_sc.end() ||
        sc_it == sc_scen->second.end()) {
      ++out.n_missing;
      continue;
    }
    out.y.push_back(logit(sc_it->second) - logit(bs_it->second));
    out.included.push_back(e);
  }
  return out;
}

namespace detail {

inline const std::string& feature_value(const EntityObservation& e,
                                        const std::string& name) {
  static const std::string kEmpty;
  const auto it = e.features.find(name);
  return it == e.features.end() ? kEmpty : it->second;
}

// Scheme membership check for the three structural features; other feature
// names are not scheme-constrained.
inline bool scheme_allows(const ClassificationScheme* scheme,
                          const std::string& feature,
                          const std::string& value) {
  if (scheme == nullptr) return true;
  if (feature == "industry") return scheme->has_industry(value);
  if (feature == "region") return scheme->has_region(value);
  if (feature == "credit_bucket") {
    try {
      return scheme->has_bucket(std::stoi(value));
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

struct DesignMatrix {
  Eigen::MatrixXd X;  // one row per entity, no intercept column
  std::vector<std::string> labels;
  std::vector<std::string> dropped;  // reference categories, "name=value"
};

// Ordinal features become one numeric column; categorical features become
// one-hot dummies with the most frequent category dropped as reference
// (ties broken lexicographically). The intercept is appended by fit_ols.
inline DesignMatrix build_design_matrix(
    const std::vector<const EntityObservation*>& entities,
    const std::vector<RegressorSpec>& regressors,
    const ClassificationScheme* scheme = nullptr) {
  if (entities.empty()) {
    throw DegenerateSystem("build_design_matrix: no entities");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(entities.size());

  std::vector<std::vector<double>> columns;
  DesignMatrix out;

  for (const auto& reg : regressors) {
    if (reg.encoding == Encoding::kOrdinal) {
      std::vector<double> col(entities.size());
      for (std::size_t i = 0; i < entities.size(); ++i) {
        const std::string& raw = detail::feature_value(*entities[i], reg.name);
        if (!detail::scheme_allows(scheme, reg.name, raw)) {
          throw UnknownCategory("entity sample", static_cast<int>(i + 1),
                                reg.name, "value '" + raw +
                                "' not in the registered classification");
        }
        try {
          col[i] = std::stod(raw);
        } catch (const std::exception&) {
          throw UnknownCategory("entity sample", static_cast<int>(i + 1),
                                reg.name,
                                "value '" + raw + "' is not ordinal");
        }
      }
      columns.push_back(std::move(col));
      out.labels.push_back(reg.name);
    } else {
      std::map<std::string, int> counts;
      for (std::size_t i = 0; i < entities.size(); ++i) {
        const std::string& raw = detail::feature_value(*entities[i], reg.name);
        if (!detail::scheme_allows(scheme, reg.name, raw)) {
          throw UnknownCategory("entity sample", static_cast<int>(i + 1),
                                reg.name, "value '" + raw +
                                "' not in the registered classification");
        }
        ++counts[raw];
      }
      // Reference = most frequent, lexicographically smallest on ties.
      std::string reference;
      int best = -1;
      for (const auto& [cat, cnt] : counts) {
        if (cnt > best) {
          reference = cat;
          best = cnt;
        }
      }
      out.dropped.push_back(reg.name + "=" + reference);
      for (const auto& [cat, cnt] : counts) {
        if (cat == reference) continue;
        std::vector<double> col(entities.size());
        for (std::size_t i = 0; i < entities.size(); ++i) {
          col[i] =
              detail::feature_value(*entities[i], reg.name) == cat ? 1.0 : 0.0;
        }
        columns.push_back(std::move(col));
        out.labels.push_back(reg.name + "=" + cat);
      }
    }
  }

  out.X.resize(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out.X(i, static_cast<Eigen::Index>(j)) = columns[j][i];
    }
  }
  return out;
}

// Fit of logit PD differences on regressors for one (bucket, scenario,
// snapshot) cell, with diagnostics.
struct RegressionFit {
  std::vector<std::string> homogeneous_features;
  std::vector<std::string> bucket;  // values aligned with homogeneous_features
  std::string scenario;
  int snapshot_year = 0;

  double alpha = 0.0;
  std::vector<std::string> beta_labels;
  std::vector<double> betas;

  double r_squared = 0.0;
  double f_stat = 0.0;
  double f_pvalue = 0.0;
  double alpha_t = 0.0;
  double alpha_p = 0.0;
  std::vector<double> t_stats;
  std::vector<double> p_values;

  int n_obs = 0;
  std::vector<std::string> dropped_categories;
  bool fallback_used = false;
  int missing_snapshots = 0;

  std::vector<RegressorSpec> regressors_used;
  OlsFit core;
};

namespace detail {

inline std::string bucket_feature_of(const BucketKey& key,
                                     const std::string& name) {
  if (name == "industry") return key.industry;
  if (name == "region") return key.region;
  if (name == "credit_bucket") return std::to_string(key.credit_bucket);
  throw InconsistentBucket("feature '" + name +
                           "' has no bucket-key counterpart");
}

// Regressor encoding of a target key, in the fit's column order.
inline Eigen::VectorXd encode_target(const RegressionFit& fit,
                                     const BucketKey& target) {
  Eigen::VectorXd x0(static_cast<Eigen::Index>(fit.beta_labels.size()));
  for (std::size_t j = 0; j < fit.beta_labels.size(); ++j) {
    const std::string& label = fit.beta_labels[j];
    const auto eq = label.find('=');
    if (eq == std::string::npos) {
      // Ordinal column.
      const std::string value = bucket_feature_of(target, label);
      try {
        x0(static_cast<Eigen::Index>(j)) = std::stod(value);
      } catch (const std::exception&) {
        throw InconsistentBucket("ordinal feature '" + label +
                                 "' has non-numeric value '" + value + "'");
      }
    } else {
      const std::string name = label.substr(0, eq);
      const std::string cat = label.substr(eq + 1);
      x0(static_cast<Eigen::Index>(j)) =
          bucket_feature_of(target, name) == cat ? 1.0 : 0.0;
    }
  }
  return x0;
}

}  // namespace detail

// delta = alpha + sum beta_v * encoded(target feature v). Dropped reference
// categories and categories unseen at fit time contribute zero.
inline double extract_delta(const RegressionFit& fit, const BucketKey& target) {
  for (std::size_t i = 0; i < fit.homogeneous_features.size(); ++i) {
    const std::string value =
        detail::bucket_feature_of(target, fit.homogeneous_features[i]);
    if (value != fit.bucket[i]) {
      throw InconsistentBucket("target " + target.to_string() +
                               " does not match fitted bucket value '" +
                               fit.bucket[i] + "' for feature '" +
                               fit.homogeneous_features[i] + "'");
    }
  }
  double delta = fit.alpha;
  const Eigen::VectorXd x0 = detail::encode_target(fit, target);
  for (std::size_t j = 0; j < fit.betas.size(); ++j) {
    delta += fit.betas[j] * x0(static_cast<Eigen::Index>(j));
  }
  return delta;
}

// Estimated standard error of the delta above (standard error of the fitted
// value at the target's encoding). NaN when diagnostics are unavailable.
inline double extract_delta_se(const RegressionFit& fit,
                               const BucketKey& target) {
  return fitted_value_se(fit.core, detail::encode_target(fit, target));
}

// Calibrates one (bucket, scenario, snapshot) cell. Buckets smaller than
// min_bucket_size are refit pooled across the categorical regressors
// (dummies dropped, ordinals kept) with fallback_used set; rank-deficient
// designs also set the flag (minimum-norm solution).
inline RegressionFit calibrate_bucket(
    const std::vector<EntityObservation>& sample,
    const std::vector<std::string>& bucket_values, const std::string& scenario,
    int snapshot_year, const CalibrationSpec& spec,
    const ClassificationScheme* scheme = nullptr) {
  spec.validate();
  if (bucket_values.size() != spec.homogeneous_features.size()) {
    throw DomainError("calibrate_bucket: bucket values do not match V_c");
  }

  std::vector<const EntityObservation*> in_bucket;
  for (const auto& e : sample) {
    bool match = true;
    for (std::size_t i = 0; i < spec.homogeneous_features.size(); ++i) {
      if (detail::feature_value(e, spec.homogeneous_features[i]) !=
          bucket_values[i]) {
        match = false;
        break;
      }
    }
    if (match) in_bucket.push_back(&e);
  }
  if (in_bucket.empty()) {
    std::string label;
    for (const auto& v : bucket_values) label += (label.empty() ? "" : "/") + v;
    throw EmptyBucket("no entities in bucket " + label);
  }

  LogitDifferences diffs = logit_differences(in_bucket, scenario, snapshot_year);
  if (diffs.y.empty()) {
    throw DegenerateSystem("calibrate_bucket: no entity holds both PDs at " +
                           scenario + "/" + std::to_string(snapshot_year));
  }

  const bool sparse =
      static_cast<int>(diffs.y.size()) < spec.min_bucket_size;
  std::vector<RegressorSpec> regressors;
  for (const auto& r : spec.regressors) {
    if (sparse && r.encoding == Encoding::kCategoricalDummy) continue;
    regressors.push_back(r);
  }

  DesignMatrix design = build_design_matrix(diffs.included, regressors, scheme);
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
      diffs.y.data(), static_cast<Eigen::Index>(diffs.y.size()));

  RegressionFit fit;
  fit.core = fit_ols(design.X, y);
  fit.homogeneous_features = spec.homogeneous_features;
  fit.bucket = bucket_values;
  fit.scenario = scenario;
  fit.snapshot_year = snapshot_year;
  fit.alpha = fit.core.alpha;
  fit.beta_labels = design.labels;
  fit.betas.assign(fit.core.betas.data(),
                   fit.core.betas.data() + fit.core.betas.size());
  fit.r_squared = fit.core.r_squared;
  fit.f_stat = fit.core.f_stat;
  fit.f_pvalue = fit.core.f_pvalue;
  fit.alpha_t = fit.core.alpha_t;
  fit.alpha_p = fit.core.alpha_p;
  fit.t_stats.assign(fit.core.t_stats.data(),
                     fit.core.t_stats.data() + fit.core.t_stats.size());
  fit.p_values.assign(fit.core.p_values.data(),
                      fit.core.p_values.data() + fit.core.p_values.size());
  fit.n_obs = fit.core.n_obs;
  fit.dropped_categories = design.dropped;
  fit.fallback_used = sparse || fit.core.rank_deficient;
  fit.missing_snapshots = diffs.n_missing;
  fit.regressors_used = regressors;
  return fit;
}

using DeltaLibrary = std::map<std::string, DeltaTable>;

inline const DeltaTable& select_scenario(const DeltaLibrary& library,
                                         const std::string& scenario) {
  const auto it = library.find(scenario);
  if (it == library.end()) {
    throw UnknownScenario("scenario '" + scenario + "' not present");
  }
  return it->second;
}

struct CalibrationResult {
  DeltaLibrary tables;
  std::vector<RegressionFit> fits;
  std::vector<std::string> errors;  // per-bucket failures, fail-soft
  int missing_snapshot_warnings = 0;
};

namespace detail {

// Candidate values of one bucket-defining feature, scheme-driven where the
// feature is structural and observed otherwise.
inline std::vector<std::string> bucket_feature_values(
    const std::vector<EntityObservation>& sample, const std::string& feature,
    const ClassificationScheme* scheme) {
  if (scheme != nullptr) {
    if (feature == "industry") return scheme->industries();
    if (feature == "region") return scheme->regions();
    if (feature == "credit_bucket") {
      std::vector<std::string> vals;
      for (int b = scheme->bucket_min(); b <= scheme->bucket_max(); ++b) {
        vals.push_back(std::to_string(b));
      }
      return vals;
    }
  }
  std::set<std::string> seen;
  for (const auto& e : sample) seen.insert(feature_value(e, feature));
  return {seen.begin(), seen.end()};
}

}  // namespace detail

// Full design loop: scenarios x snapshot years x V_c buckets. Emits one
// delta per (scenario, BucketKey, year) through extract_delta, collects
// per-bucket failures without aborting, and keeps every fit for the
// diagnostics report. Ordering is deterministic throughout.
inline CalibrationResult calibrate_all(
    const std::vector<EntityObservation>& sample, const CalibrationSpec& spec,
    const ClassificationScheme& scheme) {
  spec.validate();
  CalibrationResult result;

  std::vector<std::vector<std::string>> value_sets;
  for (const auto& feature : spec.homogeneous_features) {
    value_sets.push_back(
        detail::bucket_feature_values(sample, feature, &scheme));
  }
  std::vector<std::vector<std::string>> buckets = {{}};
  for (const auto& values : value_sets) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : buckets) {
      for (const auto& v : values) {
        auto combo = prefix;
        combo.push_back(v);
        next.push_back(std::move(combo));
      }
    }
    buckets = std::move(next);
  }

  std::vector<int> years = spec.snapshot_years;
  std::sort(years.begin(), years.end());

  const std::vector<BucketKey> all_keys = scheme.all_keys();
  for (const auto& scenario : spec.scenarios) {
    DeltaTable table(scenario);
    for (int year : years) {
      for (const auto& bucket : buckets) {
        RegressionFit fit;
        try {
          fit = calibrate_bucket(sample, bucket, scenario, year, spec, &scheme);
        } catch (const Error& e) {
          std::string label;
          for (const auto& v : bucket) label += (label.empty() ? "" : "/") + v;
          result.errors.push_back(scenario + "/" + std::to_string(year) + "/" +
                                  label + ": " + e.what());
          continue;
        }
        result.missing_snapshot_warnings += fit.missing_snapshots;
        for (const auto& key : all_keys) {
          bool belongs = true;
          for (std::size_t i = 0; i < spec.homogeneous_features.size(); ++i) {
            if (detail::bucket_feature_of(key, spec.homogeneous_features[i]) !=
                bucket[i]) {
              belongs = false;
              break;
            }
          }
          if (belongs) table.set(key, year, extract_delta(fit, key));
        }
        result.fits.push_back(std::move(fit));
      }
    }
    result.tables.emplace(scenario, std::move(table));
  }
  return result;
}

}  // namespace secl

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "secl/calibration.hpp"
#include "secl/csv.hpp"
#include "secl/ecl.hpp"
#include "secl/errors.hpp"
#include "secl/prob.hpp"
#include "secl/scheme.hpp"

namespace secl {
namespace synth {

// Deterministic generator wrapper. mt19937_64 has a fully specified
// sequence, and the uniform/gaussian transforms below avoid the
// implementation-defined std distributions, so a seed pins output bytes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  // Box-Muller with a cached spare.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.2831853071795864769252867665590058;
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct SynthConfig {
  std::uint64_t seed = 42;
  int n_entities = 1000;
  int n_industries = 3;
  int n_regions = 3;
  int n_credit_buckets = 6;
  std::vector<std::string> scenarios = {"transition"};
  std::vector<int> snapshot_years = {2030, 2035, 2040, 2045};
  double noise_sd = 0.05;           // logit units
  double hazard_min = 0.005;
  double hazard_max = 0.15;
  double alpha_min = 0.2;
  double alpha_max = 0.8;
  double beta_credit_min = 0.02;
  double beta_credit_max = 0.10;
  double beta_region_min = 0.0;
  double beta_region_max = 0.30;
  int n_exposures = 50;
  int max_maturity = 10;
  int n_ecl_scenarios = 1;

  void validate() const {
    if (n_entities < 1) throw DomainError("synth: n_entities must be >= 1");
    if (noise_sd < 0.0) throw DomainError("synth: noise_sd must be >= 0");
    if (!(hazard_min > 0.0 && hazard_max < 1.0 && hazard_min <= hazard_max)) {
      throw DomainError("synth: hazard range must lie inside (0, 1)");
    }
    if (n_industries < 1 || n_regions < 1 || n_credit_buckets < 1) {
      throw DomainError("synth: category counts must be >= 1");
    }
    if (scenarios.empty() || snapshot_years.empty()) {
      throw DomainError("synth: need at least one scenario and snapshot year");
    }
  }
};

inline std::string industry_code(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "IND%02d", i + 1);
  return buf;
}

inline std::string region_code(int r) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "REG%02d", r + 1);
  return buf;
}

inline ClassificationScheme scheme_for(const SynthConfig& config) {
  std::vector<std::string> industries;
  for (int i = 0; i < config.n_industries; ++i) {
    industries.push_back(industry_code(i));
  }
  std::vector<std::string> regions;
  for (int r = 0; r < config.n_regions; ++r) regions.push_back(region_code(r));
  return ClassificationScheme(std::move(industries), std::move(regions), 1,
                              config.n_credit_buckets);
}

// Exact planted delta for one (bucket key, scenario, snapshot) cell.
struct PlantedCell {
  BucketKey key;
  std::string scenario;
  int year = 0;
  double delta_true = 0.0;
};

struct SampleOutput {
  std::vector<EntityObservation> entities;
  std::vector<PlantedCell> truth;  // deterministic order
};

namespace detail {

// Planted linear structure per (industry, scenario, snapshot):
// delta(region, bucket) = alpha + beta_credit * bucket + beta_region[region].
struct PlantedModel {
  double alpha = 0.0;
  double beta_credit = 0.0;
  std::vector<double> beta_region;
};

inline std::map<std::tuple<int, std::string, int>, PlantedModel> plant_models(
    const SynthConfig& config, Rng& rng) {
  std::map<std::tuple<int, std::string, int>, PlantedModel> models;
  for (int i = 0; i < config.n_industries; ++i) {
    for (const auto& scenario : config.scenarios) {
      for (int year : config.snapshot_years) {
        PlantedModel m;
        m.alpha = rng.uniform(config.alpha_min, config.alpha_max);
        m.beta_credit =
            rng.uniform(config.beta_credit_min, config.beta_credit_max);
        m.beta_region.resize(config.n_regions);
        for (int r = 0; r < config.n_regions; ++r) {
          m.beta_region[r] =
              rng.uniform(config.beta_region_min, config.beta_region_max);
        }
        models[{i, scenario, year}] = std::move(m);
      }
    }
  }
  return models;
}

}  // namespace detail

// Draws a sample with planted regression structure. Baseline PDs come from
// the hazard range; scenario PDs are
//   sigmoid(logit(pd_bs) + delta_true(features) + noise_sd * N(0,1)).
// The returned truth ledger holds the exact planted delta per cell, so the
// calibration loop can be closed without vendor data.
inline SampleOutput generate_sample(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);

  auto models = detail::plant_models(config, rng);

  SampleOutput out;
  out.entities.reserve(config.n_entities);
  for (int e = 0; e < config.n_entities; ++e) {
    EntityObservation obs;
    char id[16];
    std::snprintf(id, sizeof(id), "E%06d", e + 1);
    obs.entity_id = id;
    const int industry = static_cast<int>(rng.below(config.n_industries));
    const int region = static_cast<int>(rng.below(config.n_regions));
    const int bucket = 1 + static_cast<int>(rng.below(config.n_credit_buckets));
    obs.features["industry"] = industry_code(industry);
    obs.features["region"] = region_code(region);
    obs.features["credit_bucket"] = std::to_string(bucket);

    for (int year : config.snapshot_years) {
      const double pd_bs =
          clamp_prob(rng.uniform(config.hazard_min, config.hazard_max));
      obs.pd_bs[year] = pd_bs;
      for (const auto& scenario : config.scenarios) {
        const auto& m = models.at({industry, scenario, year});
        const double delta = m.alpha + m.beta_credit * bucket +
                             m.beta_region[static_cast<std::size_t>(region)];
        const double noise =
            config.noise_sd > 0.0 ? config.noise_sd * rng.gaussian() : 0.0;
        obs.pd_sc[scenario][year] =
            clamp_prob(sigmoid(logit(pd_bs) + delta + noise));
      }
    }
    out.entities.push_back(std::move(obs));
  }

  for (int i = 0; i < config.n_industries; ++i) {
    for (int r = 0; r < config.n_regions; ++r) {
      for (int b = 1; b <= config.n_credit_buckets; ++b) {
        for (const auto& scenario : config.scenarios) {
          for (int year : config.snapshot_years) {
            const auto& m = models.at({i, scenario, year});
            PlantedCell cell;
            cell.key = {industry_code(i), region_code(r), b};
            cell.scenario = scenario;
            cell.year = year;
            cell.delta_true = m.alpha + m.beta_credit * b +
                              m.beta_region[static_cast<std::size_t>(r)];
            out.truth.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return out;
}

// Portfolio with internally consistent term structures: each ECL scenario
// of each exposure gets a constant hazard h, so pd(t) = (1-h)^(t-1) * h and
// the hazard decomposition always succeeds.
inline std::vector<ExposureRecord> generate_portfolio(const SynthConfig& config,
                                                      int n_exposures,
                                                      int max_maturity) {
  config.validate();
  if (n_exposures < 0 || max_maturity < 1) {
    throw DomainError("synth: invalid portfolio shape");
  }
  // Offset seed keeps the portfolio stream independent of the sample stream.
  Rng rng(config.seed + 0x9e3779b97f4a7c15ULL);

  std::vector<ExposureRecord> records;
  records.reserve(n_exposures);
  for (int x = 0; x < n_exposures; ++x) {
    ExposureRecord rec;
    char id[16];
    std::snprintf(id, sizeof(id), "X%05d", x + 1);
    rec.id = id;
    rec.key = {industry_code(static_cast<int>(rng.below(config.n_industries))),
               region_code(static_cast<int>(rng.below(config.n_regions))),
               1 + static_cast<int>(rng.below(config.n_credit_buckets))};
    rec.maturity = 1 + static_cast<int>(rng.below(max_maturity));
    rec.discount_rate = rng.uniform(0.01, 0.08);
    const int m = std::max(config.n_ecl_scenarios, 1);
    for (int k = 0; k < m; ++k) {
      ScenarioInputs s;
      const double hazard = rng.uniform(config.hazard_min, config.hazard_max);
      const double lgd = rng.uniform(0.2, 0.8);
      double survival = 1.0;
      for (int t = 0; t < rec.maturity; ++t) {
        s.pd_bs.values.push_back(survival * hazard);
        survival *= 1.0 - hazard;
        s.lgd_bs.push_back(lgd);
        s.ead.push_back(rng.uniform(1e4, 1e6));
      }
      s.pd_bs.kind = PdKind::kUnconditional;
      rec.scenarios.push_back(std::move(s));
    }
    rec.validate();
    records.push_back(std::move(rec));
  }
  return records;
}

// Planted-truth ledger file.
inline const std::vector<std::string> kTruthHeader = {
    "industry", "region", "credit_bucket", "scenario", "snapshot_year",
    "delta_true"};

inline void write_planted_truth(const std::string& path,
                                const std::vector<PlantedCell>& truth) {
  csv::Writer w(path);
  w.row(kTruthHeader);
  for (const auto& cell : truth) {
    w.row({cell.key.industry, cell.key.region,
           std::to_string(cell.key.credit_bucket), cell.scenario,
           std::to_string(cell.year), csv::format_full(cell.delta_true)});
  }
  w.close();
}

inline std::vector<PlantedCell> load_planted_truth(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  csv::require_header(table, path, kTruthHeader);
  std::vector<PlantedCell> truth;
  int row_no = 0;
  for (const auto& row : table.rows) {
    ++row_no;
    csv::require_width(row, path, row_no, kTruthHeader.size());
    PlantedCell cell;
    cell.key = {row[0], row[1],
                csv::parse_int(row[2], path, row_no, "credit_bucket")};
    cell.scenario = row[3];
    cell.year = csv::parse_int(row[4], path, row_no, "snapshot_year");
    cell.delta_true = csv::parse_double(row[5], path, row_no, "delta_true");
    truth.push_back(std::move(cell));
  }
  return truth;
}

}  // namespace synth
}  // namespace secl

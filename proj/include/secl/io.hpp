#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "secl/calibration.hpp"
#include "secl/csv.hpp"
#include "secl/ecl.hpp"
#include "secl/errors.hpp"
#include "secl/overlay.hpp"
#include "secl/prob.hpp"
#include "secl/scheme.hpp"

namespace secl {

// Run-level configuration, parsed from a flat key = value text file.
// Unknown keys are rejected. Relative paths resolve against the config
// file's directory.
struct RunConfig {
  int start_year = 0;
  std::vector<double> weights;
  LgdMode lgd_mode = LgdMode::kFryeJacobs;
  int min_bucket_size = 30;
  std::vector<int> snapshot_years;
  std::vector<std::string> scenarios;
  std::vector<std::string> homogeneous_features = {"industry"};
  std::vector<RegressorSpec> regressors = {
      {"credit_bucket", Encoding::kOrdinal},
      {"region", Encoding::kCategoricalDummy}};

  std::string scheme_path;
  std::string portfolio_path;
  std::string sample_path;
  std::string deltas_path;
  std::string aggregates_path;
  std::string out_dir;

  // Synthetic-data knobs.
  std::uint64_t seed = 42;
  int n_entities = 1000;
  int n_industries = 3;
  int n_regions = 3;
  int n_credit_buckets = 6;
  double noise_sd = 0.05;
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

  // The logit clamping epsilon is fixed library-wide; the config echoes it
  // but cannot change it.
  static constexpr double epsilon() { return kProbEps; }

  CalibrationSpec calibration_spec() const {
    CalibrationSpec spec;
    spec.homogeneous_features = homogeneous_features;
    spec.regressors = regressors;
    spec.min_bucket_size = min_bucket_size;
    spec.snapshot_years = snapshot_years;
    spec.scenarios = scenarios;
    return spec;
  }
};

namespace io_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string current;
  for (char c : s) {
    if (c == ',') {
      items.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!trim(current).empty() || !items.empty()) items.push_back(trim(current));
  return items;
}

inline std::string resolve(const std::string& base_dir,
                           const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace io_detail

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaError(path, "cannot open file");
  }
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();

  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = io_detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw RowError(path, line_no, "-", "expected 'key = value'");
    }
    const std::string key = io_detail::trim(line.substr(0, eq));
    const std::string value = io_detail::trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw RowError(path, line_no, key, "duplicate key");
    }

    auto as_int = [&] { return csv::parse_int(value, path, line_no, key); };
    auto as_double = [&] {
      return csv::parse_double(value, path, line_no, key);
    };

    if (key == "start_year") {
      cfg.start_year = as_int();
    } else if (key == "weights") {
      cfg.weights.clear();
      for (const auto& item : io_detail::split_list(value)) {
        cfg.weights.push_back(csv::parse_double(item, path, line_no, key));
      }
    } else if (key == "lgd_mode") {
      if (value == "frye_jacobs") {
        cfg.lgd_mode = LgdMode::kFryeJacobs;
      } else if (value == "direct") {
        cfg.lgd_mode = LgdMode::kDirect;
      } else {
        throw RowError(path, line_no, key,
                       "must be 'frye_jacobs' or 'direct', got '" + value + "'");
      }
    } else if (key == "min_bucket_size") {
      cfg.min_bucket_size = as_int();
    } else if (key == "snapshot_years") {
      cfg.snapshot_years.clear();
      for (const auto& item : io_detail::split_list(value)) {
        cfg.snapshot_years.push_back(csv::parse_int(item, path, line_no, key));
      }
    } else if (key == "scenarios") {
      cfg.scenarios = io_detail::split_list(value);
    } else if (key == "homogeneous_features") {
      cfg.homogeneous_features = io_detail::split_list(value);
    } else if (key == "regressors") {
      cfg.regressors.clear();
      for (const auto& item : io_detail::split_list(value)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
          throw RowError(path, line_no, key,
                         "regressor needs 'name:encoding', got '" + item + "'");
        }
        const std::string name = io_detail::trim(item.substr(0, colon));
        const std::string enc = io_detail::trim(item.substr(colon + 1));
        if (enc == "ordinal") {
          cfg.regressors.push_back({name, Encoding::kOrdinal});
        } else if (enc == "categorical") {
          cfg.regressors.push_back({name, Encoding::kCategoricalDummy});
        } else {
          throw RowError(path, line_no, key,
                         "encoding must be 'ordinal' or 'categorical'");
        }
      }
    } else if (key == "scheme") {
      cfg.scheme_path = io_detail::resolve(base_dir, value);
    } else if (key == "portfolio") {
      cfg.portfolio_path = io_detail::resolve(base_dir, value);
    } else if (key == "sample") {
      cfg.sample_path = io_detail::resolve(base_dir, value);
    } else if (key == "deltas") {
      cfg.deltas_path = io_detail::resolve(base_dir, value);
    } else if (key == "aggregates") {
      cfg.aggregates_path = io_detail::resolve(base_dir, value);
    } else if (key == "out_dir") {
      cfg.out_dir = io_detail::resolve(base_dir, value);
    } else if (key == "epsilon") {
      if (as_double() != kProbEps) {
        throw RowError(path, line_no, key,
                       "clamping epsilon is fixed at 1e-12");
      }
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(as_int());
    } else if (key == "n_entities") {
      cfg.n_entities = as_int();
    } else if (key == "n_industries") {
      cfg.n_industries = as_int();
    } else if (key == "n_regions") {
      cfg.n_regions = as_int();
    } else if (key == "n_credit_buckets") {
      cfg.n_credit_buckets = as_int();
    } else if (key == "noise_sd") {
      cfg.noise_sd = as_double();
    } else if (key == "hazard_min") {
      cfg.hazard_min = as_double();
    } else if (key == "hazard_max") {
      cfg.hazard_max = as_double();
    } else if (key == "alpha_min") {
      cfg.alpha_min = as_double();
    } else if (key == "alpha_max") {
      cfg.alpha_max = as_double();
    } else if (key == "beta_credit_min") {
      cfg.beta_credit_min = as_double();
    } else if (key == "beta_credit_max") {
      cfg.beta_credit_max = as_double();
    } else if (key == "beta_region_min") {
      cfg.beta_region_min = as_double();
    } else if (key == "beta_region_max") {
      cfg.beta_region_max = as_double();
    } else if (key == "n_exposures") {
      cfg.n_exposures = as_int();
    } else if (key == "max_maturity") {
      cfg.max_maturity = as_int();
    } else if (key == "n_ecl_scenarios") {
      cfg.n_ecl_scenarios = as_int();
    } else {
      throw RowError(path, line_no, key, "unknown configuration key");
    }
  }

  if (!cfg.weights.empty()) {
    ScenarioWeightConfig check{cfg.weights};
    check.validate();
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Classification scheme: columns kind,code with kind one of industry,
// region, credit_bucket. Bucket codes must form a contiguous range.

inline const std::vector<std::string> kSchemeHeader = {"kind", "code"};

inline ClassificationScheme load_scheme(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  csv::require_header(table, path, kSchemeHeader);

  std::vector<std::string> industries;
  std::vector<std::string> regions;
  std::set<int> buckets;
  std::set<std::pair<std::string, std::string>> seen;
  int row_no = 0;
  for (const auto& row : table.rows) {
    ++row_no;
    csv::require_width(row, path, row_no, 2);
    const std::string& kind = row[0];
    const std::string& code = row[1];
    if (code.empty()) {
      throw RowError(path, row_no, "code", "empty code");
    }
    if (!seen.insert({kind, code}).second) {
      throw RowError(path, row_no, "code", "duplicate code '" + code + "'");
    }
    if (kind == "industry") {
      industries.push_back(code);
    } else if (kind == "region") {
      regions.push_back(code);
    } else if (kind == "credit_bucket") {
      buckets.insert(csv::parse_int(code, path, row_no, "code"));
    } else {
      throw RowError(path, row_no, "kind", "unknown kind '" + kind + "'");
    }
  }
  if (buckets.empty()) {
    throw SchemaError(path, "no credit_bucket rows");
  }
  const int lo = *buckets.begin();
  const int hi = *buckets.rbegin();
  if (static_cast<int>(buckets.size()) != hi - lo + 1) {
    throw SchemaError(path, "credit bucket codes must be contiguous");
  }
  try {
    return ClassificationScheme(std::move(industries), std::move(regions), lo,
                                hi);
  } catch (const DomainError& e) {
    throw SchemaError(path, e.what());
  }
}

inline void write_scheme(const std::string& path,
                         const ClassificationScheme& scheme) {
  csv::Writer w(path);
  w.row(kSchemeHeader);
  for (const auto& code : scheme.industries()) w.row({"industry", code});
  for (const auto& code : scheme.regions()) w.row({"region", code});
  for (int b = scheme.bucket_min(); b <= scheme.bucket_max(); ++b) {
    w.row({"credit_bucket", std::to_string(b)});
  }
  w.close();
}

// ---------------------------------------------------------------------------
// Portfolio: one row per (exposure, ecl_scenario, year).

inline const std::vector<std::string> kPortfolioHeader = {
    "exposure_id", "industry", "region",     "credit_bucket", "ecl_scenario_index",
    "year_index",  "pd_bs",    "lgd_bs",     "ead",           "discount_rate"};

inline std::vector<ExposureRecord> load_portfolio(
    const std::string& path, const ClassificationScheme& scheme) {
  const csv::Table table = csv::read_file(path);
  csv::require_header(table, path, kPortfolioHeader);

  struct Cell {
    double pd, lgd, ead;
  };
  struct Builder {
    BucketKey key;
    double discount_rate = 0.0;
    std::map<int, std::map<int, Cell>> by_scenario;  // k -> year -> cell
  };
  std::map<std::string, Builder> builders;

  int row_no = 0;
  for (const auto& row : table.rows) {
    ++row_no;
    csv::require_width(row, path, row_no, kPortfolioHeader.size());
    const std::string& id = row[0];
    if (id.empty()) {
      throw RowError(path, row_no, "exposure_id", "empty exposure id");
    }
    BucketKey key{row[1], row[2],
                  csv::parse_int(row[3], path, row_no, "credit_bucket")};
    if (!scheme.has_industry(key.industry)) {
      throw UnknownCategory(path, row_no, "industry",
                            "unknown industry '" + key.industry + "'");
    }
    if (!scheme.has_region(key.region)) {
      throw UnknownCategory(path, row_no, "region",
                            "unknown region '" + key.region + "'");
    }
    if (!scheme.has_bucket(key.credit_bucket)) {
      throw UnknownCategory(path, row_no, "credit_bucket",
                            "credit bucket " +
                                std::to_string(key.credit_bucket) +
                                " outside the registered range");
    }
    const int k = csv::parse_int(row[4], path, row_no, "ecl_scenario_index");
    const int t = csv::parse_int(row[5], path, row_no, "year_index");
    if (k < 1) {
      throw RowError(path, row_no, "ecl_scenario_index", "must be >= 1");
    }
    if (t < 1) {
      throw RowError(path, row_no, "year_index", "must be >= 1");
    }
    const double pd = csv::parse_double(row[6], path, row_no, "pd_bs");
    if (!(pd >= 0.0 && pd <= 1.0)) {
      throw RowError(path, row_no, "pd_bs",
                     "probability " + row[6] + " outside [0, 1]");
    }
    const double lgd = csv::parse_double(row[7], path, row_no, "lgd_bs");
    if (!(lgd >= 0.0 && lgd <= 1.0)) {
      throw RowError(path, row_no, "lgd_bs",
                     "fraction " + row[7] + " outside [0, 1]");
    }
    const double ead = csv::parse_double(row[8], path, row_no, "ead");
    if (!(ead >= 0.0)) {
      throw RowError(path, row_no, "ead", "must be >= 0");
    }
    const double rate = csv::parse_double(row[9], path, row_no, "discount_rate");
    if (!(rate > -1.0)) {
      throw RowError(path, row_no, "discount_rate", "must exceed -1");
    }

    auto [it, inserted] = builders.try_emplace(id);
    Builder& b = it->second;
    if (inserted) {
      b.key = key;
      b.discount_rate = rate;
    } else {
      if (b.key != key) {
        throw RowError(path, row_no, "industry",
                       "exposure '" + id + "' has inconsistent bucket keys");
      }
      if (b.discount_rate != rate) {
        throw RowError(path, row_no, "discount_rate",
                       "exposure '" + id + "' has inconsistent discount rates");
      }
    }
    if (!b.by_scenario[k].emplace(t, Cell{pd, lgd, ead}).second) {
      throw RowError(path, row_no, "year_index",
                     "duplicate (exposure, scenario, year) key for '" + id +
                         "'");
    }
  }

  std::vector<ExposureRecord> records;
  records.reserve(builders.size());
  for (auto& [id, b] : builders) {
    ExposureRecord rec;
    rec.id = id;
    rec.key = b.key;
    rec.discount_rate = b.discount_rate;
    int expected_k = 1;
    int n = -1;
    for (auto& [k, years] : b.by_scenario) {
      if (k != expected_k) {
        throw SchemaError(path, "exposure '" + id +
                                    "': ECL scenario indices must be "
                                    "contiguous from 1");
      }
      ++expected_k;
      ScenarioInputs s;
      int expected_t = 1;
      for (auto& [t, cell] : years) {
        if (t != expected_t) {
          throw SchemaError(path, "exposure '" + id + "' ECL scenario " +
                                      std::to_string(k) +
                                      ": year indices must cover 1..n "
                                      "without gaps");
        }
        ++expected_t;
        s.pd_bs.values.push_back(cell.pd);
        s.lgd_bs.push_back(cell.lgd);
        s.ead.push_back(cell.ead);
      }
      s.pd_bs.kind = PdKind::kUnconditional;
      if (n < 0) {
        n = static_cast<int>(s.pd_bs.n());
      } else if (n != static_cast<int>(s.pd_bs.n())) {
        throw SchemaError(path, "exposure '" + id +
                                    "': ECL scenarios disagree on maturity");
      }
      rec.scenarios.push_back(std::move(s));
    }
    rec.maturity = n;
    rec.validate();
    records.push_back(std::move(rec));
  }
  return records;
}

inline void write_portfolio(const std::string& path,
                            const std::vector<ExposureRecord>& records) {
  csv::Writer w(path);
  w.row(kPortfolioHeader);
  for (const auto& rec : records) {
    for (std::size_t k = 0; k < rec.scenarios.size(); ++k) {
      const auto& s = rec.scenarios[k];
      for (std::size_t i = 0; i < s.pd_bs.n(); ++i) {
        w.row({rec.id, rec.key.industry, rec.key.region,
               std::to_string(rec.key.credit_bucket), std::to_string(k + 1),
               std::to_string(i + 1), csv::format_full(s.pd_bs.values[i]),
               csv::format_full(s.lgd_bs[i]), csv::format_full(s.ead[i]),
               csv::format_full(rec.discount_rate)});
      }
    }
  }
  w.close();
}

// ---------------------------------------------------------------------------
// Entity sample (long format): one row per (entity, scenario, snapshot).

inline const std::vector<std::string> kSampleHeader = {
    "entity_id", "industry", "region", "credit_bucket",
    "scenario",  "snapshot_year", "pd_bs", "pd_sc"};

inline std::vector<EntityObservation> load_entity_sample(
    const std::string& path, const ClassificationScheme& scheme) {
  const csv::Table table = csv::read_file(path);
  csv::require_header(table, path, kSampleHeader);

  std::map<std::string, EntityObservation> entities;
  int row_no = 0;
  for (const auto& row : table.rows) {
    ++row_no;
    csv::require_width(row, path, row_no, kSampleHeader.size());
    const std::string& id = row[0];
    if (id.empty()) {
      throw RowError(path, row_no, "entity_id", "empty entity id");
    }
    const std::string& industry = row[1];
    const std::string& region = row[2];
    const int bucket = csv::parse_int(row[3], path, row_no, "credit_bucket");
    if (!scheme.has_industry(industry)) {
      throw UnknownCategory(path, row_no, "industry",
                            "unknown industry '" + industry + "'");
    }
    if (!scheme.has_region(region)) {
      throw UnknownCategory(path, row_no, "region",
                            "unknown region '" + region + "'");
    }
    if (!scheme.has_bucket(bucket)) {
      throw UnknownCategory(path, row_no, "credit_bucket",
                            "credit bucket " + std::to_string(bucket) +
                                " outside the registered range");
    }
    const std::string& scenario = row[4];
    if (scenario.empty()) {
      throw RowError(path, row_no, "scenario", "empty scenario label");
    }
    const int year = csv::parse_int(row[5], path, row_no, "snapshot_year");
    const double pd_bs = csv::parse_double(row[6], path, row_no, "pd_bs");
    if (!(pd_bs >= 0.0 && pd_bs <= 1.0)) {
      throw RowError(path, row_no, "pd_bs",
                     "probability " + row[6] + " outside [0, 1]");
    }
    const double pd_sc = csv::parse_double(row[7], path, row_no, "pd_sc");
    if (!(pd_sc >= 0.0 && pd_sc <= 1.0)) {
      throw RowError(path, row_no, "pd_sc",
                     "probability " + row[7] + " outside [0, 1]");
    }

    auto [it, inserted] = entities.try_emplace(id);
    EntityObservation& e = it->second;
    if (inserted) {
      e.entity_id = id;
      e.features["industry"] = industry;
      e.features["region"] = region;
      e.features["credit_bucket"] = std::to_string(bucket);
    } else {
      if (e.features["industry"] != industry ||
          e.features["region"] != region ||
          e.features["credit_bucket"] != std::to_string(bucket)) {
        throw RowError(path, row_no, "industry",
                       "entity '" + id + "' has inconsistent features");
      }
    }
    auto& sc_years = e.pd_sc[scenario];
    if (sc_years.count(year) > 0) {
      throw RowError(path, row_no, "snapshot_year",
                     "duplicate (entity, scenario, year) key for '" + id +
                         "'");
    }
    const double clamped_bs = clamp_prob(pd_bs);
    const auto bs_it = e.pd_bs.find(year);
    if (bs_it != e.pd_bs.end() && bs_it->second != clamped_bs) {
      throw RowError(path, row_no, "pd_bs",
                     "entity '" + id + "' has inconsistent baseline PD at " +
                         std::to_string(year));
    }
    e.pd_bs[year] = clamped_bs;
    sc_years[year] = clamp_prob(pd_sc);
  }

  std::vector<EntityObservation> out;
  out.reserve(entities.size());
  for (auto& [id, e] : entities) out.push_back(std::move(e));
  return out;
}

inline void write_entity_sample(const std::string& path,
                                const std::vector<EntityObservation>& sample) {
  csv::Writer w(path);
  w.row(kSampleHeader);
  for (const auto& e : sample) {
    for (const auto& [scenario, years] : e.pd_sc) {
      for (const auto& [year, pd_sc] : years) {
        w.row({e.entity_id, e.features.at("industry"), e.features.at("region"),
               e.features.at("credit_bucket"), scenario, std::to_string(year),
               csv::format_full(e.pd_bs.at(year)), csv::format_full(pd_sc)});
      }
    }
  }
  w.close();
}

// ---------------------------------------------------------------------------
// Delta tables. Numbers are serialized so that write -> load is exact.

inline const std::vector<std::string> kDeltaHeader = {
    "scenario", "industry", "region", "credit_bucket", "year", "delta"};

inline DeltaLibrary load_delta_tables(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  csv::require_header(table, path, kDeltaHeader);

  DeltaLibrary library;
  int row_no = 0;
  for (const auto& row : table.rows) {
    ++row_no;
    csv::require_width(row, path, row_no, kDeltaHeader.size());
    const std::string& scenario = row[0];
    if (scenario.empty()) {
      throw RowError(path, row_no, "scenario", "empty scenario label");
    }
    BucketKey key{row[1], row[2],
                  csv::parse_int(row[3], path, row_no, "credit_bucket")};
    const int year = csv::parse_int(row[4], path, row_no, "year");
    const double delta = csv::parse_double(row[5], path, row_no, "delta");
    if (!std::isfinite(delta)) {
      throw RowError(path, row_no, "delta", "non-finite delta '" + row[5] + "'");
    }
    auto [it, inserted] = library.try_emplace(scenario, DeltaTable(scenario));
    DeltaTable& t = it->second;
    if (t.has_key(key)) {
      const auto& years = t.entries().at(key);
      if (years.count(year) > 0) {
        throw RowError(path, row_no, "year",
                       "duplicate (scenario, bucket, year) key");
      }
    }
    t.set(key, year, delta);
  }
  return library;
}

inline void write_delta_tables(const std::string& path,
                               const DeltaLibrary& library) {
  csv::Writer w(path);
  w.row(kDeltaHeader);
  for (const auto& [scenario, table] : library) {
    for (const auto& [key, years] : table.entries()) {
      for (const auto& [year, delta] : years) {
        w.row({scenario, key.industry, key.region,
               std::to_string(key.credit_bucket), std::to_string(year),
               csv::format_full(delta)});
      }
    }
  }
  w.close();
}

// ---------------------------------------------------------------------------
// Run outputs.

inline const std::vector<std::string> kResultsHeader = {
    "exposure_id", "ecl_bs", "ecl_sc", "delta_ecl"};

inline void write_results(const std::string& path,
                          const std::vector<EclBreakdown>& results) {
  csv::Writer w(path);
  w.row(kResultsHeader);
  for (const auto& r : results) {
    w.row({r.exposure_id, csv::format_money(r.ecl_bs),
           csv::format_money(r.ecl_sc), csv::format_money(r.delta_ecl)});
  }
  w.close();
}

inline const std::vector<std::string> kAggregatesHeader = {
    "scenario", "start_year", "dimension", "key",
    "ecl_bs",   "ecl_sc",     "delta_ecl"};

struct AggregateRecord {
  std::string scenario;
  int start_year = 0;
  std::string dimension;
  std::string key;
  double ecl_bs = 0.0;
  double ecl_sc = 0.0;
  double delta_ecl = 0.0;
};

inline std::vector<AggregateRecord> flatten_aggregates(
    const std::string& scenario, int start_year, const PortfolioResult& run) {
  std::vector<AggregateRecord> rows;
  auto push = [&](const std::string& dimension, const std::string& key,
                  const AggregateRow& agg) {
    rows.push_back({scenario, start_year, dimension, key, agg.ecl_bs,
                    agg.ecl_sc, agg.delta_ecl});
  };
  for (const auto& [key, agg] : run.by_industry) push("industry", key, agg);
  for (const auto& [key, agg] : run.by_region) push("region", key, agg);
  for (const auto& [key, agg] : run.by_credit_bucket) {
    push("credit_bucket", std::to_string(key), agg);
  }
  push("total", "", run.total);
  return rows;
}

inline void write_aggregates(const std::string& path,
                             const std::vector<AggregateRecord>& rows) {
  csv::Writer w(path);
  w.row(kAggregatesHeader);
  for (const auto& r : rows) {
    w.row({r.scenario, std::to_string(r.start_year), r.dimension, r.key,
           csv::format_money(r.ecl_bs), csv::format_money(r.ecl_sc),
           csv::format_money(r.delta_ecl)});
  }
  w.close();
}

inline std::vector<AggregateRecord> load_aggregates(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  csv::require_header(table, path, kAggregatesHeader);
  std::vector<AggregateRecord> rows;
  int row_no = 0;
  for (const auto& row : table.rows) {
    ++row_no;
    csv::require_width(row, path, row_no, kAggregatesHeader.size());
    AggregateRecord rec;
    rec.scenario = row[0];
    rec.start_year = csv::parse_int(row[1], path, row_no, "start_year");
    rec.dimension = row[2];
    rec.key = row[3];
    rec.ecl_bs = csv::parse_double(row[4], path, row_no, "ecl_bs");
    rec.ecl_sc = csv::parse_double(row[5], path, row_no, "ecl_sc");
    rec.delta_ecl = csv::parse_double(row[6], path, row_no, "delta_ecl");
    rows.push_back(std::move(rec));
  }
  return rows;
}

struct RunErrorRecord {
  std::string scenario;
  std::string exposure_id;
  std::string message;
};

inline void write_run_errors(const std::string& path,
                             const std::vector<RunErrorRecord>& errors) {
  csv::Writer w(path);
  w.row({"scenario", "exposure_id", "message"});
  for (const auto& e : errors) {
    std::string clean = e.message;
    for (char& c : clean) {
      if (c == ',' || c == '\n') c = ';';
    }
    w.row({e.scenario, e.exposure_id, clean});
  }
  w.close();
}

// ---------------------------------------------------------------------------
// Calibration diagnostics: one row per fit.

inline const std::vector<std::string> kDiagnosticsHeader = {
    "scenario", "snapshot_year", "bucket",   "n_obs",
    "alpha",    "alpha_t",       "alpha_p",  "r_squared",
    "f_stat",   "f_pvalue",      "betas",    "t_stats",
    "p_values", "dropped_categories", "fallback_used",
    "missing_snapshots"};

inline void write_diagnostics(const std::string& path,
                              const std::vector<RegressionFit>& fits) {
  csv::Writer w(path);
  w.row(kDiagnosticsHeader);
  auto join_named = [](const std::vector<std::string>& labels,
                       const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i > 0) out += ';';
      out += labels[i] + ":" + csv::format_full(values[i]);
    }
    return out;
  };
  for (const auto& fit : fits) {
    std::string bucket;
    for (const auto& v : fit.bucket) bucket += (bucket.empty() ? "" : "/") + v;
    std::string dropped;
    for (const auto& d : fit.dropped_categories) {
      dropped += (dropped.empty() ? "" : ";") + d;
    }
    w.row({fit.scenario, std::to_string(fit.snapshot_year), bucket,
           std::to_string(fit.n_obs), csv::format_full(fit.alpha),
           csv::format_full(fit.alpha_t), csv::format_full(fit.alpha_p),
           csv::format_full(fit.r_squared), csv::format_full(fit.f_stat),
           csv::format_full(fit.f_pvalue),
           join_named(fit.beta_labels, fit.betas),
           join_named(fit.beta_labels, fit.t_stats),
           join_named(fit.beta_labels, fit.p_values), dropped,
           fit.fallback_used ? "1" : "0",
           std::to_string(fit.missing_snapshots)});
  }
  w.close();
}

}  // namespace secl

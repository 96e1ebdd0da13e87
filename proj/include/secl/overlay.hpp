#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "secl/errors.hpp"
#include "secl/pd_term.hpp"
#include "secl/prob.hpp"
#include "secl/scheme.hpp"

namespace secl {

// Logit-overlay operator: shifts a probability by delta in log-odds space,
//   result = sigmoid(logit(p) + delta).
// The shift is additive in logit units, so overlays compose by adding deltas
// and rank ordering of probabilities is preserved.
inline double apply_overlay(double p, double delta) {
  if (!std::isfinite(delta)) {
    throw NonFiniteDelta("apply_overlay: delta is not finite");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("apply_overlay: probability " + std::to_string(p) +
                      " outside [0, 1]");
  }
  return sigmoid(logit(p) + delta);
}

// Per-scenario table of logit add-ons keyed by bucket and snapshot year.
// Immutable in spirit: populate once, then read concurrently.
class DeltaTable {
 public:
  DeltaTable() = default;
  explicit DeltaTable(std::string scenario_id)
      : scenario_id_(std::move(scenario_id)) {}

  const std::string& scenario_id() const { return scenario_id_; }

  void set(const BucketKey& key, int year, double delta) {
    if (!std::isfinite(delta)) {
      throw NonFiniteDelta("DeltaTable: non-finite delta for " +
                           key.to_string() + " year " + std::to_string(year));
    }
    entries_[key][year] = delta;
    snapshot_years_.insert(year);
  }

  bool has_key(const BucketKey& key) const { return entries_.count(key) > 0; }
  bool empty() const { return entries_.empty(); }

  const std::set<int>& snapshot_years() const { return snapshot_years_; }
  const std::map<BucketKey, std::map<int, double>>& entries() const {
    return entries_;
  }

  // Exact at snapshot years, linear between adjacent snapshots, flat
  // before the first and after the last.
  double lookup(const BucketKey& key, int year) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw UnknownBucket("no delta entries for bucket " + key.to_string() +
                          (scenario_id_.empty() ? std::string()
                                                : " in scenario " + scenario_id_));
    }
    const auto& by_year = it->second;
    auto hi = by_year.lower_bound(year);
    if (hi != by_year.end() && hi->first == year) return hi->second;
    if (hi == by_year.begin()) return hi->second;           // before first
    if (hi == by_year.end()) return std::prev(hi)->second;  // after last
    auto lo = std::prev(hi);
    const double w =
        static_cast<double>(year - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
  }

 private:
  std::string scenario_id_;
  std::map<BucketKey, std::map<int, double>> entries_;
  std::set<int> snapshot_years_;
};

inline double lookup_delta(const DeltaTable& table, const BucketKey& key,
                           int year) {
  return table.lookup(key, year);
}

// Applies the overlay to a baseline unconditional term structure:
// decompose to hazards, shift each hazard by the delta for calendar year
// start_year + t - 1, then rebuild unconditional PDs.
inline PdTermStructure adjust_term_structure(const PdTermStructure& pd_bs,
                                             const DeltaTable& table,
                                             const BucketKey& key,
                                             int start_year) {
  PdTermStructure cpd = to_conditional(pd_bs);
  for (std::size_t t = 0; t < cpd.n(); ++t) {
    const double delta = table.lookup(key, start_year + static_cast<int>(t));
    cpd.values[t] = apply_overlay(cpd.values[t], delta);
  }
  return to_unconditional(cpd);
}

}  // namespace secl

#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <vector>

#include "secl/errors.hpp"

namespace secl {

// Sectoral address of an exposure or entity: industry and region are
// categorical codes, credit_bucket is ordinal with 1 = best quality.
struct BucketKey {
  std::string industry;
  std::string region;
  int credit_bucket = 1;

  auto operator<=>(const BucketKey&) const = default;

  std::string to_string() const {
    return industry + "/" + region + "/" + std::to_string(credit_bucket);
  }
};

// Registered category codes. Every industry/region/credit-bucket value seen
// at ingest must come from here; the bucket range must be contiguous.
class ClassificationScheme {
 public:
  ClassificationScheme() = default;

  ClassificationScheme(std::vector<std::string> industries,
                       std::vector<std::string> regions, int bucket_min,
                       int bucket_max)
      : industries_(std::move(industries)),
        regions_(std::move(regions)),
        bucket_min_(bucket_min),
        bucket_max_(bucket_max) {
    std::sort(industries_.begin(), industries_.end());
    std::sort(regions_.begin(), regions_.end());
    if (industries_.empty() || regions_.empty()) {
      throw DomainError("classification scheme needs industries and regions");
    }
    if (std::adjacent_find(industries_.begin(), industries_.end()) !=
            industries_.end() ||
        std::adjacent_find(regions_.begin(), regions_.end()) !=
            regions_.end()) {
      throw DomainError("classification scheme codes must be unique");
    }
    if (bucket_min_ < 1 || bucket_max_ < bucket_min_) {
      throw DomainError("credit bucket range must be contiguous and >= 1");
    }
  }

  const std::vector<std::string>& industries() const { return industries_; }
  const std::vector<std::string>& regions() const { return regions_; }
  int bucket_min() const { return bucket_min_; }
  int bucket_max() const { return bucket_max_; }

  bool has_industry(const std::string& code) const {
    return std::binary_search(industries_.begin(), industries_.end(), code);
  }
  bool has_region(const std::string& code) const {
    return std::binary_search(regions_.begin(), regions_.end(), code);
  }
  bool has_bucket(int b) const { return b >= bucket_min_ && b <= bucket_max_; }

  bool contains(const BucketKey& key) const {
    return has_industry(key.industry) && has_region(key.region) &&
           has_bucket(key.credit_bucket);
  }

  // All industry x region x bucket combinations in deterministic order.
  std::vector<BucketKey> all_keys() const {
    std::vector<BucketKey> keys;
    keys.reserve(industries_.size() * regions_.size() *
                 static_cast<std::size_t>(bucket_max_ - bucket_min_ + 1));
    for (const auto& ind : industries_) {
      for (const auto& reg : regions_) {
        for (int b = bucket_min_; b <= bucket_max_; ++b) {
          keys.push_back({ind, reg, b});
        }
      }
    }
    return keys;
  }

 private:
  std::vector<std::string> industries_;
  std::vector<std::string> regions_;
  int bucket_min_ = 1;
  int bucket_max_ = 1;
};

}  // namespace secl

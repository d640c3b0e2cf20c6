// Copyright 2026 The ivauction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "ivauction/errors.hpp"
#include "ivauction/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ivauction {

using BidderId = int;
using Signal   = int;

/// One signal per bidder, each a rank in [0, k-1].
using SignalProfile = std::vector<Signal>;

/// Per-group signal sums.
using QualityVector = std::vector<int>;

/// Per-group counts of each signal value, flattened group-major
/// (entry g*k + v counts bidders of group g holding signal v).
using Histogram = std::vector<int>;

// Valuation models. Dense arrays are indexed by the scalar quality; the keyed
// models must be total over their domain (checked by validate_instance).

struct BinarySymmetric
{
  std::vector<std::vector<Money>> tables;  // [bidder][high count 0..n]
  bool operator==(BinarySymmetric const &) const = default;
};

struct SharedQuality
{
  std::vector<std::vector<Money>> tables;  // [bidder][q 0..n(k-1)]
  bool operator==(SharedQuality const &) const = default;
};

struct SharedQualityGrouped
{
  std::vector<std::map<QualityVector, Money>> tables;
  bool operator==(SharedQualityGrouped const &) const = default;
};

struct GeneralSymmetric
{
  std::vector<std::map<Histogram, Money>> tables;
  bool operator==(GeneralSymmetric const &) const = default;
};

using ValuationModel =
    std::variant<BinarySymmetric, SharedQuality, SharedQualityGrouped, GeneralSymmetric>;

/// Raw, unvalidated instance description.
struct InstanceData
{
  int                                n = 0;
  int                                k = 2;
  std::vector<std::vector<BidderId>> groups;
  ValuationModel                     valuation;

  bool operator==(InstanceData const &) const = default;
};

struct Violation
{
  std::string rule;  // "k-range", "partition", "totality", "negativity", "monotonicity", ...
  BidderId    bidder = -1;
  std::string from;  // canonical key of the lower profile/quality, when relevant
  std::string to;
  std::string message;
};

/// Empty iff the instance is well-formed: groups partition the bidders, the
/// valuation tables are total, non-negative and weakly increasing under every
/// single-signal increase.
std::vector<Violation> validate_instance(InstanceData const &data);

std::string describe(Violation const &violation);

/// A validated, immutable instance with precomputed lookups.
///
/// Optimality everywhere uses the lowest-indexed bidder among the argmax.
class Instance
{
public:
  explicit Instance(InstanceData data);

  InstanceData const &data() const noexcept { return data_; }

  int n() const noexcept { return data_.n; }
  int k() const noexcept { return data_.k; }
  int num_groups() const noexcept { return static_cast<int>(data_.groups.size()); }

  std::vector<BidderId> const &group(int g) const { return data_.groups.at(static_cast<std::size_t>(g)); }
  int group_of(BidderId bidder) const { return group_of_.at(static_cast<std::size_t>(bidder)); }

  /// Largest possible quality of group g: |N_g|(k-1).
  int group_capacity(int g) const { return capacity_.at(static_cast<std::size_t>(g)); }

  /// True when every value is a function of the quality vector alone (all
  /// models except GeneralSymmetric with k > 2).
  bool quality_based() const noexcept { return quality_based_; }

  /// Throws InvalidInput unless the profile has n entries in [0, k-1].
  void check_profile(SignalProfile const &profile) const;

  QualityVector quality_of(SignalProfile const &profile) const;
  Histogram     histogram_of(SignalProfile const &profile) const;

  Money    value(BidderId bidder, SignalProfile const &profile) const;
  BidderId optimal_bidder(SignalProfile const &profile) const;
  Money    optimal_welfare(SignalProfile const &profile) const;

  // Quality-vector queries; only valid when quality_based().
  Money const &value_at_quality(BidderId bidder, QualityVector const &quality) const;
  BidderId     optimal_at_quality(QualityVector const &quality) const;

private:
  std::size_t quality_index(QualityVector const &quality) const;
  Money       lookup(BidderId bidder, SignalProfile const &profile) const;

  InstanceData          data_;
  std::vector<int>      group_of_;
  std::vector<int>      capacity_;
  std::vector<int>      stride_;
  bool                  quality_based_ = false;
  std::vector<BidderId> optimal_;              // by quality index
  std::vector<std::vector<Money>> by_quality_;  // [bidder][quality index]

  // GeneralSymmetric only: histogram -> row of per-bidder values.
  std::map<Histogram, std::size_t> histogram_row_;
  std::vector<std::vector<Money>>  by_histogram_;
  std::vector<BidderId>            optimal_by_histogram_;
};

/// Thrown when constructing an Instance from invalid data.
class InvalidInstance : public Error
{
public:
  explicit InvalidInstance(std::vector<Violation> violations);

  std::vector<Violation> const &violations() const noexcept { return violations_; }

private:
  std::vector<Violation> violations_;
};

std::string quality_key(QualityVector const &quality);
std::string histogram_key(Histogram const &histogram, int k);
std::string profile_key(SignalProfile const &profile);

QualityVector parse_quality_key(std::string const &key);
Histogram     parse_histogram_key(std::string const &key, int k, int num_groups);
SignalProfile parse_profile_key(std::string const &key);

/// Every quality vector of the instance shape, in lexicographic order.
std::vector<QualityVector> all_quality_vectors(int k, std::vector<std::vector<BidderId>> const &groups);

/// Every histogram combination of the instance shape, in lexicographic order.
std::vector<Histogram> all_histograms(int k, std::vector<std::vector<BidderId>> const &groups);

/// k^n, or throws ResourceLimit when it exceeds `budget`.
std::int64_t profile_count(int n, int k, std::int64_t budget);

/// Lexicographic successor (last coordinate fastest); false after the last profile.
bool next_profile(SignalProfile &profile, int k);

/// Lexicographic rank of a profile, first coordinate most significant.
std::int64_t profile_index(SignalProfile const &profile, int k);

}  // namespace ivauction

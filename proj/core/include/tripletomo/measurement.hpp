// Copyright 2026 The tripletomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tripletomo/pauli.hpp"
#include "tripletomo/state.hpp"

namespace tripletomo {

/// The 36 mean values reachable with single and two-qubit coincidence detection.
///
/// Layout (also the file order): A1 A2 A3 B1 B2 B3 C1 C2 C3, then the 3x3 blocks
/// AB11..AB33, AC11..AC33, BC11..BC33. Label "AC22" is a_{2 0 2}, "BC31" is a_{0 3 1}.
class PairwiseData {
 public:
  static constexpr int kSize = 36;
  static constexpr double kExactTolerance = 1e-12;

  /// Throws std::domain_error if any value falls outside [-1 - tol, 1 + tol], where tol is
  /// kExactTolerance for exact data and 5/sqrt(shots) for sampled data.
  static PairwiseData from_values(const std::array<double, kSize>& values,
                                  std::optional<std::int64_t> shots = std::nullopt,
                                  std::optional<std::uint64_t> seed = std::nullopt,
                                  std::optional<std::array<double, kSize>> standard_errors =
                                      std::nullopt);

  static TripleIndex index_at(int position);
  /// Position of a weight-1 or weight-2 index; throws std::out_of_range otherwise.
  static int position_of(TripleIndex t);
  static std::string label_at(int position);

  double operator[](TripleIndex t) const { return values_[position_of(t)]; }
  /// a_{i00}, a_{0i0} or a_{00i} for slot 0, 1, 2.
  double single(int slot, int axis) const;
  /// Entry (i, j) of the pair block, i on the first kept qubit.
  double correlation(PairLabel pair, int i, int j) const;

  const std::array<double, kSize>& values() const { return values_; }
  const std::optional<std::array<double, kSize>>& standard_errors() const {
    return standard_errors_;
  }
  /// Empty for exact data.
  std::optional<std::int64_t> shots() const { return shots_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  bool exact() const { return !shots_.has_value(); }

  double max_standard_error() const;

 private:
  PairwiseData() = default;

  std::array<double, kSize> values_{};
  std::optional<std::array<double, kSize>> standard_errors_;
  std::optional<std::int64_t> shots_;
  std::optional<std::uint64_t> seed_;
};

/// One local Pauli axis per detector on a chosen pair.
struct MeasurementSetting {
  PairLabel pair;
  int first_axis;
  int second_axis;
};

inline constexpr int kSettingCount = 27;

/// AB settings first, then AC, then BC; axes in row-major order within each pair.
std::array<MeasurementSetting, kSettingCount> all_settings();

/// Outcome counts for a setting, ordered (+,+), (+,-), (-,+), (-,-).
struct SettingCounts {
  MeasurementSetting setting;
  std::array<std::int64_t, 4> counts{};

  std::int64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

PairwiseData exact_pairwise(const DensityMatrix& rho);

/// Born-rule probabilities for the setting (first_axis, second_axis) on a two-qubit state, in
/// the same outcome order as SettingCounts. Throws std::logic_error if a probability is below
/// -1e-10; small negative round-off is clipped to zero.
std::array<double, 4> joint_outcome_distribution(const Matrix4c& rho_pair, int first_axis,
                                                 int second_axis);

/// Seed for the sampler of one setting, derived from the master seed and setting index.
std::uint64_t setting_seed(std::uint64_t seed, int setting_index);

/// Multinomial draw of `shots` outcomes for each of the 27 settings.
std::array<SettingCounts, kSettingCount> sample_counts(const DensityMatrix& rho,
                                                       std::int64_t shots, std::uint64_t seed);

/// Correlations are the mean of s*t per setting. Single-qubit values pool the marginal of
/// every setting where that qubit is measured along that axis (6 settings each).
PairwiseData estimate_from_counts(const std::array<SettingCounts, kSettingCount>& counts,
                                  std::optional<std::uint64_t> seed = std::nullopt);

/// Throws std::domain_error for shots < 1.
PairwiseData sampled_pairwise(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed);

/// FNV-1a over the bit patterns of the 36 values.
std::uint64_t data_hash(const PairwiseData& data);

/// Header "shots=<n|exact> seed=<n|none>", then 36 lines "<label> <value> <stderr|0>".
void write_pairwise(std::ostream& out, const PairwiseData& data);
PairwiseData read_pairwise(std::istream& in);

}  // namespace tripletomo

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

#include "tripletomo/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tripletomo {

namespace {

constexpr std::array<PairLabel, 3> kPairOrder = {PairLabel::kAB, PairLabel::kAC, PairLabel::kBC};

int pair_block(PairLabel pair) {
  switch (pair) {
    case PairLabel::kAB:
      return 0;
    case PairLabel::kAC:
      return 1;
    case PairLabel::kBC:
      return 2;
  }
  return 0;
}

TripleIndex pair_index(PairLabel pair, int i, int j) {
  std::array<int, 3> slots{0, 0, 0};
  const auto kept = kept_slots(pair);
  slots[kept[0]] = i;
  slots[kept[1]] = j;
  return TripleIndex(slots[0], slots[1], slots[2]);
}

void check_axis(int axis) {
  if (axis < 1 || axis > 3) throw std::out_of_range("measurement axis must be in {1,2,3}");
}

double mean_and_stderr(std::int64_t plus, std::int64_t minus, double* stderr_out) {
  const auto n = static_cast<double>(plus + minus);
  const double mean = (static_cast<double>(plus) - static_cast<double>(minus)) / n;
  // Unbiased sample variance of +-1 outcomes.
  const double var = n > 1.0 ? n / (n - 1.0) * std::max(0.0, 1.0 - mean * mean) : 0.0;
  *stderr_out = std::sqrt(var / n);
  return mean;
}

}  // namespace

// ---------------------------------------------------------------------------
// PairwiseData

PairwiseData PairwiseData::from_values(const std::array<double, kSize>& values,
                                       std::optional<std::int64_t> shots,
                                       std::optional<std::uint64_t> seed,
                                       std::optional<std::array<double, kSize>> standard_errors) {
  if (shots && *shots < 1) throw std::domain_error("shots must be at least 1");
  const double tol =
      shots ? 5.0 / std::sqrt(static_cast<double>(*shots)) : kExactTolerance;
  for (int p = 0; p < kSize; ++p) {
    if (!std::isfinite(values[p]) || std::abs(values[p]) > 1.0 + tol) {
      throw std::domain_error("pairwise value " + label_at(p) + " is outside [-1, 1]");
    }
  }
  PairwiseData data;
  data.values_ = values;
  data.shots_ = shots;
  data.seed_ = seed;
  data.standard_errors_ = standard_errors;
  return data;
}

TripleIndex PairwiseData::index_at(int position) {
  if (position < 0 || position >= kSize) throw std::out_of_range("pairwise position");
  if (position < 9) {
    std::array<int, 3> slots{0, 0, 0};
    slots[position / 3] = position % 3 + 1;
    return TripleIndex(slots[0], slots[1], slots[2]);
  }
  const int q = position - 9;
  return pair_index(kPairOrder[q / 9], (q % 9) / 3 + 1, q % 3 + 1);
}

int PairwiseData::position_of(TripleIndex t) {
  const int weight = t.weight();
  if (weight == 1) {
    for (int slot = 0; slot < 3; ++slot) {
      if (!t[slot].is_identity()) return 3 * slot + t[slot].value() - 1;
    }
  }
  if (weight == 2) {
    for (PairLabel pair : kPairOrder) {
      if (t[traced_slot(pair)].is_identity()) {
        const auto kept = kept_slots(pair);
        return 9 + 9 * pair_block(pair) + 3 * (t[kept[0]].value() - 1) + t[kept[1]].value() - 1;
      }
    }
  }
  throw std::out_of_range("index is not pairwise accessible");
}

std::string PairwiseData::label_at(int position) {
  const TripleIndex t = index_at(position);
  if (position < 9) {
    const int slot = position / 3;
    return std::string(1, static_cast<char>('A' + slot)) + std::to_string(t[slot].value());
  }
  const PairLabel pair = kPairOrder[(position - 9) / 9];
  const auto kept = kept_slots(pair);
  return std::string(pair_name(pair)) + std::to_string(t[kept[0]].value()) +
         std::to_string(t[kept[1]].value());
}

double PairwiseData::single(int slot, int axis) const {
  check_axis(axis);
  if (slot < 0 || slot > 2) throw std::out_of_range("slot must be 0, 1 or 2");
  return values_[3 * slot + axis - 1];
}

double PairwiseData::correlation(PairLabel pair, int i, int j) const {
  check_axis(i);
  check_axis(j);
  return values_[9 + 9 * pair_block(pair) + 3 * (i - 1) + (j - 1)];
}

double PairwiseData::max_standard_error() const {
  if (!standard_errors_) return 0.0;
  double m = 0.0;
  for (double s : *standard_errors_) m = std::max(m, s);
  return m;
}

// ---------------------------------------------------------------------------
// Exact data

PairwiseData exact_pairwise(const DensityMatrix& rho) {
  std::array<double, PairwiseData::kSize> values{};
  for (int p = 0; p < PairwiseData::kSize; ++p) {
    values[p] = basis_trace(rho.matrix(), PairwiseData::index_at(p)).real();
  }
  return PairwiseData::from_values(values);
}

// ---------------------------------------------------------------------------
// Sampling

std::array<MeasurementSetting, kSettingCount> all_settings() {
  std::array<MeasurementSetting, kSettingCount> out{};
  int k = 0;
  for (PairLabel pair : kPairOrder) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) out[k++] = {pair, i, j};
    }
  }
  return out;
}

std::array<double, 4> joint_outcome_distribution(const Matrix4c& rho_pair, int first_axis,
                                                 int second_axis) {
  check_axis(first_axis);
  check_axis(second_axis);
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c s1 = pauli_matrix(PauliIndex(first_axis));
  const Matrix2c s2 = pauli_matrix(PauliIndex(second_axis));
  std::array<double, 4> probs{};
  int k = 0;
  for (double s : {1.0, -1.0}) {
    const Matrix2c p1 = (id + s * s1) / 2.0;
    for (double t : {1.0, -1.0}) {
      const Matrix2c p2 = (id + t * s2) / 2.0;
      Matrix4c proj;
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) proj(r, c) = p1(r >> 1, c >> 1) * p2(r & 1, c & 1);
      }
      const double p = (rho_pair * proj).trace().real();
      if (p < -1e-10) {
        throw std::logic_error("negative outcome probability; reduced state is not physical");
      }
      probs[k++] = std::max(0.0, p);
    }
  }
  return probs;
}

std::uint64_t setting_seed(std::uint64_t seed, int setting_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(setting_index)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::array<SettingCounts, kSettingCount> sample_counts(const DensityMatrix& rho,
                                                       std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::domain_error("shots must be at least 1");
  std::array<Matrix4c, 3> reduced;
  for (PairLabel pair : kPairOrder) reduced[pair_block(pair)] = partial_trace(rho, pair);

  const auto settings = all_settings();
  std::array<SettingCounts, kSettingCount> out{};
  for (int k = 0; k < kSettingCount; ++k) {
    const MeasurementSetting& setting = settings[k];
    const auto probs = joint_outcome_distribution(reduced[pair_block(setting.pair)],
                                                  setting.first_axis, setting.second_axis);
    std::mt19937_64 rng(setting_seed(seed, k));
    // Multinomial as a chain of conditional binomials.
    std::int64_t remaining = shots;
    double mass = 1.0;
    SettingCounts counts{setting, {}};
    for (int o = 0; o < 3; ++o) {
      const double p = mass > 0.0 ? std::clamp(probs[o] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::int64_t> draw(remaining, p);
      const std::int64_t n = remaining > 0 ? draw(rng) : 0;
      counts.counts[o] = n;
      remaining -= n;
      mass -= probs[o];
    }
    counts.counts[3] = remaining;
    out[k] = counts;
  }
  return out;
}

PairwiseData estimate_from_counts(const std::array<SettingCounts, kSettingCount>& counts,
                                  std::optional<std::uint64_t> seed) {
  const std::int64_t shots = counts[0].total();
  for (const auto& c : counts) {
    if (c.total() != shots || shots < 1) {
      throw std::domain_error("every setting must carry the same positive shot count");
    }
  }
  std::array<double, PairwiseData::kSize> values{};
  std::array<double, PairwiseData::kSize> errors{};
  std::array<std::int64_t, 9> single_plus{};
  std::array<std::int64_t, 9> single_minus{};

  for (const auto& c : counts) {
    const auto& n = c.counts;
    const MeasurementSetting& s = c.setting;
    const int pos = PairwiseData::position_of(pair_index(s.pair, s.first_axis, s.second_axis));
    values[pos] = mean_and_stderr(n[0] + n[3], n[1] + n[2], &errors[pos]);

    const auto kept = kept_slots(s.pair);
    const int first = 3 * kept[0] + s.first_axis - 1;
    const int second = 3 * kept[1] + s.second_axis - 1;
    single_plus[first] += n[0] + n[1];
    single_minus[first] += n[2] + n[3];
    single_plus[second] += n[0] + n[2];
    single_minus[second] += n[1] + n[3];
  }
  for (int p = 0; p < 9; ++p) {
    values[p] = mean_and_stderr(single_plus[p], single_minus[p], &errors[p]);
  }
  return PairwiseData::from_values(values, shots, seed, errors);
}

PairwiseData sampled_pairwise(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed) {
  return estimate_from_counts(sample_counts(rho, shots, seed), seed);
}

std::uint64_t data_hash(const PairwiseData& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : data.values()) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Text format

void write_pairwise(std::ostream& out, const PairwiseData& data) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << "shots=";
  if (data.shots()) {
    out << *data.shots();
  } else {
    out << "exact";
  }
  out << " seed=";
  if (data.seed()) {
    out << *data.seed();
  } else {
    out << "none";
  }
  out << '\n' << std::setprecision(17);
  for (int p = 0; p < PairwiseData::kSize; ++p) {
    out << PairwiseData::label_at(p) << ' ' << data.values()[p] << ' ';
    if (data.standard_errors()) {
      out << (*data.standard_errors())[p];
    } else {
      out << 0;
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

PairwiseData read_pairwise(std::istream& in) {
  std::string header;
  while (std::getline(in, header) && header.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream hs(header);
  std::string shots_field;
  std::string seed_field;
  if (!(hs >> shots_field >> seed_field) || shots_field.rfind("shots=", 0) != 0 ||
      seed_field.rfind("seed=", 0) != 0) {
    throw std::runtime_error("pairwise data header must read 'shots=<n|exact> seed=<n|none>'");
  }
  std::optional<std::int64_t> shots;
  std::optional<std::uint64_t> seed;
  try {
    const std::string sv = shots_field.substr(6);
    if (sv != "exact") shots = std::stoll(sv);
    const std::string dv = seed_field.substr(5);
    if (dv != "none") seed = std::stoull(dv);
  } catch (const std::logic_error&) {
    throw std::runtime_error("malformed pairwise data header: '" + header + "'");
  }

  std::array<double, PairwiseData::kSize> values{};
  std::array<double, PairwiseData::kSize> errors{};
  int p = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (p >= PairwiseData::kSize) throw std::runtime_error("pairwise data has extra lines");
    std::istringstream ls(line);
    std::string label;
    double value = 0.0;
    double err = 0.0;
    if (!(ls >> label >> value >> err)) {
      throw std::runtime_error("malformed pairwise data line: '" + line + "'");
    }
    if (label != PairwiseData::label_at(p)) {
      throw std::runtime_error("expected label " + PairwiseData::label_at(p) + ", found " +
                               label);
    }
    values[p] = value;
    errors[p] = err;
    ++p;
  }
  if (p != PairwiseData::kSize) {
    throw std::runtime_error("pairwise data must have 36 value lines, found " +
                             std::to_string(p));
  }
  if (shots) return PairwiseData::from_values(values, shots, seed, errors);
  return PairwiseData::from_values(values, shots, seed);
}

}  // namespace tripletomo

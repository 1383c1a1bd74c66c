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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tripletomo/state.hpp"

namespace tripletomo::cli {

struct RunConfig {
  std::string command;
  std::string state_spec;
  std::optional<std::int64_t> shots;  // empty = exact
  std::uint64_t seed = 0;
  std::optional<double> sv_threshold;
  std::optional<double> tolerance;
  std::int64_t count = 0;
  std::filesystem::path output_dir = ".";
  std::string theta_grid;
  std::string phi_grid;
  std::string data_file;
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// A state named on the command line. `pure` is set when the source is a pure state.
struct StateSource {
  DensityMatrix rho;
  std::optional<PureState> pure;
  std::vector<std::string> warnings;
};

/// Accepts ghz:<theta>,<phi>, diosi:<phi>, random:<seed>, basis:<0-7>, file:<path>. A file
/// with 8 lines is read as a state vector, one with 64 lines as a correlation tensor.
/// Throws std::invalid_argument or std::runtime_error on bad input.
StateSource parse_state_spec(const std::string& spec);

/// "a:b:n" gives n evenly spaced points from a to b inclusive.
std::vector<double> parse_grid(const std::string& grid);

/// "exact" or a positive integer.
std::optional<std::int64_t> parse_shots(const std::string& text);

/// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tripletomo::cli

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

#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tripletomo/consistency.hpp"
#include "tripletomo/measurement.hpp"
#include "tripletomo/oracle.hpp"
#include "tripletomo/pipeline.hpp"
#include "tripletomo/reconstruction.hpp"

namespace tripletomo::cli {

namespace {

constexpr int kUsage = static_cast<int>(PipelineStatus::kUsageError);

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::logic_error&) {
    throw std::invalid_argument(what + " out of range: '" + text + "'");
  }
}

std::vector<std::string> nonblank_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

std::string status_name(PipelineStatus status) {
  switch (status) {
    case PipelineStatus::kUniquePure:
      return "unique-pure";
    case PipelineStatus::kRankDeficient:
      return "rank-deficient";
    case PipelineStatus::kInconsistentMixed:
      return "inconsistent-mixed";
    case PipelineStatus::kUsageError:
      return "usage-error";
  }
  return "unknown";
}

PipelineOptions pipeline_options(const RunConfig& config) {
  PipelineOptions options;
  options.shots = config.shots;
  options.seed = config.seed;
  options.sv_threshold = config.sv_threshold;
  options.tolerance = config.tolerance;
  return options;
}

void write_outcome_files(const RunConfig& config, const PipelineOutcome& outcome) {
  auto data_out = open_output(config.output_dir, "pairwise.dat");
  write_pairwise(data_out, outcome.data);
  auto rec_out = open_output(config.output_dir, "reconstruction.txt");
  write_reconstruction_report(rec_out, outcome.result);
  auto res_out = open_output(config.output_dir, "residuals.txt");
  write_residual_report(res_out, outcome.residuals);
  auto tensor_out = open_output(config.output_dir, "tensor.tsr");
  write_tensor(tensor_out, outcome.tensor);
}

void print_outcome(std::ostream& out, const PipelineOutcome& outcome) {
  out << std::setprecision(17);
  out << "status=" << status_name(outcome.status) << '\n'
      << "rank=" << outcome.result.rank << '\n'
      << "null_space_dim=" << outcome.result.null_space_dim << '\n'
      << "sv_min=" << outcome.result.sv_min() << '\n'
      << "residual=" << outcome.result.residual_norm << '\n'
      << "max_abs_consistency=" << outcome.residuals.max_abs << '\n'
      << "tolerance=" << outcome.residuals.tolerance_used << '\n'
      << "min_eigenvalue=" << outcome.positivity.min_eigenvalue << '\n';
}

void print_warnings(std::ostream& err, const StateSource& source) {
  for (const auto& w : source.warnings) err << "warning: " << w << '\n';
}

int cmd_gen(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const StateSource source = parse_state_spec(config.state_spec);
  print_warnings(err, source);
  if (source.pure) {
    auto st = open_output(config.output_dir, "state.st");
    write_state(st, *source.pure);
  }
  auto ts = open_output(config.output_dir, "tensor.tsr");
  write_tensor(ts, tensor_from_density(source.rho));
  out << "wrote " << (source.pure ? "state.st and " : "") << "tensor.tsr to "
      << config.output_dir.string() << '\n';
  return 0;
}

int cmd_measure(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const StateSource source = parse_state_spec(config.state_spec);
  print_warnings(err, source);
  const PairwiseData data = config.shots
                                ? sampled_pairwise(source.rho, *config.shots, config.seed)
                                : exact_pairwise(source.rho);
  auto file = open_output(config.output_dir, "pairwise.dat");
  write_pairwise(file, data);
  out << "wrote pairwise.dat (" << PairwiseData::kSize << " values) to "
      << config.output_dir.string() << '\n';
  return 0;
}

int cmd_reconstruct(const RunConfig& config, std::ostream& out, std::ostream&) {
  std::ifstream in(config.data_file);
  if (!in) throw std::runtime_error("cannot read pairwise data file '" + config.data_file + "'");
  const PairwiseData data = read_pairwise(in);
  RunConfig effective = config;
  effective.shots = data.shots();
  const PipelineOutcome outcome = reconstruct(data, pipeline_options(effective));
  write_outcome_files(config, outcome);
  print_outcome(out, outcome);
  return static_cast<int>(outcome.status);
}

int cmd_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const StateSource source = parse_state_spec(config.state_spec);
  print_warnings(err, source);
  const PipelineOutcome outcome = run_pipeline(source.rho, pipeline_options(config));
  write_outcome_files(config, outcome);
  print_outcome(out, outcome);
  if (source.pure) {
    out << "fidelity="
        << oracle::fidelity_with_pure(*source.pure, density_from_tensor(outcome.tensor)) << '\n';
  }
  return static_cast<int>(outcome.status);
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const StateSource source = parse_state_spec(config.state_spec);
  print_warnings(err, source);
  const PipelineOutcome outcome = run_pipeline(source.rho, pipeline_options(config));

  oracle::OracleReport report;
  report.idempotency_frobenius = oracle::idempotency_residual(source.rho);
  report.tensor_max_error = oracle::tensor_max_error(outcome.tensor, source.rho);
  const bool pure_input = report.idempotency_frobenius < 1e-10;
  if (pure_input) {
    report.equation_max_residual = oracle::validate_equation_set(source.rho, residuals_by_coefficient);
  }
  if (source.pure) {
    report.fidelity =
        oracle::fidelity_with_pure(*source.pure, density_from_tensor(outcome.tensor));
  }

  auto file = open_output(config.output_dir, "oracle.txt");
  for (std::ostream* s : {static_cast<std::ostream*>(&file), &out}) {
    *s << std::setprecision(17) << "idempotency_frobenius=" << report.idempotency_frobenius
       << '\n'
       << "equation_max_residual=";
    if (pure_input) {
      *s << report.equation_max_residual;
    } else {
      *s << "skipped";
    }
    *s << '\n' << "tensor_max_error=" << report.tensor_max_error << '\n';
    if (source.pure) *s << "fidelity=" << report.fidelity << '\n';
    *s << "status=" << status_name(outcome.status) << '\n';
  }
  return static_cast<int>(outcome.status);
}

int cmd_batch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.count < 1) {
    err << "error: --count must be at least 1\n";
    return kUsage;
  }
  const unsigned workers =
      config.workers > 0 ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  const BatchSummary s = run_batch(config.count, config.seed, workers,
                                   config.sv_threshold.value_or(kDefaultSvThreshold));
  auto file = open_output(config.output_dir, "batch_summary.txt");
  for (std::ostream* o : {static_cast<std::ostream*>(&file), &out}) {
    *o << std::setprecision(17) << "count=" << s.count << '\n'
       << "seed=" << config.seed << '\n'
       << "unique=" << s.unique << '\n'
       << "degenerate=" << s.degenerate << '\n'
       << "consistent_pure=" << s.consistent_pure << '\n'
       << "max_tensor_error=" << s.max_tensor_error << '\n'
       << "min_fidelity=" << s.min_fidelity << '\n'
       << "min_smallest_sv=" << s.min_smallest_sv << '\n'
       << "min_relative_sv=" << s.min_relative_sv << '\n'
       << "max_consistency_residual=" << s.max_residual << '\n';
  }
  return 0;
}

int cmd_ghz_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto thetas = parse_grid(config.theta_grid);
  const auto phis = parse_grid(config.phi_grid);
  const auto rows = ghz_scan(thetas, phis, config.sv_threshold.value_or(kDefaultSvThreshold));
  auto file = open_output(config.output_dir, "ghz_scan.tsv");
  file << "theta\tphi\tsv_min\tsv_max\tnull_space_dim\tdata_hash\tnote\n";
  file << std::setprecision(17);
  for (const auto& row : rows) {
    if (!row.theta_in_range) err << "warning: " << *ghz_theta_warning(row.theta) << '\n';
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << row.data_hash;
    file << row.theta << '\t' << row.phi << '\t' << row.sv_min << '\t' << row.sv_max << '\t'
         << row.null_space_dim << '\t' << hash.str() << '\t'
         << (row.theta_in_range ? "ok" : "warning:theta-out-of-range") << '\n';
  }
  out << "wrote " << rows.size() << " rows to " << (config.output_dir / "ghz_scan.tsv").string()
      << '\n';
  return 0;
}

}  // namespace

StateSource parse_state_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("state spec must look like <family>:<params>, got '" + spec + "'");
  }
  const std::string family = spec.substr(0, colon);
  const std::string params = spec.substr(colon + 1);

  auto from_pure = [](const PureState& psi) {
    return StateSource{density_from_pure(psi), psi, {}};
  };

  if (family == "ghz") {
    const auto comma = params.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("ghz spec is ghz:<theta>,<phi>");
    const double theta = parse_double(params.substr(0, comma), "theta");
    const double phi = parse_double(params.substr(comma + 1), "phi");
    StateSource source = from_pure(ghz_state(theta, phi));
    if (auto w = ghz_theta_warning(theta)) source.warnings.push_back(*w);
    return source;
  }
  if (family == "diosi") return from_pure(diosi_state(parse_double(params, "phi")));
  if (family == "random") return from_pure(random_pure_state(parse_unsigned(params, "seed")));
  if (family == "basis") {
    const auto index = parse_unsigned(params, "basis index");
    if (index > 7) throw std::invalid_argument("basis index must be in 0..7");
    return from_pure(basis_state(static_cast<int>(index)));
  }
  if (family == "file") {
    std::ifstream in(params);
    if (!in) throw std::runtime_error("cannot read state file '" + params + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::istringstream counter(buffer.str());
    const std::size_t lines = nonblank_lines(counter).size();
    std::istringstream body(buffer.str());
    if (lines == 8) return from_pure(read_state(body));
    if (lines == static_cast<std::size_t>(kTensorSize)) {
      const CorrelationTensor a = read_tensor(body);
      const DensityMatrix rho = density_from_tensor(a);
      if (!positivity_report(rho).positive) {
        throw std::runtime_error("tensor file does not describe a positive density matrix");
      }
      return StateSource{rho, std::nullopt, {}};
    }
    throw std::runtime_error("state file must have 8 (state) or 64 (tensor) lines, found " +
                             std::to_string(lines));
  }
  throw std::invalid_argument("unknown state family '" + family + "'");
}

std::vector<double> parse_grid(const std::string& grid) {
  const auto first = grid.find(':');
  const auto second = first == std::string::npos ? first : grid.find(':', first + 1);
  if (second == std::string::npos) throw std::invalid_argument("grid must be a:b:n");
  const double a = parse_double(grid.substr(0, first), "grid start");
  const double b = parse_double(grid.substr(first + 1, second - first - 1), "grid end");
  const auto n = parse_unsigned(grid.substr(second + 1), "grid size");
  if (n < 1) throw std::invalid_argument("grid must have at least one point");
  std::vector<double> out;
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return out;
}

std::optional<std::int64_t> parse_shots(const std::string& text) {
  if (text == "exact") return std::nullopt;
  const auto n = parse_unsigned(text, "shots");
  if (n < 1 || n > static_cast<std::uint64_t>(INT64_MAX)) {
    throw std::invalid_argument("shots must be a positive integer or 'exact'");
  }
  return static_cast<std::int64_t>(n);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-qubit pure-state tomography from one- and two-qubit mean values"};
  app.require_subcommand(1);

  RunConfig config;
  std::string shots_text = "exact";
  std::string out_dir = ".";
  double sv_threshold = 0.0;
  double tolerance = 0.0;

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", config.state_spec,
                    "ghz:<theta>,<phi> | diosi:<phi> | random:<seed> | basis:<0-7> | file:<path>")
        ->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
  };
  auto add_sampling = [&](CLI::App* sub) {
    auto* shots = sub->add_option("--shots", shots_text, "Shots per setting, or 'exact'")
                      ->capture_default_str();
    sub->add_flag("--exact", "Same as --shots exact")->excludes(shots);
    sub->add_option("--seed", config.seed, "Sampling seed")->capture_default_str();
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--sv-threshold", sv_threshold,
                    "Relative singular-value threshold (default 1e-8, or max(1e-8, 10/sqrt(shots)))")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", tolerance,
                    "Consistency tolerance (default 1e-8, or 50/sqrt(shots))")
        ->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "Write a named state as state and tensor files");
  add_state(gen);
  add_out(gen);

  auto* measure = app.add_subcommand("measure", "Produce the 36 pairwise mean values");
  add_state(measure);
  add_sampling(measure);
  add_out(measure);

  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "Solve for the three-body coefficients from a data file");
  reconstruct_cmd->add_option("--data", config.data_file, "Pairwise data file")->required();
  add_solver(reconstruct_cmd);
  add_out(reconstruct_cmd);

  auto* verify = app.add_subcommand("verify", "Check the pipeline against the dense oracle");
  add_state(verify);
  add_sampling(verify);
  add_solver(verify);
  add_out(verify);

  auto* pipeline = app.add_subcommand("pipeline", "Measure, reconstruct and classify a state");
  add_state(pipeline);
  add_sampling(pipeline);
  add_solver(pipeline);
  add_out(pipeline);

  auto* batch = app.add_subcommand("batch", "Exact pipeline over Haar-random states");
  batch->add_option("--count", config.count, "Number of states")->required();
  batch->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  batch->add_option("--workers", config.workers, "Worker threads (0 = all cores)");
  add_solver(batch);
  add_out(batch);

  auto* scan = app.add_subcommand("ghz-scan", "Spectrum of the system over the GHZ family");
  scan->add_option("--theta-grid", config.theta_grid, "a:b:n, inclusive")->required();
  scan->add_option("--phi-grid", config.phi_grid, "a:b:n, inclusive")->required();
  add_solver(scan);
  add_out(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.output_dir = out_dir;
    config.shots = parse_shots(shots_text);
    if (sv_threshold > 0.0) config.sv_threshold = sv_threshold;
    if (tolerance > 0.0) config.tolerance = tolerance;

    if (config.command == "gen") return cmd_gen(config, out, err);
    if (config.command == "measure") return cmd_measure(config, out, err);
    if (config.command == "reconstruct") return cmd_reconstruct(config, out, err);
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "pipeline") return cmd_pipeline(config, out, err);
    if (config.command == "batch") return cmd_batch(config, out, err);
    if (config.command == "ghz-scan") return cmd_ghz_scan(config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tripletomo::cli

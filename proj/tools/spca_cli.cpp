// Copyright 2026 The spca Authors
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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spca/bench/dataset.hpp"
#include "spca/bench/experiments.hpp"
#include "spca/bench/report.hpp"
#include "spca/bench/synthetic.hpp"
#include "spca/block.hpp"
#include "spca/csv.hpp"
#include "spca/parallel.hpp"
#include "spca/pca.hpp"
#include "spca/simd.hpp"

namespace {

using namespace spca;
using namespace spca::bench;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kSolver = 3 };

struct SolverFlags {
  std::string variant = "sl1";
  std::vector<double> gamma{0.0};
  std::vector<double> mu{1.0};
  double tol = 1e-6;
  int max_iter = 1000;
  std::size_t workers = 1;
  std::size_t chunk = 256;
  std::uint64_t seed = 0;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--variant", f.variant, "sl1, sl0, bl1, bl0 or pca")
      ->check(CLI::IsMember({"sl1", "sl0", "bl1", "bl0", "pca"}))
      ->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "sparsity weight, scalar or one per component")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--mu", f.mu, "block weights, scalar or one per component")->delimiter(',')->capture_default_str();
  cmd->add_option("--tol", f.tol, "relative objective change that stops the iteration")->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "iteration cap per solve")->capture_default_str();
  cmd->add_option("--workers", f.workers, "kernel worker threads (env SPCA_WORKERS)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--chunk", f.chunk, "columns per kernel chunk (env SPCA_CHUNK)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "seed for splits and random initializations")->capture_default_str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

// solve ----------------------------------------------------------------------

struct SolveArgs {
  SolverFlags solver;
  std::string data;
  std::size_t m = 1;
  std::string init;
  bool no_center = false;
  std::string out;
};

int run_solve(const SolveArgs& args) {
  Matrix samples = load_matrix_csv(args.data);
  const Method method = parse_method(args.solver.variant);
  Matrix loadings;
  std::ostringstream summary;
  if (method == Method::PCA) {
    PcaModel model = pca_fit(samples, args.m);
    loadings = model.components;
    summary << "variant pca m " << args.m << " singular_values";
    for (Eigen::Index j = 0; j < model.singular_values.size(); ++j) {
      summary << (j ? ";" : " ") << csv::format_double(model.singular_values[j]);
    }
  } else {
    const DataMatrix a(args.no_center ? samples : center_columns(samples));
    SolverConfig config = solver_config(method, args.m, args.solver.gamma, args.solver.mu);
    config.tol = args.solver.tol;
    config.max_iter = args.solver.max_iter;
    config.workers = args.solver.workers;
    config.chunk = args.solver.chunk;
    config.seed = args.solver.seed;
    if (args.init == "max_norm_column") config.init = InitStrategy::MaxNormColumn;
    if (args.init == "random_orthonormal") config.init = InitStrategy::RandomOrthonormal;
    const SolveResult fit = solve(a, config);
    loadings = fit.loadings.values();
    double objective = 0.0;
    for (const auto& h : fit.report.objective_history) objective += h.empty() ? 0.0 : h.back();
    summary << "variant " << args.solver.variant << " m " << args.m << " objective " << csv::format_double(objective)
            << " sqrt_objective " << csv::format_double(std::sqrt(objective)) << " iterations "
            << fit.report.iterations << " converged " << (fit.report.converged ? "yes" : "no") << " nnz "
            << join(fit.report.nnz_per_component) << " seconds " << csv::format_double(fit.report.wall_time);
  }

  Table table;
  for (Eigen::Index j = 0; j < loadings.cols(); ++j) table.header.push_back("z" + std::to_string(j + 1));
  for (Eigen::Index i = 0; i < loadings.rows(); ++i) {
    std::vector<Cell> row;
    for (Eigen::Index j = 0; j < loadings.cols(); ++j) row.emplace_back(loadings(i, j));
    table.rows.push_back(std::move(row));
  }
  if (args.out.empty()) {
    std::cout << table.to_csv();
  } else {
    emit_report(table, args.out);
  }
  std::cerr << summary.str() << "\n";
  return kOk;
}

// bench-recognition ----------------------------------------------------------

struct RecognitionArgs {
  SolverFlags solver;
  std::string data;
  std::vector<std::size_t> dims{1};
  std::string split;
  std::size_t repetitions = 1;
  std::size_t k = 1;
  bool no_timing = false;
  std::string out;
};

int run_recognition(const RecognitionArgs& args) {
  ExperimentConfig config;
  config.dataset_path = args.data;
  config.method = parse_method(args.solver.variant);
  config.dims = args.dims;
  config.gamma = args.solver.gamma;
  config.mu = args.solver.mu;
  config.tol = args.solver.tol;
  config.max_iter = args.solver.max_iter;
  config.split = SplitPolicy::parse(args.split);
  config.repetitions = args.repetitions;
  config.seed = args.solver.seed;
  config.output_path = args.out;
  config.workers = args.solver.workers;
  config.chunk = args.solver.chunk;
  config.k = args.k;
  config.record_timing = !args.no_timing;
  const RecognitionResult result = run_recognition_experiment(config);
  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.status != "ok";
  std::cerr << "wrote " << result.table.rows.size() << " rows to " << args.out;
  if (failed) std::cerr << " (" << failed << " failed fits, see the status column)";
  std::cerr << "\n";
  return kOk;
}

// bench-timing ---------------------------------------------------------------

struct TimingArgs {
  TimingConfig config;
  std::vector<std::string> variants{"sl1", "sl0", "bl1", "bl0"};
};

int run_timing(TimingArgs args) {
  args.config.variants.clear();
  for (const auto& v : args.variants) args.config.variants.push_back(parse_method(v));
  std::vector<TimingRecord> records;
  const Table table = run_timing_experiment(args.config, &records);
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.status != "ok";
  std::cerr << "wrote " << table.rows.size() << " rows to " << args.config.output_path;
  if (failed) std::cerr << " (" << failed << " failed solves, see the status column)";
  std::cerr << "\n";
  return kOk;
}

// bench-scaling --------------------------------------------------------------

struct ScalingArgs {
  std::string kernel = "threshold_accumulate";
  std::vector<std::size_t> sizes{8000};
  std::vector<std::size_t> workers{1, 2, 4, 8};
  ScalingOptions options;
  std::string out;
};

int run_scaling(const ScalingArgs& args) {
  std::vector<ProblemSize> sizes;
  for (std::size_t n : args.sizes) {
    if (n < 10 || n % 10) throw ArgumentError("size N = " + std::to_string(n) + " must be a multiple of 10");
    sizes.push_back({n / 10, n});
  }
  const auto rows = measure_scaling(parse_kernel_id(args.kernel), sizes, args.workers, args.options);
  Table table;
  table.header = {"kernel", "N", "P", "workers", "instances", "median_seconds", "speedup"};
  for (const auto& r : rows) {
    table.rows.push_back({to_string(r.kernel), static_cast<long long>(r.n), static_cast<long long>(r.p),
                          static_cast<long long>(r.workers), static_cast<long long>(r.instances), r.median_seconds,
                          r.speedup});
  }
  if (args.out.empty()) {
    std::cout << table.to_csv();
  } else {
    emit_report(table, args.out);
  }
  std::cerr << "hardware threads " << std::thread::hardware_concurrency() << ", simd " << simd::active().name << "\n";
  return kOk;
}

// datasets -------------------------------------------------------------------

struct ConvertArgs {
  std::string from = "libsvm";
  std::vector<std::string> inputs;
  std::string out;
  bool group_per_file = false;
  std::size_t group_size = 0;
  std::size_t features = 0;
};

// One parsed input row before the feature width is known.
struct RawRow {
  int label = 0;
  std::map<std::size_t, double> sparse;
  std::vector<double> dense;
};

int label_of(std::string_view field, const std::string& where) {
  const auto v = csv::parse_integer(field);
  if (!v) throw DataError(where + "label '" + std::string(field) + "' is not an integer");
  return static_cast<int>(*v);
}

int run_convert(const ConvertArgs& args) {
  LabeledDataset data;
  std::vector<RawRow> rows;
  std::vector<int> groups;
  std::size_t width = args.features;
  for (std::size_t file = 0; file < args.inputs.size(); ++file) {
    const std::string& path = args.inputs[file];
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto line = csv::clean_line(raw, line_no == 1);
      if (line.empty()) continue;
      const std::string where = path + ":" + std::to_string(line_no) + ": ";
      RawRow row;
      if (args.from == "libsvm") {
        const auto fields = csv::split(line, ' ');
        row.label = label_of(fields[0], where);
        for (std::size_t f = 1; f < fields.size(); ++f) {
          if (fields[f].empty()) continue;
          const auto colon = fields[f].find(':');
          const auto index = csv::parse_integer(fields[f].substr(0, colon));
          const auto value = colon == std::string_view::npos ? std::nullopt : csv::parse_double(fields[f].substr(colon + 1));
          if (!index || *index < 1 || !value) throw DataError(where + "bad libsvm entry '" + std::string(fields[f]) + "'");
          row.sparse[static_cast<std::size_t>(*index - 1)] = *value;
          width = std::max(width, static_cast<std::size_t>(*index));
        }
      } else if (args.from == "label-last" || args.from == "csv-labeled") {
        const auto fields = csv::split(line);
        const bool last = args.from == "label-last";
        if (fields.size() < 2) throw DataError(where + "row needs a label and at least one feature");
        if (!csv::parse_double(fields[last ? fields.size() - 1 : 0])) continue;  // header
        row.label = label_of(fields[last ? fields.size() - 1 : 0], where);
        for (std::size_t f = last ? 0 : 1; f < (last ? fields.size() - 1 : fields.size()); ++f) {
          const auto v = csv::parse_double(fields[f]);
          if (!v) throw DataError(where + "field " + std::to_string(f + 1) + " is not numeric");
          row.dense.push_back(*v);
        }
        if (!rows.empty() && !rows.front().dense.empty() && row.dense.size() != rows.front().dense.size()) {
          throw DataError(where + "expected " + std::to_string(rows.front().dense.size()) + " features, found " +
                          std::to_string(row.dense.size()));
        }
        width = std::max(width, row.dense.size());
      } else {
        throw ArgumentError("unknown input format '" + args.from + "' (libsvm, label-last, csv-labeled)");
      }
      if (args.group_per_file) groups.push_back(static_cast<int>(file + 1));
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw DataError("no samples in the input files");
  if (args.group_size) {
    groups.clear();
    for (std::size_t r = 0; r < rows.size(); ++r) groups.push_back(static_cast<int>(r / args.group_size + 1));
  }

  data.samples = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    for (const auto& [i, v] : rows[r].sparse) {
      if (i >= width) throw DataError("feature index " + std::to_string(i + 1) + " exceeds --features");
      data.samples(ri, static_cast<Eigen::Index>(i)) = v;
    }
    for (std::size_t i = 0; i < rows[r].dense.size(); ++i) data.samples(ri, static_cast<Eigen::Index>(i)) = rows[r].dense[i];
    data.labels.push_back(rows[r].label);
  }
  data.groups = std::move(groups);
  save_dataset(data, args.out);
  std::cerr << "wrote " << data.size() << " samples x " << data.features() << " features to " << args.out << "\n";
  return kOk;
}

int run_synth(const SparseFactorSpec& spec, const std::string& out) {
  const LabeledDataset data = make_sparse_factor_dataset(spec);
  save_dataset(data, out);
  std::cerr << "wrote " << data.size() << " samples x " << data.features() << " features to " << out << "\n";
  return kOk;
}


// Turns `--config FILE` into ordinary flags and applies the SPCA_WORKERS /
// SPCA_CHUNK fallbacks. Explicit flags win over the file, the file wins
// over the environment.
std::vector<std::string> expand_arguments(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto given = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string file;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ArgumentError("--config needs a file name");
      file = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      continue;
    }
    std::ifstream in(file);
    if (!in) throw DataError("cannot open config file " + file);
    std::vector<std::string> extra;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view line = csv::clean_line(raw, line_no == 1);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      const auto fields = csv::split(line, '=');
      if (fields.size() == 1 && fields[0].empty()) continue;
      if (fields.size() != 2 || fields[0].empty()) {
        throw ArgumentError(file + ":" + std::to_string(line_no) + ": expected key = value");
      }
      std::string key(fields[0]);
      std::string value(fields[1]);
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      std::replace(key.begin(), key.end(), '_', '-');
      const std::string flag = "--" + key;
      if (given(flag)) continue;
      if (value == "true") {
        extra.push_back(flag);
      } else if (value != "false") {
        extra.push_back(flag);
        extra.push_back(value);
      }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(i), extra.begin(), extra.end());
    i += extra.size();
    --i;
  }

  const std::string command = args.empty() ? "" : args.front();
  for (const auto& [flag, env] : {std::pair{"--workers", "SPCA_WORKERS"}, std::pair{"--chunk", "SPCA_CHUNK"}}) {
    const bool accepts = command == "solve" || command == "bench-recognition" || command == "bench-timing" ||
                         (command == "bench-scaling" && std::string(flag) == "--chunk");
    const char* value = std::getenv(env);
    if (!accepts || !value || !*value || given(flag)) continue;
    const auto parsed = csv::parse_integer(value);
    if (!parsed || *parsed < 1) throw ArgumentError(std::string(env) + " must be a positive integer, got '" + value + "'");
    args.emplace_back(flag);
    args.emplace_back(value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse PCA by the generalized power method: solvers and benchmark harness"};
  app.name("spca");
  app.require_subcommand(1);
  app.set_version_flag("--version", "spca 1.0.0");
  std::string config_file;  // consumed by expand_arguments

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "fit one SPCA or PCA model and write the loadings");
  solve_cmd->add_option("--config", config_file, "flat key = value file mirroring the flags");
  add_solver_flags(solve_cmd, solve_args.solver);
  solve_cmd->add_option("--data", solve_args.data, "CSV matrix, one sample per row")->required();
  solve_cmd->add_option("--m", solve_args.m, "number of components")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_option("--init", solve_args.init, "max_norm_column or random_orthonormal")
      ->check(CLI::IsMember({"max_norm_column", "random_orthonormal"}));
  solve_cmd->add_flag("--no-center", solve_args.no_center, "use the columns as given");
  solve_cmd->add_option("--out", solve_args.out, "loadings CSV (default stdout)");

  RecognitionArgs rec_args;
  auto* rec_cmd = app.add_subcommand("bench-recognition", "embed with SPCA or PCA and classify by nearest neighbour");
  rec_cmd->add_option("--config", config_file, "flat key = value file mirroring the flags");
  add_solver_flags(rec_cmd, rec_args.solver);
  rec_cmd->add_option("--data", rec_args.data, "labeled CSV: label,[group,]features...")->required();
  rec_cmd->add_option("--m", rec_args.dims, "subspace dimensions to sweep")->delimiter(',')->capture_default_str();
  rec_cmd->add_option("--split", rec_args.split, "fixed:<n>, per_class:<k> or grouped:<g;...>")->required();
  rec_cmd->add_option("--repetitions", rec_args.repetitions, "independent repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rec_cmd->add_option("--k", rec_args.k, "neighbours")->check(CLI::PositiveNumber)->capture_default_str();
  rec_cmd->add_flag("--no-timing", rec_args.no_timing, "write fit_seconds as 0 for byte-stable output");
  rec_cmd->add_option("--out", rec_args.out, "result CSV")->required();

  TimingArgs timing_args;
  auto& tc = timing_args.config;
  auto* timing_cmd = app.add_subcommand("bench-timing", "time the four solvers on Gaussian P x N instances, P = N/10");
  timing_cmd->add_option("--config", config_file, "flat key = value file mirroring the flags");
  timing_cmd->add_option("--sizes", tc.sizes, "N values")->delimiter(',')->capture_default_str();
  timing_cmd->add_option("--variant", timing_args.variants, "solvers to time")
      ->delimiter(',')
      ->check(CLI::IsMember({"sl1", "sl0", "bl1", "bl0"}))
      ->capture_default_str();
  timing_cmd->add_option("--gamma", tc.gammas, "gamma values")->delimiter(',')->capture_default_str();
  timing_cmd->add_option("--instances", tc.instances, "instances per size")->check(CLI::PositiveNumber)->capture_default_str();
  timing_cmd->add_option("--m", tc.m, "components")->check(CLI::PositiveNumber)->capture_default_str();
  timing_cmd->add_option("--workers", tc.workers, "worker counts (env SPCA_WORKERS)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  timing_cmd->add_option("--chunk", tc.chunk, "columns per kernel chunk (env SPCA_CHUNK)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  timing_cmd->add_option("--seed", tc.seed, "instance seed")->capture_default_str();
  timing_cmd->add_option("--tol", tc.tol, "relative objective change that stops the iteration")->capture_default_str();
  timing_cmd->add_option("--max-iter", tc.max_iter, "iteration cap per solve")->capture_default_str();
  timing_cmd->add_option("--memory-limit", tc.memory_limit_bytes, "bytes per instance, 0 asks the system")
      ->capture_default_str();
  timing_cmd->add_option("--out", tc.output_path, "result CSV")->required();

  ScalingArgs scaling_args;
  auto* scaling_cmd = app.add_subcommand("bench-scaling", "median kernel time and speedup per worker count");
  scaling_cmd->add_option("--config", config_file, "flat key = value file mirroring the flags");
  scaling_cmd->add_option("--kernel", scaling_args.kernel, "matvec_t, threshold_accumulate or gram_apply")
      ->capture_default_str();
  scaling_cmd->add_option("--sizes", scaling_args.sizes, "N values, P = N/10")->delimiter(',')->capture_default_str();
  scaling_cmd->add_option("--workers", scaling_args.workers, "worker counts")->delimiter(',')->capture_default_str();
  scaling_cmd->add_option("--instances", scaling_args.options.instances, "instances per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling_cmd->add_option("--repeats", scaling_args.options.repeats, "calls per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling_cmd->add_option("--chunk", scaling_args.options.chunk, "columns per kernel chunk")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling_cmd->add_option("--seed", scaling_args.options.seed, "instance seed")->capture_default_str();
  scaling_cmd->add_option("--out", scaling_args.out, "result CSV (default stdout)");

  auto* datasets_cmd = app.add_subcommand("datasets", "dataset helpers");
  datasets_cmd->require_subcommand(1);
  ConvertArgs convert_args;
  auto* convert_cmd = datasets_cmd->add_subcommand("convert", "normalize a dataset to the labeled CSV format");
  convert_cmd->add_option("--from", convert_args.from, "libsvm, label-last or csv-labeled")
      ->check(CLI::IsMember({"libsvm", "label-last", "csv-labeled"}))
      ->capture_default_str();
  convert_cmd->add_option("--in", convert_args.inputs, "input files, concatenated in order")->required();
  convert_cmd->add_option("--out", convert_args.out, "labeled CSV")->required();
  convert_cmd->add_flag("--group-per-file", convert_args.group_per_file, "group id = 1-based input file index");
  convert_cmd->add_option("--group-size", convert_args.group_size, "group id = consecutive blocks of this many rows");
  convert_cmd->add_option("--features", convert_args.features, "feature count for sparse inputs (default: largest index)");

  SparseFactorSpec synth_spec;
  std::string synth_out;
  auto* synth_cmd = datasets_cmd->add_subcommand("synth", "generate labeled data with planted sparse factors");
  synth_cmd->add_option("--classes", synth_spec.classes, "classes")->capture_default_str();
  synth_cmd->add_option("--per-class", synth_spec.per_class, "samples per class")->capture_default_str();
  synth_cmd->add_option("--features", synth_spec.features, "features")->capture_default_str();
  synth_cmd->add_option("--factors", synth_spec.factors, "sparse factors")->capture_default_str();
  synth_cmd->add_option("--support", synth_spec.support, "features per factor")->capture_default_str();
  synth_cmd->add_option("--scale", synth_spec.scale, "class-mean spread per factor")->delimiter(',')->capture_default_str();
  synth_cmd->add_option("--within", synth_spec.within, "within-class spread, relative to scale")->capture_default_str();
  synth_cmd->add_option("--noise", synth_spec.noise, "dense noise standard deviation")->capture_default_str();
  synth_cmd->add_option("--seed", synth_spec.seed, "seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "labeled CSV")->required();

  try {
    std::vector<std::string> args = expand_arguments(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::Success& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kUsage;
    }
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (rec_cmd->parsed()) return run_recognition(rec_args);
    if (timing_cmd->parsed()) return run_timing(timing_args);
    if (scaling_cmd->parsed()) return run_scaling(scaling_args);
    if (convert_cmd->parsed()) return run_convert(convert_args);
    if (synth_cmd->parsed()) return run_synth(synth_spec, synth_out);
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const std::bad_alloc&) {
    std::cerr << "data error: out of memory\n";
    return kData;
  }
}

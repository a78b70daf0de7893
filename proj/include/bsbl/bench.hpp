#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bsbl/datagen.hpp"
#include "bsbl/engine.hpp"

namespace bsbl::bench {

struct ScenarioEntry {
  std::string name;   // CSV label, unique across the experiment
  ScenarioSpec spec;  // snr_db and seed are filled per cell at run time
};

struct AlgorithmSpec {
  std::string name;  // CSV label; "oracle_mmse" is reserved for the baseline
  SolverConfig config;
};

struct ExperimentConfig {
  std::vector<ScenarioEntry> scenarios;
  std::vector<double> snr_grid = {0, 5, 10, 15, 20};
  int trials = 50;
  std::vector<AlgorithmSpec> algorithms;
  std::string output_dir = "results";
  std::uint64_t master_seed = 12345;
  bool report_paper_f1 = false;  // aggregate f1 columns use the paper form
  double support_tau = defaults::support_tau;

  void validate() const;
  // Scales every scenario's N and nonzero counts by the factor (block length
  // is preserved; block/isolated counts scale).
  void apply_scale(double factor);
};

struct TrialRecord {
  std::string scenario;
  double snr_db = 0.0;
  int trial_index = 0;
  std::string algorithm;
  double nmse = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1_standard = 0.0;
  double f1_paper = 0.0;
  int em_iterations = 0;
  int total_inner_iterations = 0;
  bool converged = false;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  bool failed = false;  // numeric failure: metric fields are NaN in the CSV
};

struct AggregateRow {
  std::string scenario;
  double snr_db = 0.0;
  std::string algorithm;
  double nmse_mean = 0.0;
  double nmse_db = 0.0;
  double nmse_stderr = 0.0;
  double f1_mean = 0.0;
  double f1_stderr = 0.0;
  int n_trials = 0;
};

struct RunOptions {
  int threads = 0;      // 0 = hardware concurrency
  bool timing = false;  // record wall time per run; off keeps reruns byte-identical
  bool verbose = false; // per-cell dataset checksums on stderr
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<AggregateRow> aggregates;
  std::filesystem::path per_trial_path;
  std::filesystem::path aggregate_path;
};

// Strict parser: unknown keys, missing required fields, and invariant
// violations raise ConfigError naming the offending key.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig validate_config(const std::string& path);
std::string normalized_json(const ExperimentConfig& cfg);

// The three built-in scenarios at desk scale: 50 trials, three SNR points,
// all variants.
ExperimentConfig demo_config();

// Runs the full sweep. Every algorithm (plus the oracle baseline) sees the
// identical dataset within one (scenario, snr, trial) cell; rows are emitted
// in deterministic (scenario, snr, trial, algorithm) order regardless of the
// worker pool schedule.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const RunOptions& opts = {});

std::string per_trial_csv(const std::vector<TrialRecord>& records);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

}  // namespace bsbl::bench

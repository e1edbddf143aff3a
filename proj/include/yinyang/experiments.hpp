// Benchmark protocols: the shallow / deep / frozen-deep comparison, the
// hidden-layer-size sweep, and the statistics used to summarize them.
// Individual runs are independent, so they can execute on a worker pool;
// results are keyed by run index, which keeps every aggregate deterministic
// regardless of scheduling.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "yinyang/tinynet.hpp"

namespace yinyang {

struct Scenario {
  enum class Kind { kDeep, kShallow, kFrozenDeep };

  Kind kind = Kind::kDeep;
  int hidden = 30;  // ignored for the shallow net

  MlpArchitecture architecture() const;
  std::string name() const;  // "deep_30", "shallow", "frozen_deep_20", ...

  static Scenario deep(int hidden) { return {Kind::kDeep, hidden}; }
  static Scenario shallow() { return {Kind::kShallow, 0}; }
  static Scenario frozen_deep(int hidden) { return {Kind::kFrozenDeep, hidden}; }
};

struct RunResult {
  Scenario scenario;
  TrainConfig config;  // includes the run's init and shuffle seeds
  double final_test_accuracy = 0.0;
  TrainCurves curves;
  std::array<std::array<int, 3>, 3> confusion{};
  std::vector<int> test_predictions;
};

struct Summary {
  int n = 0;
  double mean = 0.0;
  std::optional<double> std;  // sample std (n-1); absent for n < 2
  double min = 0.0;
  double max = 0.0;
};

// Unbiased statistics over a non-empty list; throws ConfigError when empty.
Summary summarize(const std::vector<double>& values);
// The n >= 2 surface of the same statistic; throws ConfigError for n < 2.
double sample_std(const std::vector<double>& values);

struct RunOptions {
  TrainConfig train;   // Table-style defaults; tests may shrink epochs
  int workers = 0;     // 0 = hardware concurrency
};

// Run i uses init_seed = base_seed + i and shuffle_seed = base_seed + 1e6 + i
// on the fixed default splits. Training divergence is rethrown with the
// offending seed attached.
std::vector<RunResult> run_scenario(const Scenario& scenario, int n_runs,
                                    std::uint64_t base_seed,
                                    const RunOptions& options = {});

struct CellResult {
  Scenario scenario;
  std::vector<RunResult> runs;
  Summary accuracy;
};

// The five benchmark cells: deep and frozen-deep at 20 and 30 hidden units,
// plus the shallow net.
std::vector<CellResult> table1(int n_runs, std::uint64_t base_seed,
                               const RunOptions& options = {});

struct SweepEntry {
  int hidden = 0;
  std::vector<double> test_errors;  // one per repetition
  Summary error;                    // over test_errors
};

struct SweepResult {
  int reps = 0;
  std::vector<SweepEntry> entries;
};

inline const std::vector<int>& default_sweep_sizes() {
  static const std::vector<int> sizes{5, 10, 15, 20, 30, 50, 100, 200};
  return sizes;
}

// Deep(h) trained reps times per hidden size; aggregates final test errors.
SweepResult hidden_sweep(const std::vector<int>& sizes, int reps,
                         std::uint64_t base_seed,
                         const RunOptions& options = {});

}  // namespace yinyang

#include "yinyang/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "yinyang/errors.hpp"

namespace yinyang {

namespace {

constexpr std::uint64_t kShuffleSeedOffset = 1000000;

// Runs fn(0..n-1) on up to `workers` threads. The first exception wins and
// is rethrown on the calling thread after all workers joined.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const int i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

MlpArchitecture Scenario::architecture() const {
  switch (kind) {
    case Kind::kDeep: return MlpArchitecture::deep(hidden);
    case Kind::kShallow: return MlpArchitecture::shallow();
    case Kind::kFrozenDeep: return MlpArchitecture::deep(hidden, true);
  }
  throw ConfigError("unknown scenario kind");
}

std::string Scenario::name() const {
  switch (kind) {
    case Kind::kDeep: return "deep_" + std::to_string(hidden);
    case Kind::kShallow: return "shallow";
    case Kind::kFrozenDeep: return "frozen_deep_" + std::to_string(hidden);
  }
  return "?";
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("summarize: no values");
  Summary s;
  s.n = static_cast<int>(values.size());
  s.mean = 0.0;
  for (double v : values) s.mean += v;
  s.mean /= s.n;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  if (s.n >= 2) s.std = sample_std(values);
  return s;
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw ConfigError("sample_std: need at least two values");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<RunResult> run_scenario(const Scenario& scenario, int n_runs,
                                    std::uint64_t base_seed,
                                    const RunOptions& options) {
  if (n_runs < 1) throw ConfigError("run_scenario: n_runs must be >= 1");
  const Splits splits = default_splits();
  const MlpArchitecture arch = scenario.architecture();

  std::vector<RunResult> results(n_runs);
  parallel_for(n_runs, options.workers, [&](int i) {
    TrainConfig cfg = options.train;
    cfg.init_seed = base_seed + static_cast<std::uint64_t>(i);
    cfg.shuffle_seed =
        base_seed + kShuffleSeedOffset + static_cast<std::uint64_t>(i);
    try {
      TrainResult trained = train(arch, cfg, splits.train, splits.validation);
      Evaluation eval = evaluate(trained.net, splits.test);
      RunResult& r = results[i];
      r.scenario = scenario;
      r.config = cfg;
      r.final_test_accuracy = eval.accuracy;
      r.curves = std::move(trained.curves);
      r.confusion = eval.confusion;
      r.test_predictions = std::move(eval.predictions);
    } catch (const DivergenceError& e) {
      throw DivergenceError(std::string(e.what()) + " (scenario " +
                            scenario.name() + ", init_seed " +
                            std::to_string(cfg.init_seed) + ")");
    }
  });
  return results;
}

namespace {

Summary accuracy_summary(const std::vector<RunResult>& runs) {
  std::vector<double> accs;
  accs.reserve(runs.size());
  for (const auto& r : runs) accs.push_back(r.final_test_accuracy);
  return summarize(accs);
}

}  // namespace

std::vector<CellResult> table1(int n_runs, std::uint64_t base_seed,
                               const RunOptions& options) {
  const std::vector<Scenario> cells{
      Scenario::deep(20), Scenario::deep(30), Scenario::frozen_deep(20),
      Scenario::frozen_deep(30), Scenario::shallow()};
  std::vector<CellResult> out;
  out.reserve(cells.size());
  for (const Scenario& s : cells) {
    CellResult cell;
    cell.scenario = s;
    cell.runs = run_scenario(s, n_runs, base_seed, options);
    cell.accuracy = accuracy_summary(cell.runs);
    out.push_back(std::move(cell));
  }
  return out;
}

SweepResult hidden_sweep(const std::vector<int>& sizes, int reps,
                         std::uint64_t base_seed, const RunOptions& options) {
  if (sizes.empty()) throw ConfigError("hidden_sweep: no sizes");
  if (reps < 2) throw ConfigError("hidden_sweep: reps must be >= 2");
  SweepResult sweep;
  sweep.reps = reps;
  for (int h : sizes) {
    SweepEntry entry;
    entry.hidden = h;
    const auto runs = run_scenario(Scenario::deep(h), reps, base_seed, options);
    for (const auto& r : runs) {
      entry.test_errors.push_back(1.0 - r.final_test_accuracy);
    }
    entry.error = summarize(entry.test_errors);
    sweep.entries.push_back(std::move(entry));
  }
  return sweep;
}

}  // namespace yinyang

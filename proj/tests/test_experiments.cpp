#include <cmath>

#include <doctest.h>

#include "yinyang/errors.hpp"
#include "yinyang/experiments.hpp"

using namespace yinyang;

namespace {

RunOptions quick_options(int epochs, int workers = 0) {
  RunOptions opts;
  opts.train.epochs = epochs;
  opts.workers = workers;
  return opts;
}

}  // namespace

TEST_CASE("summarize computes unbiased statistics") {
  const Summary two = summarize({0.9, 1.1});
  CHECK(two.n == 2);
  CHECK(two.mean == doctest::Approx(1.0));
  REQUIRE(two.std.has_value());
  CHECK(*two.std == doctest::Approx(std::sqrt(0.02)));
  CHECK(two.min == 0.9);
  CHECK(two.max == 1.1);

  const Summary flat = summarize({0.4, 0.4, 0.4});
  CHECK(*flat.std == doctest::Approx(0.0));
  CHECK(*summarize({1.0, 1.0, 1.0}).std == 0.0);

  const Summary one = summarize({0.7});
  CHECK(one.mean == 0.7);
  CHECK_FALSE(one.std.has_value());

  CHECK_THROWS_AS(summarize({}), ConfigError);
  CHECK_THROWS_AS(sample_std({1.0}), ConfigError);
}

TEST_CASE("scenario architectures") {
  CHECK(Scenario::deep(30).architecture().layer_sizes ==
        std::vector<int>{4, 30, 3});
  CHECK(Scenario::shallow().architecture().layer_sizes ==
        std::vector<int>{4, 3});
  const MlpArchitecture frozen = Scenario::frozen_deep(20).architecture();
  CHECK(frozen.layer_sizes == std::vector<int>{4, 20, 3});
  CHECK(frozen.frozen == std::vector<bool>{true, false});
  CHECK(Scenario::frozen_deep(20).name() == "frozen_deep_20");
}

TEST_CASE("run_scenario derives seeds and is reproducible") {
  const auto runs =
      run_scenario(Scenario::deep(5), 3, 900, quick_options(2));
  REQUIRE(runs.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(runs[i].config.init_seed == 900 + static_cast<std::uint64_t>(i));
    CHECK(runs[i].config.shuffle_seed ==
          900 + 1000000 + static_cast<std::uint64_t>(i));
    CHECK(runs[i].curves.train_error.size() == 2);
    CHECK(runs[i].test_predictions.size() == 1000);
  }

  const auto again =
      run_scenario(Scenario::deep(5), 3, 900, quick_options(2));
  for (int i = 0; i < 3; ++i) {
    CHECK(runs[i].final_test_accuracy == again[i].final_test_accuracy);
    CHECK(runs[i].curves.validation_error == again[i].curves.validation_error);
  }
}

TEST_CASE("parallel scheduling does not change results") {
  const auto serial =
      run_scenario(Scenario::frozen_deep(6), 4, 31, quick_options(1, 1));
  const auto parallel =
      run_scenario(Scenario::frozen_deep(6), 4, 31, quick_options(1, 4));
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].final_test_accuracy == parallel[i].final_test_accuracy);
    CHECK(serial[i].confusion == parallel[i].confusion);
  }
}

TEST_CASE("run_scenario validates its inputs") {
  CHECK_THROWS_AS(run_scenario(Scenario::deep(5), 0, 1, quick_options(1)),
                  ConfigError);
}

TEST_CASE("table1 produces the five benchmark cells in order") {
  const auto cells = table1(2, 7, quick_options(1));
  REQUIRE(cells.size() == 5);
  CHECK(cells[0].scenario.name() == "deep_20");
  CHECK(cells[1].scenario.name() == "deep_30");
  CHECK(cells[2].scenario.name() == "frozen_deep_20");
  CHECK(cells[3].scenario.name() == "frozen_deep_30");
  CHECK(cells[4].scenario.name() == "shallow");
  for (const auto& cell : cells) {
    CHECK(cell.runs.size() == 2);
    CHECK(cell.accuracy.n == 2);
    CHECK(cell.accuracy.std.has_value());
    CHECK(cell.accuracy.mean >= 0.0);
    CHECK(cell.accuracy.mean <= 1.0);
  }
}

TEST_CASE("hidden_sweep aggregates per-size errors") {
  const SweepResult sweep = hidden_sweep({3, 6}, 2, 11, quick_options(1));
  CHECK(sweep.reps == 2);
  REQUIRE(sweep.entries.size() == 2);
  CHECK(sweep.entries[0].hidden == 3);
  CHECK(sweep.entries[1].hidden == 6);
  for (const auto& e : sweep.entries) {
    CHECK(e.test_errors.size() == 2);
    CHECK(e.error.n == 2);
    for (double err : e.test_errors) {
      CHECK(err == doctest::Approx(1.0 - (1.0 - err)));
      CHECK(err >= 0.0);
      CHECK(err <= 1.0);
    }
  }
  CHECK_THROWS_AS(hidden_sweep({}, 2, 1, quick_options(1)), ConfigError);
  CHECK_THROWS_AS(hidden_sweep({5}, 1, 1, quick_options(1)), ConfigError);
}

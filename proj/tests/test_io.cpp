#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "yinyang/errors.hpp"
#include "yinyang/io.hpp"

using namespace yinyang;

TEST_CASE("doubles survive the 17-digit round trip") {
  Rng rng(808);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform();
    const std::string s = io::format_double(x);
    double back = 0.0;
    sscanf(s.c_str(), "%lf", &back);
    REQUIRE(back == x);
  }
  CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("dataset CSV round-trips byte for byte") {
  const Dataset ds = generate(42, 137, {});
  const std::string csv = io::dataset_to_csv(ds);
  const Dataset back = io::dataset_from_csv(csv);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    REQUIRE(back.samples[i].x == ds.samples[i].x);
    REQUIRE(back.samples[i].y == ds.samples[i].y);
    REQUIRE(back.samples[i].label == ds.samples[i].label);
  }
  CHECK(io::dataset_to_csv(back) == csv);
}

TEST_CASE("dataset CSV rejects malformed input") {
  CHECK_THROWS_AS(io::dataset_from_csv("a,b\n"), IoError);
  CHECK_THROWS_AS(io::dataset_from_csv("x,y,class\n0.5\n"), IoError);
  CHECK_THROWS_AS(io::dataset_from_csv("x,y,class\n0.5,0.5,7\n"), IoError);
  CHECK_THROWS_AS(io::dataset_from_csv("x,y,class\n0.5,zebra,1\n"), IoError);
  CHECK_NOTHROW(io::dataset_from_csv("x,y,class\n0.5,0.5,1\n"));
}

TEST_CASE("event CSV round-trips for both headers") {
  io::EventTable spikes;
  spikes.rows = {{0, 1, 2.25}, {0, 3, 2.5}, {1, 0, 0.125}};
  const std::string csv = io::events_to_csv(spikes);
  CHECK(csv.rfind("sample_id,neuron_id,time_ms\n", 0) == 0);
  const io::EventTable back = io::events_from_csv(csv);
  CHECK_FALSE(back.is_rate);
  REQUIRE(back.rows.size() == 3);
  CHECK(back.rows[1].neuron_id == 3);
  CHECK(io::events_to_csv(back) == csv);

  io::EventTable rates;
  rates.is_rate = true;
  rates.rows = {{0, 0, 80.0}};
  const std::string rcsv = io::events_to_csv(rates);
  CHECK(rcsv.rfind("sample_id,neuron_id,rate_hz\n", 0) == 0);
  CHECK(io::events_from_csv(rcsv).is_rate);
  CHECK(io::events_to_csv(io::events_from_csv(rcsv)) == rcsv);

  CHECK_THROWS_AS(io::events_from_csv("bogus\n1,2,3\n"), IoError);
}

TEST_CASE("single spike train CSV round-trips") {
  const SpikeTrain train =
      encode_latency({0.75, 0.3, 0.25, 0.7}, {0.0, 10.0});
  const std::string csv = io::spike_train_to_csv(train);
  CHECK(csv.rfind("neuron_id,time_ms\n", 0) == 0);
  const SpikeTrain back = io::spike_train_from_csv(csv);
  REQUIRE(back.size() == train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    CHECK(back[i].neuron_id == train[i].neuron_id);
    CHECK(back[i].time_ms == train[i].time_ms);
  }
  CHECK(io::spike_train_to_csv(back) == csv);
  CHECK_THROWS_AS(io::spike_train_from_csv("x,y\n"), IoError);
}

TEST_CASE("run result JSON round-trips") {
  RunResult r;
  r.scenario = Scenario::frozen_deep(20);
  r.config.epochs = 3;
  r.config.lr = 0.01;
  r.config.init_seed = 12;
  r.config.shuffle_seed = 1000012;
  r.final_test_accuracy = 0.753;
  r.curves.train_error = {0.5, 0.4, 0.3};
  r.curves.validation_error = {0.55, 0.45, 0.35};
  r.confusion = {{{300, 20, 14}, {25, 299, 9}, {4, 7, 322}}};
  r.test_predictions = {0, 1, 2, 2, 1};

  const nlohmann::json j = io::run_result_to_json(r);
  const RunResult back = io::run_result_from_json(j);
  CHECK(back.scenario.name() == "frozen_deep_20");
  CHECK(back.config.epochs == 3);
  CHECK(back.config.init_seed == 12);
  CHECK(back.final_test_accuracy == r.final_test_accuracy);
  CHECK(back.curves.train_error == r.curves.train_error);
  CHECK(back.confusion == r.confusion);
  CHECK(back.test_predictions == r.test_predictions);
  CHECK(io::run_result_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("checkpoints restore networks bit-exactly") {
  const MlpState net = init(MlpArchitecture::deep(13, true), 99);
  const nlohmann::json j = io::checkpoint_to_json(net);
  const MlpState back = io::checkpoint_from_json(j);
  CHECK(back.arch.layer_sizes == net.arch.layer_sizes);
  CHECK(back.arch.frozen == net.arch.frozen);
  REQUIRE(back.layers.size() == net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    REQUIRE(back.layers[l].w.data == net.layers[l].w.data);
    REQUIRE(back.layers[l].b == net.layers[l].b);
  }
  CHECK(io::checkpoint_to_json(back).dump() == j.dump());

  nlohmann::json bad = j;
  bad["layers"][0]["weights"] = std::vector<double>{1.0};
  CHECK_THROWS_AS(io::checkpoint_from_json(bad), IoError);
}

TEST_CASE("sweep JSON and CSV formatting") {
  SweepResult sweep;
  sweep.reps = 2;
  SweepEntry e;
  e.hidden = 10;
  e.test_errors = {0.12, 0.10};
  e.error = summarize(e.test_errors);
  sweep.entries.push_back(e);

  const SweepResult back = io::sweep_from_json(io::sweep_to_json(sweep));
  CHECK(back.reps == 2);
  REQUIRE(back.entries.size() == 1);
  CHECK(back.entries[0].test_errors == e.test_errors);
  CHECK(back.entries[0].error.mean == e.error.mean);

  const std::string csv = io::sweep_to_csv(sweep);
  CHECK(csv.rfind("hidden,mean_test_error,std_test_error,reps\n", 0) == 0);
  CHECK(csv.find("10,0.110000,") != std::string::npos);
}

TEST_CASE("table1 CSV mirrors the benchmark layout") {
  std::vector<CellResult> cells(5);
  cells[0].scenario = Scenario::deep(20);
  cells[1].scenario = Scenario::deep(30);
  cells[2].scenario = Scenario::frozen_deep(20);
  cells[3].scenario = Scenario::frozen_deep(30);
  cells[4].scenario = Scenario::shallow();
  cells[0].accuracy = summarize({0.97, 0.97});
  cells[1].accuracy = summarize({0.976, 0.976});
  cells[2].accuracy = summarize({0.783, 0.783});
  cells[3].accuracy = summarize({0.855, 0.855});
  cells[4].accuracy = summarize({0.638});  // n = 1: std is n/a

  const std::string csv = io::table1_to_csv(cells);
  CHECK(csv.rfind("network,hidden_20,hidden_30\n", 0) == 0);
  CHECK(csv.find("\ndeep,97.00 \xC2\xB1 0.00,97.60 \xC2\xB1 0.00\n") !=
        std::string::npos);
  CHECK(csv.find("deep (frozen lower weights),78.30") != std::string::npos);
  CHECK(csv.find("shallow,63.80 \xC2\xB1 n/a,\n") != std::string::npos);
}

TEST_CASE("atomic file writes land complete") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "yy_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "data.csv").string();
  io::write_file_atomic(path, "hello\n");
  CHECK(io::read_file(path) == "hello\n");
  io::write_file_atomic(path, "replaced\n");
  CHECK(io::read_file(path) == "replaced\n");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  fs::remove_all(dir);

  CHECK_THROWS_AS(io::read_file((dir / "missing.txt").string()), IoError);
}

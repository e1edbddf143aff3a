// Command-line front end: dataset generation, input encoding, training,
// benchmark experiments and SVG figures.
//
// Exit codes: 0 success, 2 usage or bad configuration, 3 I/O failure,
// 4 training divergence.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "yinyang/encoders.hpp"
#include "yinyang/errors.hpp"
#include "yinyang/experiments.hpp"
#include "yinyang/io.hpp"
#include "yinyang/sampler.hpp"
#include "yinyang/svg.hpp"
#include "yinyang/tinynet.hpp"

namespace {

using yinyang::ConfigError;
using yinyang::IoError;

// Bridges a JSON config file into CLI11 options: a file value applies only
// when the flag was not given on the command line, so precedence is
// flag > file > built-in default. Unknown keys are rejected.
class ConfigBinder {
 public:
  template <typename T>
  void bind(CLI::Option* opt, T& var) {
    entries_[opt->get_lnames().front()] = {opt, [&var](const nlohmann::json& v) {
                                             var = v.get<T>();
                                           }};
  }

  void apply(const nlohmann::json& cfg, const std::string& command) {
    if (!cfg.is_object()) {
      throw ConfigError("config file must hold a JSON object");
    }
    for (const auto& [key, value] : cfg.items()) {
      const auto it = entries_.find(key);
      if (it == entries_.end()) {
        throw ConfigError("config key '" + key + "' is not an option of '" +
                          command + "'");
      }
      if (it->second.opt->count() == 0) {
        it->second.apply(value);
        applied_.insert(key);
      }
    }
  }

  // True if the option was given on the command line or by the config file.
  bool given(const CLI::Option* opt) const {
    return opt->count() > 0 ||
           applied_.count(opt->get_lnames().front()) > 0;
  }

 private:
  struct Entry {
    CLI::Option* opt;
    std::function<void(const nlohmann::json&)> apply;
  };

  std::map<std::string, Entry> entries_;
  std::set<std::string> applied_;
};

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
};

CommonArgs make_common(std::uint64_t seed) {
  CommonArgs args;
  args.seed = seed;
  return args;
}

void add_config_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "JSON config file; flags override file values");
}

void require_out(const CommonArgs& args) {
  if (args.out_path.empty()) {
    throw CLI::RequiredError("--out");
  }
}

yinyang::RateMode parse_rate_mode(const std::string& mode) {
  if (mode == "continuous") return yinyang::RateMode::kContinuous;
  if (mode == "poisson") return yinyang::RateMode::kPoisson;
  if (mode == "regular") return yinyang::RateMode::kRegular;
  throw ConfigError("unknown rate mode '" + mode + "'");
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  CommonArgs common = make_common(42);
  std::size_t size = 5000;
  yinyang::GeometryParams geometry;
};

void run_generate(const GenerateArgs& a) {
  require_out(a.common);
  if (a.size < 1) throw ConfigError("--size must be >= 1");
  const yinyang::Dataset ds =
      yinyang::generate(a.common.seed, a.size, a.geometry);
  yinyang::io::write_file_atomic(a.common.out_path,
                                 yinyang::io::dataset_to_csv(ds));
  const auto counts = ds.class_counts();
  std::printf("wrote %zu samples to %s\n", ds.size(), a.common.out_path.c_str());
  std::printf("per-class counts (Yin/Yang/Dot): %zu/%zu/%zu\n", counts[0],
              counts[1], counts[2]);
}

// ------------------------------------------------------------------ encode

struct EncodeArgs {
  CommonArgs common = make_common(1);
  std::string in_path;
  std::string scheme = "latency";
  double r_big = 0.5;
  yinyang::LatencyConfig latency;
  yinyang::LifEncoderConfig lif;
  yinyang::RateConfig rate;
  std::string rate_mode = "continuous";
};

void run_encode(const EncodeArgs& a) {
  require_out(a.common);
  if (a.in_path.empty()) throw CLI::RequiredError("--in");
  if (a.scheme != "latency" && a.scheme != "lif" && a.scheme != "rate") {
    throw ConfigError("unknown scheme '" + a.scheme +
                      "' (latency, lif or rate)");
  }
  yinyang::Dataset ds =
      yinyang::io::dataset_from_csv(yinyang::io::read_file(a.in_path));
  ds.geometry.r_big = a.r_big;

  yinyang::RateConfig rate_cfg = a.rate;
  rate_cfg.mode = parse_rate_mode(a.rate_mode);

  yinyang::io::EventTable table;
  table.is_rate = a.scheme == "rate" &&
                  rate_cfg.mode == yinyang::RateMode::kContinuous;
  yinyang::Rng rng(a.common.seed);

  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const yinyang::FeatureVector f =
        yinyang::features(ds.samples[i], ds.geometry);
    const int sample_id = static_cast<int>(i);
    if (a.scheme == "latency") {
      for (const auto& ev : yinyang::encode_latency(f, a.latency)) {
        table.rows.push_back({sample_id, ev.neuron_id, ev.time_ms});
      }
    } else if (a.scheme == "lif") {
      for (const auto& ev : yinyang::encode_lif_current(f, a.lif)) {
        table.rows.push_back({sample_id, ev.neuron_id, ev.time_ms});
      }
    } else if (a.scheme == "rate") {
      const yinyang::RateEncoding enc = yinyang::encode_rate(f, rate_cfg, rng);
      if (const auto* rates = std::get_if<yinyang::RateVector>(&enc)) {
        for (std::size_t k = 0; k < rates->size(); ++k) {
          table.rows.push_back({sample_id, static_cast<int>(k), (*rates)[k]});
        }
      } else {
        for (const auto& ev : std::get<yinyang::SpikeTrain>(enc)) {
          table.rows.push_back({sample_id, ev.neuron_id, ev.time_ms});
        }
      }
    }
  }
  yinyang::io::write_file_atomic(a.common.out_path,
                                 yinyang::io::events_to_csv(table));
  std::printf("wrote %zu rows for %zu samples to %s\n", table.rows.size(),
              ds.size(), a.common.out_path.c_str());
}

// ------------------------------------------------------------------- train

struct TrainArgs {
  CommonArgs common = make_common(1);
  int hidden = 30;
  bool shallow = false;
  bool freeze_lower = false;
  int epochs = 300;
  int batch_size = 20;
  double lr = 0.01;
  std::uint64_t init_seed = 0;
  std::uint64_t shuffle_seed = 0;
  bool init_seed_set = false;
  bool shuffle_seed_set = false;
  std::string checkpoint_path;
};

void run_train(const TrainArgs& a) {
  require_out(a.common);
  if (a.shallow && a.freeze_lower) {
    throw ConfigError("--freeze-lower needs a hidden layer (drop --shallow)");
  }
  yinyang::Scenario scenario =
      a.shallow ? yinyang::Scenario::shallow()
                : (a.freeze_lower ? yinyang::Scenario::frozen_deep(a.hidden)
                                  : yinyang::Scenario::deep(a.hidden));

  yinyang::TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.batch_size = a.batch_size;
  cfg.lr = a.lr;
  cfg.init_seed = a.init_seed_set ? a.init_seed : a.common.seed;
  cfg.shuffle_seed =
      a.shuffle_seed_set ? a.shuffle_seed : a.common.seed + 1000000;

  const yinyang::Splits splits = yinyang::default_splits();
  const yinyang::TrainResult trained =
      yinyang::train(scenario.architecture(), cfg, splits.train,
                     splits.validation);
  const yinyang::Evaluation eval =
      yinyang::evaluate(trained.net, splits.test);

  yinyang::RunResult result;
  result.scenario = scenario;
  result.config = cfg;
  result.final_test_accuracy = eval.accuracy;
  result.curves = trained.curves;
  result.confusion = eval.confusion;
  result.test_predictions = eval.predictions;
  yinyang::io::write_json_file(a.common.out_path,
                               yinyang::io::run_result_to_json(result));
  if (!a.checkpoint_path.empty()) {
    yinyang::io::write_json_file(
        a.checkpoint_path, yinyang::io::checkpoint_to_json(trained.net));
  }
  std::printf("%s: final test accuracy %.4f\n", scenario.name().c_str(),
              eval.accuracy);
}

// -------------------------------------------------------------- experiment

struct ExperimentArgs {
  CommonArgs common = make_common(1);
  int runs = 20;
  int reps = 10;
  std::vector<int> sizes = yinyang::default_sweep_sizes();
  int workers = 0;
  int epochs = 300;
  int batch_size = 20;
  double lr = 0.01;
};

yinyang::RunOptions run_options(const ExperimentArgs& a) {
  yinyang::RunOptions opts;
  opts.train.epochs = a.epochs;
  opts.train.batch_size = a.batch_size;
  opts.train.lr = a.lr;
  opts.workers = a.workers;
  return opts;
}

void run_table1(const ExperimentArgs& a) {
  require_out(a.common);
  const auto cells = yinyang::table1(a.runs, a.common.seed, run_options(a));
  yinyang::io::write_json_file(a.common.out_path + ".json",
                               yinyang::io::table1_to_json(cells));
  const std::string csv = yinyang::io::table1_to_csv(cells);
  yinyang::io::write_file_atomic(a.common.out_path + ".csv", csv);
  std::fputs(csv.c_str(), stdout);
}

void run_sweep(const ExperimentArgs& a) {
  require_out(a.common);
  const auto sweep =
      yinyang::hidden_sweep(a.sizes, a.reps, a.common.seed, run_options(a));
  yinyang::io::write_json_file(a.common.out_path + ".json",
                               yinyang::io::sweep_to_json(sweep));
  const std::string csv = yinyang::io::sweep_to_csv(sweep);
  yinyang::io::write_file_atomic(a.common.out_path + ".csv", csv);
  std::fputs(csv.c_str(), stdout);
}

// -------------------------------------------------------------------- plot

struct PlotArgs {
  CommonArgs common;
  std::string kind;
  std::string in_path;
  std::string data_path;
};

void run_plot(const PlotArgs& a) {
  require_out(a.common);
  if (a.in_path.empty()) throw CLI::RequiredError("--in");
  std::string svg;
  if (a.kind == "scatter") {
    const auto ds =
        yinyang::io::dataset_from_csv(yinyang::io::read_file(a.in_path));
    svg = yinyang::svg::scatter(ds);
  } else if (a.kind == "curves") {
    const auto r = yinyang::io::run_result_from_json(
        yinyang::io::read_json_file(a.in_path));
    svg = yinyang::svg::curves(r.curves.train_error,
                               r.curves.validation_error);
  } else if (a.kind == "sweep") {
    const auto sweep =
        yinyang::io::sweep_from_json(yinyang::io::read_json_file(a.in_path));
    svg = yinyang::svg::sweep(sweep);
  } else if (a.kind == "test_overlay") {
    if (a.data_path.empty()) {
      throw ConfigError("test_overlay needs --data <test dataset csv>");
    }
    const auto r = yinyang::io::run_result_from_json(
        yinyang::io::read_json_file(a.in_path));
    const auto ds =
        yinyang::io::dataset_from_csv(yinyang::io::read_file(a.data_path));
    svg = yinyang::svg::test_overlay(ds, r.test_predictions);
  } else if (a.kind == "confusion") {
    const auto r = yinyang::io::run_result_from_json(
        yinyang::io::read_json_file(a.in_path));
    svg = yinyang::svg::confusion(r.confusion);
  } else {
    throw ConfigError("unknown plot kind '" + a.kind + "'");
  }
  yinyang::io::write_file_atomic(a.common.out_path, svg);
  std::printf("wrote %s\n", a.common.out_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yin-Yang dataset generator, encoders and benchmark networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  EncodeArgs enc;
  TrainArgs tr;
  ExperimentArgs ex;
  PlotArgs pl;

  std::map<const CLI::App*, ConfigBinder> binders;
  std::map<const CLI::App*, const CommonArgs*> commons;
  std::function<void()> action;

  // generate
  auto* c_gen = app.add_subcommand("generate", "Write a dataset CSV");
  {
    auto& b = binders[c_gen];
    add_config_option(c_gen, gen.common);
    b.bind(c_gen->add_option("--seed", gen.common.seed, "dataset seed"),
           gen.common.seed);
    b.bind(c_gen->add_option("--size", gen.size, "number of samples"),
           gen.size);
    b.bind(c_gen->add_option("--out", gen.common.out_path, "output CSV path"),
           gen.common.out_path);
    b.bind(c_gen->add_option("--r-big", gen.geometry.r_big,
                             "big circle radius"),
           gen.geometry.r_big);
    b.bind(c_gen->add_option("--r-small", gen.geometry.r_small, "dot radius"),
           gen.geometry.r_small);
    commons[c_gen] = &gen.common;
    c_gen->callback([&] { action = [&] { run_generate(gen); }; });
  }

  // encode
  auto* c_enc = app.add_subcommand("encode", "Encode a dataset CSV as spike "
                                             "events or rates");
  {
    auto& b = binders[c_enc];
    add_config_option(c_enc, enc.common);
    b.bind(c_enc->add_option("--in", enc.in_path, "input dataset CSV"),
           enc.in_path);
    b.bind(c_enc->add_option("--out", enc.common.out_path, "output CSV path"),
           enc.common.out_path);
    b.bind(c_enc->add_option("--scheme", enc.scheme,
                             "latency, lif or rate"),
           enc.scheme);
    b.bind(c_enc->add_option("--seed", enc.common.seed,
                             "RNG seed (poisson mode)"),
           enc.common.seed);
    b.bind(c_enc->add_option("--r-big", enc.r_big,
                             "big circle radius of the input data"),
           enc.r_big);
    b.bind(c_enc->add_option("--t-early", enc.latency.t_early_ms,
                             "earliest spike time (ms)"),
           enc.latency.t_early_ms);
    b.bind(c_enc->add_option("--t-late", enc.latency.t_late_ms,
                             "latest spike time (ms)"),
           enc.latency.t_late_ms);
    b.bind(c_enc->add_option("--tau-m", enc.lif.tau_m_ms,
                             "membrane time constant (ms)"),
           enc.lif.tau_m_ms);
    b.bind(c_enc->add_option("--theta-i", enc.lif.theta_i,
                             "rheobase current"),
           enc.lif.theta_i);
    b.bind(c_enc->add_option("--i-scale", enc.lif.i_scale,
                             "current per unit feature"),
           enc.lif.i_scale);
    b.bind(c_enc->add_option("--r-max", enc.rate.r_max_hz,
                             "peak firing rate (Hz)"),
           enc.rate.r_max_hz);
    b.bind(c_enc->add_option("--window", enc.rate.window_ms,
                             "encoding window (ms)"),
           enc.rate.window_ms);
    b.bind(c_enc->add_option("--population", enc.rate.population_size,
                             "neurons per channel"),
           enc.rate.population_size);
    b.bind(c_enc->add_option("--mode", enc.rate_mode,
                             "continuous, poisson or regular"),
           enc.rate_mode);
    commons[c_enc] = &enc.common;
    c_enc->callback([&] { action = [&] { run_encode(enc); }; });
  }

  // train
  auto* c_tr = app.add_subcommand("train", "Train one network and write a "
                                           "result JSON");
  {
    auto& b = binders[c_tr];
    add_config_option(c_tr, tr.common);
    b.bind(c_tr->add_option("--hidden", tr.hidden, "hidden layer size"),
           tr.hidden);
    b.bind(c_tr->add_flag("--shallow", tr.shallow, "no hidden layer"),
           tr.shallow);
    b.bind(c_tr->add_flag("--freeze-lower", tr.freeze_lower,
                          "freeze input-to-hidden weights"),
           tr.freeze_lower);
    b.bind(c_tr->add_option("--epochs", tr.epochs, "training epochs"),
           tr.epochs);
    b.bind(c_tr->add_option("--batch-size", tr.batch_size, "mini-batch size"),
           tr.batch_size);
    b.bind(c_tr->add_option("--lr", tr.lr, "Adam learning rate"), tr.lr);
    b.bind(c_tr->add_option("--seed", tr.common.seed,
                            "base seed (init = seed, shuffle = seed + 1e6)"),
           tr.common.seed);
    auto* o_init = c_tr->add_option("--init-seed", tr.init_seed,
                                    "weight init seed (overrides --seed)");
    b.bind(o_init, tr.init_seed);
    auto* o_shuf = c_tr->add_option("--shuffle-seed", tr.shuffle_seed,
                                    "shuffle seed (overrides --seed)");
    b.bind(o_shuf, tr.shuffle_seed);
    b.bind(c_tr->add_option("--out", tr.common.out_path, "result JSON path"),
           tr.common.out_path);
    b.bind(c_tr->add_option("--checkpoint", tr.checkpoint_path,
                            "also write the trained network JSON"),
           tr.checkpoint_path);
    commons[c_tr] = &tr.common;
    c_tr->callback([&, c_tr, o_init, o_shuf] {
      action = [&, c_tr, o_init, o_shuf] {
        tr.init_seed_set = binders[c_tr].given(o_init);
        tr.shuffle_seed_set = binders[c_tr].given(o_shuf);
        run_train(tr);
      };
    });
  }

  // experiment
  auto* c_ex = app.add_subcommand("experiment", "Multi-run benchmarks");
  c_ex->require_subcommand(1);
  auto* c_t1 = c_ex->add_subcommand("table1", "Deep/frozen/shallow comparison");
  auto* c_sw = c_ex->add_subcommand("sweep", "Hidden layer size sweep");
  for (auto* cmd : {c_t1, c_sw}) {
    auto& b = binders[cmd];
    add_config_option(cmd, ex.common);
    b.bind(cmd->add_option("--seed", ex.common.seed, "base seed"),
           ex.common.seed);
    b.bind(cmd->add_option("--out", ex.common.out_path,
                           "output prefix (.json and .csv)"),
           ex.common.out_path);
    b.bind(cmd->add_option("--workers", ex.workers,
                           "parallel training runs (0 = all cores)"),
           ex.workers);
    b.bind(cmd->add_option("--epochs", ex.epochs, "training epochs"),
           ex.epochs);
    b.bind(cmd->add_option("--batch-size", ex.batch_size, "mini-batch size"),
           ex.batch_size);
    b.bind(cmd->add_option("--lr", ex.lr, "Adam learning rate"), ex.lr);
    commons[cmd] = &ex.common;
  }
  binders[c_t1].bind(c_t1->add_option("--runs", ex.runs, "runs per cell"),
                     ex.runs);
  binders[c_sw].bind(c_sw->add_option("--reps", ex.reps, "runs per size"),
                     ex.reps);
  binders[c_sw].bind(
      c_sw->add_option("--sizes", ex.sizes, "hidden sizes")->delimiter(','),
      ex.sizes);
  c_t1->callback([&] { action = [&] { run_table1(ex); }; });
  c_sw->callback([&] { action = [&] { run_sweep(ex); }; });

  // plot
  auto* c_pl = app.add_subcommand("plot", "Render an SVG figure");
  {
    auto& b = binders[c_pl];
    add_config_option(c_pl, pl.common);
    b.bind(c_pl->add_option("--kind", pl.kind,
                            "scatter, curves, sweep, test_overlay, confusion"),
           pl.kind);
    b.bind(c_pl->add_option("--in", pl.in_path, "input dataset CSV or result "
                                                "JSON"),
           pl.in_path);
    b.bind(c_pl->add_option("--data", pl.data_path,
                            "dataset CSV (test_overlay only)"),
           pl.data_path);
    b.bind(c_pl->add_option("--out", pl.common.out_path, "output SVG path"),
           pl.common.out_path);
    commons[c_pl] = &pl.common;
    c_pl->callback([&] { action = [&] { run_plot(pl); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    // Locate the active leaf command and merge its config file, if any.
    const CLI::App* leaf = nullptr;
    for (const auto& [cmd, common] : commons) {
      if (cmd->parsed()) leaf = cmd;
    }
    if (leaf != nullptr) {
      const CommonArgs* common = commons.at(leaf);
      if (!common->config_path.empty()) {
        binders.at(leaf).apply(
            yinyang::io::read_json_file(common->config_path),
            leaf->get_name());
      }
    }
    if (action) action();
  } catch (const CLI::RequiredError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const yinyang::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const yinyang::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

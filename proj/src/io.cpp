#include "yinyang/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "yinyang/errors.hpp"

namespace yinyang::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_double(const std::string& s, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(std::string("bad ") + what + " value: '" + s + "'");
  }
  return value;
}

long parse_int(const std::string& s, const char* what) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(std::string("bad ") + what + " value: '" + s + "'");
  }
  return value;
}

// Lines of a text blob, tolerating a missing final newline.
std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) pos = text.size();
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

std::string percent_cell(const Summary& s) {
  char buf[64];
  if (s.std.has_value()) {
    std::snprintf(buf, sizeof buf, "%.2f \xC2\xB1 %.2f", 100.0 * s.mean,
                  100.0 * *s.std);
  } else {
    std::snprintf(buf, sizeof buf, "%.2f \xC2\xB1 n/a", 100.0 * s.mean);
  }
  return buf;
}

nlohmann::json summary_to_json(const Summary& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["mean"] = s.mean;
  if (s.std.has_value()) {
    j["std"] = *s.std;
  } else {
    j["std"] = nullptr;
  }
  j["min"] = s.min;
  j["max"] = s.max;
  return j;
}

Summary summary_from_json(const nlohmann::json& j) {
  Summary s;
  s.n = j.at("n").get<int>();
  s.mean = j.at("mean").get<double>();
  if (!j.at("std").is_null()) s.std = j.at("std").get<double>();
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  return s;
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  switch (s.kind) {
    case Scenario::Kind::kDeep: j["kind"] = "deep"; break;
    case Scenario::Kind::kShallow: j["kind"] = "shallow"; break;
    case Scenario::Kind::kFrozenDeep: j["kind"] = "frozen_deep"; break;
  }
  j["hidden"] = s.hidden;
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int hidden = j.at("hidden").get<int>();
  if (kind == "deep") return Scenario::deep(hidden);
  if (kind == "shallow") return Scenario::shallow();
  if (kind == "frozen_deep") return Scenario::frozen_deep(hidden);
  throw IoError("unknown scenario kind: " + kind);
}

nlohmann::json train_config_to_json(const TrainConfig& c) {
  return nlohmann::json{{"epochs", c.epochs},
                        {"batch_size", c.batch_size},
                        {"lr", c.lr},
                        {"init_seed", c.init_seed},
                        {"shuffle_seed", c.shuffle_seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.epochs = j.at("epochs").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.lr = j.at("lr").get<double>();
  c.init_seed = j.at("init_seed").get<std::uint64_t>();
  c.shuffle_seed = j.at("shuffle_seed").get<std::uint64_t>();
  return c;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dataset_to_csv(const Dataset& ds) {
  std::string out = "x,y,class\n";
  for (const Sample& s : ds.samples) {
    out += format_double(s.x);
    out += ',';
    out += format_double(s.y);
    out += ',';
    out += std::to_string(static_cast<int>(s.label));
    out += '\n';
  }
  return out;
}

Dataset dataset_from_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "x,y,class") {
    throw IoError("dataset CSV must start with header 'x,y,class'");
  }
  Dataset ds;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split(lines[i], ',');
    if (fields.size() != 3) {
      throw IoError("dataset CSV row " + std::to_string(i) +
                    ": expected 3 fields");
    }
    Sample s;
    s.x = parse_double(fields[0], "x");
    s.y = parse_double(fields[1], "y");
    const long label = parse_int(fields[2], "class");
    if (label < 0 || label > 2) {
      throw IoError("dataset CSV row " + std::to_string(i) +
                    ": class must be 0, 1 or 2");
    }
    s.label = static_cast<ClassLabel>(label);
    ds.samples.push_back(s);
  }
  return ds;
}

std::string events_to_csv(const EventTable& table) {
  std::string out = table.is_rate ? "sample_id,neuron_id,rate_hz\n"
                                  : "sample_id,neuron_id,time_ms\n";
  for (const EventRow& row : table.rows) {
    out += std::to_string(row.sample_id);
    out += ',';
    out += std::to_string(row.neuron_id);
    out += ',';
    out += format_double(row.value);
    out += '\n';
  }
  return out;
}

EventTable events_from_csv(const std::string& text) {
  const auto lines = lines_of(text);
  EventTable table;
  if (lines.empty()) throw IoError("event CSV is empty");
  if (lines[0] == "sample_id,neuron_id,rate_hz") {
    table.is_rate = true;
  } else if (lines[0] != "sample_id,neuron_id,time_ms") {
    throw IoError("event CSV has unknown header '" + lines[0] + "'");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split(lines[i], ',');
    if (fields.size() != 3) {
      throw IoError("event CSV row " + std::to_string(i) +
                    ": expected 3 fields");
    }
    EventRow row;
    row.sample_id = static_cast<int>(parse_int(fields[0], "sample_id"));
    row.neuron_id = static_cast<int>(parse_int(fields[1], "neuron_id"));
    row.value = parse_double(fields[2], "value");
    table.rows.push_back(row);
  }
  return table;
}

std::string spike_train_to_csv(const SpikeTrain& train) {
  std::string out = "neuron_id,time_ms\n";
  for (const SpikeEvent& ev : train) {
    out += std::to_string(ev.neuron_id);
    out += ',';
    out += format_double(ev.time_ms);
    out += '\n';
  }
  return out;
}

SpikeTrain spike_train_from_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "neuron_id,time_ms") {
    throw IoError("spike train CSV must start with header 'neuron_id,time_ms'");
  }
  SpikeTrain train;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split(lines[i], ',');
    if (fields.size() != 2) {
      throw IoError("spike train CSV row " + std::to_string(i) +
                    ": expected 2 fields");
    }
    train.push_back({static_cast<int>(parse_int(fields[0], "neuron_id")),
                     parse_double(fields[1], "time_ms")});
  }
  return train;
}

nlohmann::json run_result_to_json(const RunResult& r) {
  nlohmann::json j;
  j["scenario"] = scenario_to_json(r.scenario);
  j["config"] = train_config_to_json(r.config);
  j["final_test_accuracy"] = r.final_test_accuracy;
  j["train_error"] = r.curves.train_error;
  j["validation_error"] = r.curves.validation_error;
  j["confusion"] = r.confusion;
  j["test_predictions"] = r.test_predictions;
  return j;
}

RunResult run_result_from_json(const nlohmann::json& j) {
  RunResult r;
  r.scenario = scenario_from_json(j.at("scenario"));
  r.config = train_config_from_json(j.at("config"));
  r.final_test_accuracy = j.at("final_test_accuracy").get<double>();
  r.curves.train_error = j.at("train_error").get<std::vector<double>>();
  r.curves.validation_error =
      j.at("validation_error").get<std::vector<double>>();
  const auto& conf = j.at("confusion");
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) r.confusion[a][b] = conf.at(a).at(b).get<int>();
  }
  r.test_predictions = j.at("test_predictions").get<std::vector<int>>();
  return r;
}

nlohmann::json table1_to_json(const std::vector<CellResult>& cells) {
  nlohmann::json j;
  j["cells"] = nlohmann::json::array();
  for (const CellResult& cell : cells) {
    nlohmann::json cj;
    cj["scenario"] = scenario_to_json(cell.scenario);
    cj["accuracy"] = summary_to_json(cell.accuracy);
    cj["runs"] = nlohmann::json::array();
    for (const RunResult& r : cell.runs) {
      cj["runs"].push_back({{"init_seed", r.config.init_seed},
                            {"shuffle_seed", r.config.shuffle_seed},
                            {"final_test_accuracy", r.final_test_accuracy}});
    }
    j["cells"].push_back(std::move(cj));
  }
  return j;
}

std::string table1_to_csv(const std::vector<CellResult>& cells) {
  const Summary* deep[2] = {nullptr, nullptr};
  const Summary* frozen[2] = {nullptr, nullptr};
  const Summary* shallow = nullptr;
  for (const CellResult& cell : cells) {
    const int col = cell.scenario.hidden == 20 ? 0 : 1;
    switch (cell.scenario.kind) {
      case Scenario::Kind::kDeep: deep[col] = &cell.accuracy; break;
      case Scenario::Kind::kFrozenDeep: frozen[col] = &cell.accuracy; break;
      case Scenario::Kind::kShallow: shallow = &cell.accuracy; break;
    }
  }
  std::string out = "network,hidden_20,hidden_30\n";
  auto cell_or_empty = [](const Summary* s) {
    return s ? percent_cell(*s) : std::string();
  };
  out += "deep," + cell_or_empty(deep[0]) + "," + cell_or_empty(deep[1]) + "\n";
  out += "deep (frozen lower weights)," + cell_or_empty(frozen[0]) + "," +
         cell_or_empty(frozen[1]) + "\n";
  out += "shallow," + cell_or_empty(shallow) + ",\n";
  return out;
}

nlohmann::json sweep_to_json(const SweepResult& sweep) {
  nlohmann::json j;
  j["reps"] = sweep.reps;
  j["entries"] = nlohmann::json::array();
  for (const SweepEntry& e : sweep.entries) {
    j["entries"].push_back({{"hidden", e.hidden},
                            {"test_errors", e.test_errors},
                            {"error", summary_to_json(e.error)}});
  }
  return j;
}

SweepResult sweep_from_json(const nlohmann::json& j) {
  SweepResult sweep;
  sweep.reps = j.at("reps").get<int>();
  for (const auto& ej : j.at("entries")) {
    SweepEntry e;
    e.hidden = ej.at("hidden").get<int>();
    e.test_errors = ej.at("test_errors").get<std::vector<double>>();
    e.error = summary_from_json(ej.at("error"));
    sweep.entries.push_back(std::move(e));
  }
  return sweep;
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::string out = "hidden,mean_test_error,std_test_error,reps\n";
  char buf[96];
  for (const SweepEntry& e : sweep.entries) {
    if (e.error.std.has_value()) {
      std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%d\n", e.hidden,
                    e.error.mean, *e.error.std, e.error.n);
    } else {
      std::snprintf(buf, sizeof buf, "%d,%.6f,n/a,%d\n", e.hidden,
                    e.error.mean, e.error.n);
    }
    out += buf;
  }
  return out;
}

nlohmann::json checkpoint_to_json(const MlpState& net) {
  nlohmann::json j;
  j["layer_sizes"] = net.arch.layer_sizes;
  j["frozen"] = net.arch.frozen;
  j["layers"] = nlohmann::json::array();
  for (const auto& layer : net.layers) {
    j["layers"].push_back({{"weights", layer.w.data}, {"bias", layer.b}});
  }
  return j;
}

MlpState checkpoint_from_json(const nlohmann::json& j) {
  MlpArchitecture arch;
  arch.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
  arch.frozen = j.at("frozen").get<std::vector<bool>>();
  arch.validate();
  MlpState net;
  net.arch = arch;
  const auto& layers = j.at("layers");
  if (layers.size() != static_cast<std::size_t>(arch.num_weight_layers())) {
    throw IoError("checkpoint: layer count does not match layer_sizes");
  }
  for (int l = 0; l < arch.num_weight_layers(); ++l) {
    MlpState::Layer layer;
    layer.w = Matrix(arch.layer_sizes[l + 1], arch.layer_sizes[l]);
    const auto weights = layers.at(l).at("weights").get<std::vector<double>>();
    if (weights.size() != layer.w.data.size()) {
      throw IoError("checkpoint: weight count mismatch in layer " +
                    std::to_string(l));
    }
    layer.w.data = weights;
    layer.b = layers.at(l).at("bias").get<std::vector<double>>();
    if (layer.b.size() != static_cast<std::size_t>(arch.layer_sizes[l + 1])) {
      throw IoError("checkpoint: bias count mismatch in layer " +
                    std::to_string(l));
    }
    net.layers.push_back(std::move(layer));
  }
  return net;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path);
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw IoError("rename " + tmp.string() + " -> " + target.string() +
                  " failed: " + ec.message());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError("invalid JSON in " + path);
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace yinyang::io

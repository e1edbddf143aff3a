// File formats: dataset and spike-event CSV, result / sweep / checkpoint
// JSON, and atomic whole-file writes. Doubles in CSV are printed with 17
// significant digits so that write -> read -> write is byte-identical.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "yinyang/encoders.hpp"
#include "yinyang/experiments.hpp"
#include "yinyang/sampler.hpp"
#include "yinyang/tinynet.hpp"

namespace yinyang::io {

std::string format_double(double v);

// --- dataset CSV: header "x,y,class" ---
std::string dataset_to_csv(const Dataset& ds);
// CSV carries no metadata; seed and geometry of the result are defaulted.
Dataset dataset_from_csv(const std::string& text);

// --- event CSV: header "sample_id,neuron_id,time_ms" (or rate_hz) ---
struct EventRow {
  int sample_id = 0;
  int neuron_id = 0;
  double value = 0.0;  // time in ms, or rate in Hz for continuous encodings
};

struct EventTable {
  bool is_rate = false;
  std::vector<EventRow> rows;
};

std::string events_to_csv(const EventTable& table);
EventTable events_from_csv(const std::string& text);

// --- single-train CSV: header "neuron_id,time_ms" ---
std::string spike_train_to_csv(const SpikeTrain& train);
SpikeTrain spike_train_from_csv(const std::string& text);

// --- JSON documents ---
nlohmann::json run_result_to_json(const RunResult& r);
RunResult run_result_from_json(const nlohmann::json& j);

nlohmann::json table1_to_json(const std::vector<CellResult>& cells);
std::string table1_to_csv(const std::vector<CellResult>& cells);

nlohmann::json sweep_to_json(const SweepResult& sweep);
SweepResult sweep_from_json(const nlohmann::json& j);
std::string sweep_to_csv(const SweepResult& sweep);

// Network checkpoint: layer sizes, frozen flags, row-major weights, biases.
nlohmann::json checkpoint_to_json(const MlpState& net);
MlpState checkpoint_from_json(const nlohmann::json& j);

// --- files ---
std::string read_file(const std::string& path);
// Writes to a temp file in the same directory, then renames over the target.
void write_file_atomic(const std::string& path, const std::string& contents);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace yinyang::io

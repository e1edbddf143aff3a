// Input encodings that turn a 4-d feature vector into spiking or rate-based
// network input: time-to-first-spike latency coding, LIF constant-current
// spike times, and continuous / Poisson / regular rate coding with optional
// population redundancy.

#pragma once

#include <variant>
#include <vector>

#include "yinyang/rng.hpp"
#include "yinyang/sampler.hpp"

namespace yinyang {

struct SpikeEvent {
  int neuron_id = 0;
  double time_ms = 0.0;
};

// Time-sorted, ties broken by neuron id.
using SpikeTrain = std::vector<SpikeEvent>;

struct LatencyConfig {
  double t_early_ms = 0.0;
  double t_late_ms = 1.0;

  void validate() const;  // requires t_late > t_early >= 0
};

struct LifEncoderConfig {
  double tau_m_ms = 10.0;   // membrane time constant
  double theta_i = 1.0;     // rheobase current (a.u.)
  double i_scale = 2.0;     // current per unit feature value; default 2*theta_i
                            // so a feature of 1 spikes at tau_m * ln 2

  void validate() const;
};

enum class RateMode { kContinuous, kPoisson, kRegular };

struct RateConfig {
  double r_max_hz = 100.0;
  double window_ms = 1000.0;
  int population_size = 1;  // neurons per input channel
  RateMode mode = RateMode::kContinuous;

  void validate() const;
};

// Per-neuron firing rates in Hz, channel-major: neuron k*population+j codes
// feature k.
using RateVector = std::vector<double>;

using RateEncoding = std::variant<RateVector, SpikeTrain>;

// t_k = t_early + f_k * (t_late - t_early); exactly one event per channel.
SpikeTrain encode_latency(const FeatureVector& f, const LatencyConfig& c);

// Recommended t_late for latency coding, the sum of the membrane and
// synaptic time constants. Both must be positive.
double default_t_late(double tau_m_ms, double tau_syn_ms);

// Constant-current LIF first-spike times: channel k receives I = i_scale*f_k
// and fires at tau_m * ln(I / (I - theta_i)) if I > theta_i; subthreshold
// channels emit nothing.
SpikeTrain encode_lif_current(const FeatureVector& f, const LifEncoderConfig& c);

// Continuous mode returns a RateVector r_k = r_max*f_k replicated across the
// population; poisson and regular modes return a SpikeTrain over the window.
// Poisson inter-spike intervals are drawn from rng one neuron at a time in
// channel-major order, so a fixed seed reproduces the train exactly.
RateEncoding encode_rate(const FeatureVector& f, const RateConfig& c, Rng& rng);

}  // namespace yinyang

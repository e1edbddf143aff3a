#include "yinyang/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "yinyang/errors.hpp"

namespace yinyang {

namespace {

constexpr double kMaxExpectedPoissonEvents = 1e7;

void sort_events(SpikeTrain& train) {
  std::stable_sort(train.begin(), train.end(),
                   [](const SpikeEvent& a, const SpikeEvent& b) {
                     if (a.time_ms != b.time_ms) return a.time_ms < b.time_ms;
                     return a.neuron_id < b.neuron_id;
                   });
}

}  // namespace

void LatencyConfig::validate() const {
  if (!(t_early_ms >= 0.0) || !(t_late_ms > t_early_ms)) {
    throw ConfigError("latency encoding requires t_late > t_early >= 0");
  }
}

void LifEncoderConfig::validate() const {
  if (!(tau_m_ms > 0.0) || !(theta_i > 0.0) || !(i_scale > 0.0)) {
    throw ConfigError("LIF encoder requires tau_m, theta_i, i_scale > 0");
  }
}

void RateConfig::validate() const {
  if (!(r_max_hz > 0.0) || !(window_ms > 0.0) || population_size < 1) {
    throw ConfigError(
        "rate encoding requires r_max > 0, window > 0, population >= 1");
  }
}

SpikeTrain encode_latency(const FeatureVector& f, const LatencyConfig& c) {
  c.validate();
  SpikeTrain train;
  train.reserve(4);
  for (int k = 0; k < 4; ++k) {
    train.push_back({k, c.t_early_ms + f[k] * (c.t_late_ms - c.t_early_ms)});
  }
  sort_events(train);
  return train;
}

double default_t_late(double tau_m_ms, double tau_syn_ms) {
  if (!(tau_m_ms > 0.0) || !(tau_syn_ms > 0.0)) {
    throw ConfigError("default_t_late requires positive time constants");
  }
  return tau_m_ms + tau_syn_ms;
}

SpikeTrain encode_lif_current(const FeatureVector& f,
                              const LifEncoderConfig& c) {
  c.validate();
  SpikeTrain train;
  for (int k = 0; k < 4; ++k) {
    const double current = c.i_scale * f[k];
    if (current > c.theta_i) {
      train.push_back({k, c.tau_m_ms * std::log(current / (current - c.theta_i))});
    }
  }
  sort_events(train);
  return train;
}

RateEncoding encode_rate(const FeatureVector& f, const RateConfig& c,
                         Rng& rng) {
  c.validate();
  const int population = c.population_size;

  if (c.mode == RateMode::kContinuous) {
    RateVector rates(4 * static_cast<std::size_t>(population));
    for (int k = 0; k < 4; ++k) {
      for (int j = 0; j < population; ++j) {
        rates[static_cast<std::size_t>(k) * population + j] = c.r_max_hz * f[k];
      }
    }
    return rates;
  }

  const double window_s = c.window_ms / 1000.0;
  if (c.mode == RateMode::kPoisson) {
    double expected_events = 0.0;
    for (int k = 0; k < 4; ++k) {
      expected_events += population * c.r_max_hz * f[k] * window_s;
    }
    if (expected_events > kMaxExpectedPoissonEvents) {
      throw ConfigError("poisson encoding would expect " +
                        std::to_string(expected_events) +
                        " events, above the 1e7 guard");
    }
  }

  SpikeTrain train;
  for (int k = 0; k < 4; ++k) {
    const double rate_hz = c.r_max_hz * f[k];
    if (!(rate_hz > 0.0)) continue;
    for (int j = 0; j < population; ++j) {
      const int neuron = k * population + j;
      if (c.mode == RateMode::kPoisson) {
        const double rate_per_ms = rate_hz / 1000.0;
        double t = 0.0;
        while (true) {
          t += -std::log(1.0 - rng.uniform()) / rate_per_ms;
          if (t > c.window_ms) break;
          train.push_back({neuron, t});
        }
      } else {  // regular: spikes at (j+1)/rate, phase fixed to 0
        const double period_ms = 1000.0 / rate_hz;
        const auto count = static_cast<std::size_t>(
            std::floor(rate_hz * window_s + 1e-9));
        for (std::size_t i = 0; i < count; ++i) {
          train.push_back({neuron, static_cast<double>(i + 1) * period_ms});
        }
      }
    }
  }
  sort_events(train);
  return train;
}

}  // namespace yinyang

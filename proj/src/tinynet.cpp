#include "yinyang/tinynet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "yinyang/errors.hpp"
#include "yinyang/rng.hpp"

namespace yinyang {

namespace {

void affine(const MlpState::Layer& layer, std::span<const double> in,
            std::vector<double>& out) {
  const int rows = layer.w.rows;
  const int cols = layer.w.cols;
  out.resize(rows);
  for (int r = 0; r < rows; ++r) {
    const double* wrow = &layer.w.data[static_cast<std::size_t>(r) * cols];
    double acc = layer.b[r];
    for (int c = 0; c < cols; ++c) acc += wrow[c] * in[c];
    out[r] = acc;
  }
}

int argmax_lowest(std::span<const double> v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

void MlpArchitecture::validate() const {
  if (layer_sizes.size() < 2) {
    throw ConfigError("architecture needs at least input and output layers");
  }
  for (int s : layer_sizes) {
    if (s < 1) throw ConfigError("layer sizes must be >= 1");
  }
  if (frozen.size() != static_cast<std::size_t>(num_weight_layers())) {
    throw ConfigError("frozen flags must match the number of weight layers");
  }
}

void MlpArchitecture::validate_for_dataset() const {
  validate();
  if (layer_sizes.front() != 4 || layer_sizes.back() != 3) {
    throw ConfigError("dataset networks need 4 inputs and 3 outputs, got " +
                      std::to_string(layer_sizes.front()) + " and " +
                      std::to_string(layer_sizes.back()));
  }
}

MlpArchitecture MlpArchitecture::deep(int hidden, bool freeze_lower) {
  return {{4, hidden, 3}, {freeze_lower, false}};
}

MlpArchitecture MlpArchitecture::shallow() { return {{4, 3}, {false}}; }

MlpState init(const MlpArchitecture& arch, std::uint64_t seed) {
  arch.validate();
  MlpState net;
  net.arch = arch;
  Rng rng(seed);
  for (int l = 0; l < arch.num_weight_layers(); ++l) {
    const int fan_in = arch.layer_sizes[l];
    const int fan_out = arch.layer_sizes[l + 1];
    MlpState::Layer layer;
    layer.w = Matrix(fan_out, fan_in);
    layer.b.assign(fan_out, 0.0);
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& w : layer.w.data) w = rng.uniform(-bound, bound);
    net.layers.push_back(std::move(layer));
  }
  return net;
}

std::vector<double> forward(const MlpState& net,
                            std::span<const double> input) {
  ForwardCache cache;
  return forward(net, input, cache);
}

std::vector<double> forward(const MlpState& net, std::span<const double> input,
                            ForwardCache& cache) {
  const int num_layers = static_cast<int>(net.layers.size());
  if (static_cast<int>(input.size()) != net.arch.layer_sizes.front()) {
    throw ConfigError("forward: input size mismatch");
  }
  for (double v : input) {
    if (!std::isfinite(v)) throw ConfigError("forward: non-finite input");
  }

  cache.act.resize(num_layers + 1);
  cache.pre.resize(num_layers);
  cache.act[0].assign(input.begin(), input.end());
  for (int l = 0; l < num_layers; ++l) {
    affine(net.layers[l], cache.act[l], cache.pre[l]);
    if (l + 1 < num_layers) {
      cache.act[l + 1].resize(cache.pre[l].size());
      for (std::size_t i = 0; i < cache.pre[l].size(); ++i) {
        cache.act[l + 1][i] = cache.pre[l][i] > 0.0 ? cache.pre[l][i] : 0.0;
      }
    } else {
      cache.act[l + 1] = cache.pre[l];
    }
  }
  return cache.act[num_layers];
}

double loss_and_grad(const MlpState& net,
                     std::span<const FeatureVector> inputs,
                     std::span<const ClassLabel> labels, Gradients& grads) {
  net.arch.validate_for_dataset();
  if (inputs.empty() || inputs.size() != labels.size()) {
    throw ConfigError("loss_and_grad: batch empty or size mismatch");
  }
  const int num_layers = static_cast<int>(net.layers.size());

  grads.layers.resize(num_layers);
  for (int l = 0; l < num_layers; ++l) {
    auto& gl = grads.layers[l];
    if (gl.w.rows != net.layers[l].w.rows || gl.w.cols != net.layers[l].w.cols) {
      gl.w = Matrix(net.layers[l].w.rows, net.layers[l].w.cols);
      gl.b.assign(net.layers[l].b.size(), 0.0);
    } else {
      std::fill(gl.w.data.begin(), gl.w.data.end(), 0.0);
      std::fill(gl.b.begin(), gl.b.end(), 0.0);
    }
  }

  ForwardCache cache;
  std::vector<double> delta, delta_prev;
  double loss_sum = 0.0;

  for (std::size_t n = 0; n < inputs.size(); ++n) {
    const std::vector<double>& logits = forward(net, inputs[n], cache);

    // stable softmax cross-entropy
    const double zmax = *std::max_element(logits.begin(), logits.end());
    double sum_exp = 0.0;
    for (double z : logits) sum_exp += std::exp(z - zmax);
    const int y = static_cast<int>(labels[n]);
    loss_sum += -(logits[y] - zmax - std::log(sum_exp));

    delta.resize(logits.size());
    for (std::size_t j = 0; j < logits.size(); ++j) {
      delta[j] = std::exp(logits[j] - zmax) / sum_exp;
    }
    delta[y] -= 1.0;

    for (int l = num_layers - 1; l >= 0; --l) {
      auto& gl = grads.layers[l];
      const std::vector<double>& below = cache.act[l];
      const int rows = net.layers[l].w.rows;
      const int cols = net.layers[l].w.cols;
      for (int r = 0; r < rows; ++r) {
        double* grow = &gl.w.data[static_cast<std::size_t>(r) * cols];
        const double d = delta[r];
        for (int c = 0; c < cols; ++c) grow[c] += d * below[c];
        gl.b[r] += d;
      }
      if (l > 0) {
        delta_prev.assign(cols, 0.0);
        for (int r = 0; r < rows; ++r) {
          const double* wrow =
              &net.layers[l].w.data[static_cast<std::size_t>(r) * cols];
          const double d = delta[r];
          for (int c = 0; c < cols; ++c) delta_prev[c] += wrow[c] * d;
        }
        for (int c = 0; c < cols; ++c) {
          if (!(cache.pre[l - 1][c] > 0.0)) delta_prev[c] = 0.0;
        }
        std::swap(delta, delta_prev);
      }
    }
  }

  const double inv_batch = 1.0 / static_cast<double>(inputs.size());
  for (int l = 0; l < num_layers; ++l) {
    auto& gl = grads.layers[l];
    if (net.arch.frozen[l]) {
      std::fill(gl.w.data.begin(), gl.w.data.end(), 0.0);
      std::fill(gl.b.begin(), gl.b.end(), 0.0);
      continue;
    }
    for (double& v : gl.w.data) v *= inv_batch;
    for (double& v : gl.b) v *= inv_batch;
  }
  return loss_sum * inv_batch;
}

AdamState AdamState::for_net(const MlpState& net, AdamHyper hyper) {
  AdamState opt;
  opt.hyper = hyper;
  for (const auto& layer : net.layers) {
    Slot slot;
    slot.m_w = Matrix(layer.w.rows, layer.w.cols);
    slot.v_w = Matrix(layer.w.rows, layer.w.cols);
    slot.m_b.assign(layer.b.size(), 0.0);
    slot.v_b.assign(layer.b.size(), 0.0);
    opt.slots.push_back(std::move(slot));
  }
  return opt;
}

namespace {

void adam_update(std::span<const double> g, std::span<double> m,
                 std::span<double> v, std::span<double> theta,
                 const AdamHyper& h, double bias1, double bias2) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    m[i] = h.beta1 * m[i] + (1.0 - h.beta1) * g[i];
    v[i] = h.beta2 * v[i] + (1.0 - h.beta2) * g[i] * g[i];
    const double m_hat = m[i] / bias1;
    const double v_hat = v[i] / bias2;
    theta[i] -= h.lr * m_hat / (std::sqrt(v_hat) + h.eps);
  }
}

}  // namespace

void adam_step(MlpState& net, const Gradients& grads, AdamState& opt) {
  if (grads.layers.size() != net.layers.size() ||
      opt.slots.size() != net.layers.size()) {
    throw ConfigError("adam_step: mismatched layer counts");
  }
  opt.step_count += 1;
  const double bias1 = 1.0 - std::pow(opt.hyper.beta1, opt.step_count);
  const double bias2 = 1.0 - std::pow(opt.hyper.beta2, opt.step_count);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    if (net.arch.frozen[l]) continue;
    adam_update(grads.layers[l].w.data, opt.slots[l].m_w.data,
                opt.slots[l].v_w.data, net.layers[l].w.data, opt.hyper, bias1,
                bias2);
    adam_update(grads.layers[l].b, opt.slots[l].m_b, opt.slots[l].v_b,
                net.layers[l].b, opt.hyper, bias1, bias2);
  }
}

namespace {

double classification_error(const MlpState& net,
                            const std::vector<FeatureVector>& features,
                            const std::vector<ClassLabel>& labels) {
  ForwardCache cache;
  std::size_t correct = 0;
  for (std::size_t n = 0; n < features.size(); ++n) {
    const auto logits = forward(net, features[n], cache);
    if (argmax_lowest(logits) == static_cast<int>(labels[n])) ++correct;
  }
  return 1.0 - static_cast<double>(correct) / features.size();
}

void featurize(const Dataset& ds, std::vector<FeatureVector>& feats,
               std::vector<ClassLabel>& labels) {
  feats.reserve(ds.size());
  labels.reserve(ds.size());
  for (const Sample& s : ds.samples) {
    feats.push_back(features(s, ds.geometry));
    labels.push_back(s.label);
  }
}

}  // namespace

TrainResult train(const MlpArchitecture& arch, const TrainConfig& cfg,
                  const Dataset& train_ds, const Dataset& val_ds) {
  arch.validate_for_dataset();
  if (cfg.epochs < 0) throw ConfigError("train: epochs must be >= 0");
  if (cfg.batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
  if (train_ds.samples.empty()) throw ConfigError("train: empty training set");

  TrainResult result;
  result.net = init(arch, cfg.init_seed);
  if (cfg.epochs == 0) return result;

  AdamState opt = AdamState::for_net(result.net, AdamHyper{cfg.lr});
  Rng shuffle_rng(cfg.shuffle_seed);

  std::vector<FeatureVector> x_train, x_val;
  std::vector<ClassLabel> y_train, y_val;
  featurize(train_ds, x_train, y_train);
  featurize(val_ds, x_val, y_val);

  const std::size_t n = x_train.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<FeatureVector> batch_x(cfg.batch_size);
  std::vector<ClassLabel> batch_y(cfg.batch_size);
  Gradients grads;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Fisher-Yates with the dedicated shuffle stream
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::size_t j = shuffle_rng.below(i + 1);
      std::swap(order[i], order[j]);
    }
    for (std::size_t start = 0; start < n;
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t count =
          std::min<std::size_t>(cfg.batch_size, n - start);
      batch_x.resize(count);
      batch_y.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        batch_x[i] = x_train[order[start + i]];
        batch_y[i] = y_train[order[start + i]];
      }
      const double loss = loss_and_grad(result.net, batch_x, batch_y, grads);
      if (!std::isfinite(loss)) {
        throw DivergenceError("train: non-finite loss at epoch " +
                              std::to_string(epoch + 1));
      }
      adam_step(result.net, grads, opt);
    }
    result.curves.train_error.push_back(
        classification_error(result.net, x_train, y_train));
    result.curves.validation_error.push_back(
        classification_error(result.net, x_val, y_val));
  }
  return result;
}

Evaluation evaluate(const MlpState& net, const Dataset& ds) {
  net.arch.validate_for_dataset();
  Evaluation eval;
  eval.predictions.reserve(ds.size());
  ForwardCache cache;
  std::size_t correct = 0;
  for (const Sample& s : ds.samples) {
    const auto logits = forward(net, features(s, ds.geometry), cache);
    const int pred = argmax_lowest(logits);
    eval.predictions.push_back(pred);
    eval.confusion[static_cast<int>(s.label)][pred] += 1;
    if (pred == static_cast<int>(s.label)) ++correct;
  }
  eval.accuracy =
      ds.size() == 0 ? 0.0 : static_cast<double>(correct) / ds.size();
  return eval;
}

}  // namespace yinyang

// Minimal dense feed-forward network: ReLU hidden layers, linear readout,
// softmax cross-entropy loss with exact analytic backpropagation, Adam
// updates and optional per-layer weight freezing. All arithmetic is double
// precision and fully deterministic given the seeds.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "yinyang/sampler.hpp"

namespace yinyang {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // row-major

  Matrix() = default;
  Matrix(int r, int c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

struct MlpArchitecture {
  std::vector<int> layer_sizes;  // e.g. {4, 30, 3}; {4, 3} is the shallow net
  std::vector<bool> frozen;      // one flag per weight layer

  int num_weight_layers() const {
    return static_cast<int>(layer_sizes.size()) - 1;
  }

  // All sizes >= 1, at least one weight layer, frozen flags match.
  void validate() const;
  // Additionally requires 4 inputs and 3 outputs (the dataset contract).
  void validate_for_dataset() const;

  static MlpArchitecture deep(int hidden, bool freeze_lower = false);
  static MlpArchitecture shallow();
};

struct MlpState {
  struct Layer {
    Matrix w;               // fan_out x fan_in
    std::vector<double> b;  // fan_out
  };
  MlpArchitecture arch;
  std::vector<Layer> layers;
};

// Weights uniform in +-sqrt(6/(fan_in+fan_out)), drawn layer by layer in
// row-major order from one generator; biases zero.
MlpState init(const MlpArchitecture& arch, std::uint64_t seed);

struct ForwardCache {
  // act[0] is the input, act[l+1] the output of weight layer l after its
  // activation; pre[l] holds the affine pre-activations needed for backprop.
  std::vector<std::vector<double>> act;
  std::vector<std::vector<double>> pre;
};

// Affine + ReLU for hidden layers, affine only at the output. Throws
// ConfigError on non-finite input.
std::vector<double> forward(const MlpState& net, std::span<const double> input);
std::vector<double> forward(const MlpState& net, std::span<const double> input,
                            ForwardCache& cache);

struct Gradients {
  struct Layer {
    Matrix w;
    std::vector<double> b;
  };
  std::vector<Layer> layers;
};

// Mean softmax cross-entropy over the batch; fills `grads` with the exact
// analytic gradients (frozen layers are computed, then zeroed). Returns the
// loss. Requires a 4-input / 3-output network and a non-empty batch.
double loss_and_grad(const MlpState& net, std::span<const FeatureVector> inputs,
                     std::span<const ClassLabel> labels, Gradients& grads);

struct AdamHyper {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  struct Slot {
    Matrix m_w, v_w;
    std::vector<double> m_b, v_b;
  };
  AdamHyper hyper;
  std::int64_t step_count = 0;
  std::vector<Slot> slots;

  static AdamState for_net(const MlpState& net, AdamHyper hyper = {});
};

// One bias-corrected Adam update in place; frozen layers are left untouched
// (parameters and moments alike).
void adam_step(MlpState& net, const Gradients& grads, AdamState& opt);

struct TrainConfig {
  int epochs = 300;
  int batch_size = 20;
  double lr = 0.01;
  std::uint64_t shuffle_seed = 0;
  std::uint64_t init_seed = 0;
};

struct TrainCurves {
  std::vector<double> train_error;       // 1 - accuracy, one entry per epoch
  std::vector<double> validation_error;
};

struct TrainResult {
  MlpState net;
  TrainCurves curves;
};

// Full training loop: per epoch, shuffle with the seeded RNG, sweep
// mini-batches (a final short batch is used, not dropped), update with Adam,
// then record train/validation classification error. A non-finite loss
// raises DivergenceError. epochs == 0 returns the freshly initialized net
// and empty curves.
TrainResult train(const MlpArchitecture& arch, const TrainConfig& cfg,
                  const Dataset& train_ds, const Dataset& val_ds);

struct Evaluation {
  double accuracy = 0.0;
  std::array<std::array<int, 3>, 3> confusion{};  // [true class][predicted]
  std::vector<int> predictions;
};

// Argmax readout, ties broken toward the lowest class index.
Evaluation evaluate(const MlpState& net, const Dataset& ds);

}  // namespace yinyang

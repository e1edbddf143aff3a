// Balanced, seeded dataset generation by rejection sampling, plus the 4-d
// symmetrized feature mapping (x, y, 1-x, 1-y).

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "yinyang/geometry.hpp"
#include "yinyang/rng.hpp"

namespace yinyang {

struct Sample {
  double x = 0.0;
  double y = 0.0;
  ClassLabel label = ClassLabel::kYin;

  Point2 point() const { return {x, y}; }
};

struct Dataset {
  std::vector<Sample> samples;
  std::uint64_t seed = 0;
  GeometryParams geometry;

  std::size_t size() const { return samples.size(); }
  std::array<std::size_t, 3> class_counts() const;
};

// Network input: (x, y, 1-x, 1-y) after normalizing coordinates to [0,1].
// The last two components are computed by subtraction from 1, so
// f[0]+f[2] == 1 and f[1]+f[3] == 1 hold exactly.
using FeatureVector = std::array<double, 4>;

FeatureVector features(const Sample& s, const GeometryParams& g = {});

// Seeds and sizes of the three default splits (train, validation, test).
struct SplitSpec {
  std::uint64_t train_seed = 42;
  std::size_t train_size = 5000;
  std::uint64_t validation_seed = 41;
  std::size_t validation_size = 1000;
  std::uint64_t test_seed = 40;
  std::size_t test_size = 1000;
};

struct Splits {
  Dataset train;
  Dataset validation;
  Dataset test;
};

// Draws uniform proposals on the bounding square (x first, then y) until one
// lands inside the big circle with class == goal. Throws ConfigError after
// 10^6 rejected proposals. attempts_out, when given, receives the number of
// proposals drawn.
Sample sample_one(Rng& rng, ClassLabel goal, const GeometryParams& g,
                  std::size_t* attempts_out = nullptr);

// size samples with goal classes assigned round-robin (Yin, Yang, Dot, ...),
// all drawn from one generator seeded with `seed`. Per-class counts differ
// by at most one.
Dataset generate(std::uint64_t seed, std::size_t size,
                 const GeometryParams& g = {});

Splits make_splits(const SplitSpec& spec, const GeometryParams& g = {});
Splits default_splits();

}  // namespace yinyang

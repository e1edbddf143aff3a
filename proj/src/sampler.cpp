#include "yinyang/sampler.hpp"

#include <string>

#include "yinyang/errors.hpp"

namespace yinyang {

namespace {

constexpr std::size_t kMaxRejections = 1000000;

constexpr ClassLabel kRoundRobin[3] = {ClassLabel::kYin, ClassLabel::kYang,
                                       ClassLabel::kDot};

}  // namespace

std::array<std::size_t, 3> Dataset::class_counts() const {
  std::array<std::size_t, 3> counts{0, 0, 0};
  for (const Sample& s : samples) counts[static_cast<int>(s.label)]++;
  return counts;
}

FeatureVector features(const Sample& s, const GeometryParams& g) {
  const double scale = 2.0 * g.r_big;
  const double fx = s.x / scale;
  const double fy = s.y / scale;
  return {fx, fy, 1.0 - fx, 1.0 - fy};
}

Sample sample_one(Rng& rng, ClassLabel goal, const GeometryParams& g,
                  std::size_t* attempts_out) {
  g.validate();
  const double side = 2.0 * g.r_big;
  for (std::size_t attempt = 1; attempt <= kMaxRejections; ++attempt) {
    const double x = rng.uniform() * side;
    const double y = rng.uniform() * side;
    const Point2 p{x, y};
    if (!inside_big_circle(p, g)) continue;
    if (which_class(p, g) != goal) continue;
    if (attempts_out) *attempts_out = attempt;
    return Sample{x, y, goal};
  }
  throw ConfigError("sample_one: no accepted point for class " +
                    std::string(class_name(goal)) + " after " +
                    std::to_string(kMaxRejections) + " proposals");
}

Dataset generate(std::uint64_t seed, std::size_t size,
                 const GeometryParams& g) {
  g.validate();
  Dataset ds;
  ds.seed = seed;
  ds.geometry = g;
  ds.samples.reserve(size);
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    ds.samples.push_back(sample_one(rng, kRoundRobin[i % 3], g));
  }
  return ds;
}

Splits make_splits(const SplitSpec& spec, const GeometryParams& g) {
  return Splits{generate(spec.train_seed, spec.train_size, g),
                generate(spec.validation_seed, spec.validation_size, g),
                generate(spec.test_seed, spec.test_size, g)};
}

Splits default_splits() { return make_splits(SplitSpec{}); }

}  // namespace yinyang

// Static SVG figures: dataset scatter, training curves, hidden-size sweep,
// test-set overlay with misclassification marks, and a confusion matrix.
// Output is plain deterministic text (fixed-precision coordinates), so
// regenerating a figure from the same inputs is byte-identical.

#pragma once

#include <array>
#include <string>

#include "yinyang/experiments.hpp"
#include "yinyang/sampler.hpp"

namespace yinyang::svg {

// One fixed color per class, indexed by ClassLabel.
inline constexpr std::array<const char*, 3> kClassColors = {
    "#1f77b4",  // Yin
    "#ff7f0e",  // Yang
    "#2ca02c",  // Dot
};

// Every sample becomes one <circle class="pt ...">, colored by its label.
std::string scatter(const Dataset& ds);

// Two polylines (train and validation error per epoch), one vertex per epoch.
std::string curves(const std::vector<double>& train_error,
                   const std::vector<double>& validation_error);

// Mean final test error vs hidden layer size with +-std error bars.
std::string sweep(const SweepResult& sweep);

// Test samples colored by *predicted* class; every misclassified sample is
// marked with an X glyph (<path class="miss">).
std::string test_overlay(const Dataset& test, const std::vector<int>& predictions);

// Annotated 3x3 grid of counts, true class by row, predicted by column.
std::string confusion(const std::array<std::array<int, 3>, 3>& counts);

}  // namespace yinyang::svg

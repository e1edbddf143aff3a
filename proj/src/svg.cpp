#include "yinyang/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "yinyang/errors.hpp"

namespace yinyang::svg {

namespace {

constexpr const char* kTrainColor = "#1f77b4";
constexpr const char* kValColor = "#d62728";

void appendf(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

std::string svg_open(double width, double height) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  appendf(out,
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
          "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
          width, height, width, height);
  return out;
}

// Linear map from data to pixel coordinates.
struct Axis {
  double lo = 0.0, hi = 1.0;    // data range
  double px0 = 0.0, px1 = 1.0;  // pixel range

  double map(double v) const {
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

void append_frame(std::string& out, double x0, double y0, double x1,
                  double y1) {
  appendf(out,
          "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
          "fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n",
          x0, y0, x1 - x0, y1 - y0);
}

void append_text(std::string& out, double x, double y, const char* anchor,
                 const std::string& text) {
  appendf(out,
          "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" "
          "font-size=\"12\" text-anchor=\"%s\">%s</text>\n",
          x, y, anchor, text.c_str());
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void append_scatter_points(std::string& out, const Dataset& ds,
                           const Axis& ax, const Axis& ay,
                           const std::vector<int>* color_labels) {
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const Sample& s = ds.samples[i];
    const int color =
        color_labels ? (*color_labels)[i] : static_cast<int>(s.label);
    appendf(out,
            "<circle class=\"pt c%d\" cx=\"%.2f\" cy=\"%.2f\" r=\"2.4\" "
            "fill=\"%s\"/>\n",
            color, ax.map(s.x), ay.map(s.y), kClassColors[color]);
  }
}

}  // namespace

std::string scatter(const Dataset& ds) {
  const double side = 640.0, margin = 20.0;
  const Axis ax{0.0, 2.0 * ds.geometry.r_big, margin, side - margin};
  const Axis ay{0.0, 2.0 * ds.geometry.r_big, side - margin, margin};
  std::string out = svg_open(side, side);
  append_scatter_points(out, ds, ax, ay, nullptr);
  out += "</svg>\n";
  return out;
}

std::string curves(const std::vector<double>& train_error,
                   const std::vector<double>& validation_error) {
  if (train_error.size() != validation_error.size()) {
    throw ConfigError("curves: train and validation lengths differ");
  }
  const double width = 640.0, height = 420.0;
  const double left = 56.0, right = 16.0, top = 16.0, bottom = 48.0;
  const std::size_t epochs = train_error.size();

  double err_max = 1e-9;
  for (double e : train_error) err_max = std::max(err_max, e);
  for (double e : validation_error) err_max = std::max(err_max, e);

  const Axis ax{1.0, static_cast<double>(std::max<std::size_t>(epochs, 2)),
                left, width - right};
  const Axis ay{0.0, 1.05 * err_max, height - bottom, top};

  std::string out = svg_open(width, height);
  append_frame(out, left, top, width - right, height - bottom);

  for (int t = 0; t <= 4; ++t) {
    const double v = 1.05 * err_max * t / 4.0;
    append_text(out, left - 6.0, ay.map(v) + 4.0, "end", fmt_tick(v));
  }
  append_text(out, left - 6.0, top - 4.0, "end", "error");
  const std::size_t x_tick = std::max<std::size_t>(1, epochs / 4);
  for (std::size_t e = x_tick; e <= epochs; e += x_tick) {
    append_text(out, ax.map(static_cast<double>(e)), height - bottom + 16.0,
                "middle", std::to_string(e));
  }
  append_text(out, (left + width - right) / 2.0, height - 12.0, "middle",
              "epoch");

  const auto polyline = [&](const std::vector<double>& err, const char* tag,
                            const char* color) {
    appendf(out, "<polyline class=\"curve %s\" fill=\"none\" stroke=\"%s\" "
                 "stroke-width=\"1.5\" points=\"",
            tag, color);
    for (std::size_t e = 0; e < err.size(); ++e) {
      appendf(out, "%s%.2f,%.2f", e == 0 ? "" : " ",
              ax.map(static_cast<double>(e + 1)), ay.map(err[e]));
    }
    out += "\"/>\n";
  };
  polyline(train_error, "train", kTrainColor);
  polyline(validation_error, "val", kValColor);

  append_text(out, width - right - 120.0, top + 16.0, "start", "train");
  appendf(out, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
               "stroke=\"%s\" stroke-width=\"1.5\"/>\n",
          width - right - 150.0, top + 12.0, width - right - 126.0, top + 12.0,
          kTrainColor);
  append_text(out, width - right - 120.0, top + 32.0, "start", "validation");
  appendf(out, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
               "stroke=\"%s\" stroke-width=\"1.5\"/>\n",
          width - right - 150.0, top + 28.0, width - right - 126.0, top + 28.0,
          kValColor);

  out += "</svg>\n";
  return out;
}

std::string sweep(const SweepResult& sweep) {
  if (sweep.entries.empty()) throw ConfigError("sweep: no entries");
  const double width = 640.0, height = 420.0;
  const double left = 56.0, right = 16.0, top = 16.0, bottom = 48.0;

  double err_max = 1e-9;
  double log_lo = std::log10(sweep.entries.front().hidden);
  double log_hi = log_lo;
  for (const SweepEntry& e : sweep.entries) {
    const double spread = e.error.std.value_or(0.0);
    err_max = std::max(err_max, e.error.mean + spread);
    log_lo = std::min(log_lo, std::log10(e.hidden));
    log_hi = std::max(log_hi, std::log10(e.hidden));
  }
  if (log_hi == log_lo) log_hi = log_lo + 1.0;

  const Axis ax{log_lo, log_hi, left, width - right};
  const Axis ay{0.0, 1.1 * err_max, height - bottom, top};

  std::string out = svg_open(width, height);
  append_frame(out, left, top, width - right, height - bottom);
  for (int t = 0; t <= 4; ++t) {
    const double v = 1.1 * err_max * t / 4.0;
    append_text(out, left - 6.0, ay.map(v) + 4.0, "end", fmt_tick(v));
  }
  append_text(out, left - 6.0, top - 4.0, "end", "test error");
  append_text(out, (left + width - right) / 2.0, height - 12.0, "middle",
              "hidden layer size");

  appendf(out, "<polyline class=\"trend\" fill=\"none\" stroke=\"#888888\" "
               "stroke-width=\"1\" points=\"");
  for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
    const SweepEntry& e = sweep.entries[i];
    appendf(out, "%s%.2f,%.2f", i == 0 ? "" : " ",
            ax.map(std::log10(e.hidden)), ay.map(e.error.mean));
  }
  out += "\"/>\n";

  for (const SweepEntry& e : sweep.entries) {
    const double x = ax.map(std::log10(e.hidden));
    const double spread = e.error.std.value_or(0.0);
    appendf(out,
            "<line class=\"errbar\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
            "y2=\"%.2f\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n",
            x, ay.map(std::max(0.0, e.error.mean - spread)), x,
            ay.map(e.error.mean + spread));
    appendf(out,
            "<circle class=\"mean\" cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" "
            "fill=\"#1f77b4\"/>\n",
            x, ay.map(e.error.mean));
    append_text(out, x, height - bottom + 16.0, "middle",
                std::to_string(e.hidden));
  }

  out += "</svg>\n";
  return out;
}

std::string test_overlay(const Dataset& test,
                         const std::vector<int>& predictions) {
  if (predictions.size() != test.samples.size()) {
    throw ConfigError("test_overlay: prediction count does not match dataset");
  }
  for (int p : predictions) {
    if (p < 0 || p > 2) throw ConfigError("test_overlay: bad prediction value");
  }
  const double side = 640.0, margin = 20.0;
  const Axis ax{0.0, 2.0 * test.geometry.r_big, margin, side - margin};
  const Axis ay{0.0, 2.0 * test.geometry.r_big, side - margin, margin};

  std::string out = svg_open(side, side);
  append_scatter_points(out, test, ax, ay, &predictions);
  const double arm = 4.0;
  for (std::size_t i = 0; i < test.samples.size(); ++i) {
    if (predictions[i] == static_cast<int>(test.samples[i].label)) continue;
    const double x = ax.map(test.samples[i].x);
    const double y = ay.map(test.samples[i].y);
    appendf(out,
            "<path class=\"miss\" d=\"M %.2f %.2f L %.2f %.2f M %.2f %.2f L "
            "%.2f %.2f\" stroke=\"#000000\" stroke-width=\"1.4\"/>\n",
            x - arm, y - arm, x + arm, y + arm, x - arm, y + arm, x + arm,
            y - arm);
  }
  out += "</svg>\n";
  return out;
}

std::string confusion(const std::array<std::array<int, 3>, 3>& counts) {
  const double cell = 110.0, left = 90.0, top = 60.0;
  const double width = left + 3 * cell + 30.0;
  const double height = top + 3 * cell + 40.0;

  int max_count = 1;
  for (const auto& row : counts) {
    for (int c : row) max_count = std::max(max_count, c);
  }

  std::string out = svg_open(width, height);
  append_text(out, left + 1.5 * cell, 20.0, "middle", "predicted");
  for (int b = 0; b < 3; ++b) {
    append_text(out, left + (b + 0.5) * cell, top - 8.0, "middle",
                class_name(static_cast<ClassLabel>(b)));
  }
  for (int a = 0; a < 3; ++a) {
    append_text(out, left - 10.0, top + (a + 0.5) * cell + 4.0, "end",
                class_name(static_cast<ClassLabel>(a)));
    for (int b = 0; b < 3; ++b) {
      const double x = left + b * cell;
      const double y = top + a * cell;
      const double opacity =
          static_cast<double>(counts[a][b]) / static_cast<double>(max_count);
      appendf(out,
              "<rect class=\"cell\" x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
              "height=\"%.2f\" fill=\"#1f77b4\" fill-opacity=\"%.3f\" "
              "stroke=\"#444444\"/>\n",
              x, y, cell, cell, opacity);
      append_text(out, x + cell / 2.0, y + cell / 2.0 + 4.0, "middle",
                  std::to_string(counts[a][b]));
    }
  }
  append_text(out, 20.0, top + 1.5 * cell, "start", "true");
  out += "</svg>\n";
  return out;
}

}  // namespace yinyang::svg

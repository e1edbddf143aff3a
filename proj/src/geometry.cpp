#include "yinyang/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "yinyang/errors.hpp"

namespace yinyang {

namespace {

double dist(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

void GeometryParams::validate() const {
  if (!(r_big > 0.0) || !(r_small > 0.0) || !(r_small < 0.5 * r_big)) {
    throw ConfigError("geometry requires 0 < r_small < r_big/2, got r_big=" +
                      std::to_string(r_big) +
                      " r_small=" + std::to_string(r_small));
  }
}

double dist_to_left_dot(Point2 p, const GeometryParams& g) {
  return dist(p, g.left_dot_center());
}

double dist_to_right_dot(Point2 p, const GeometryParams& g) {
  return dist(p, g.right_dot_center());
}

bool inside_big_circle(Point2 p, const GeometryParams& g) {
  return dist(p, g.center()) <= g.r_big;
}

ClassLabel which_class(Point2 p, const GeometryParams& g) {
  if (!inside_big_circle(p, g)) {
    throw std::domain_error("which_class: point outside the big circle");
  }
  const double d_left = dist_to_left_dot(p, g);
  const double d_right = dist_to_right_dot(p, g);
  if (d_left <= g.r_small || d_right <= g.r_small) return ClassLabel::kDot;
  const double mid = 0.5 * g.r_big;
  if (d_right <= mid || (d_left > mid && p.y > g.r_big)) return ClassLabel::kYin;
  return ClassLabel::kYang;
}

}  // namespace yinyang

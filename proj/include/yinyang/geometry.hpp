// Region geometry of the yin-yang symbol.
//
// The symbol is built from circles only: a big circle of radius r_big
// centered at (r_big, r_big), two mid-circles of radius r_big/2 centered at
// (0.5*r_big, r_big) and (1.5*r_big, r_big) forming the S-shaped boundary,
// and two dots of radius r_small at those same centers. With the default
// r_big = 0.5 every coordinate lies in [0, 1].

#pragma once

#include <string>

namespace yinyang {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class ClassLabel : int { kYin = 0, kYang = 1, kDot = 2 };

inline const char* class_name(ClassLabel c) {
  switch (c) {
    case ClassLabel::kYin: return "Yin";
    case ClassLabel::kYang: return "Yang";
    case ClassLabel::kDot: return "Dot";
  }
  return "?";
}

struct GeometryParams {
  double r_big = 0.5;
  double r_small = 0.1;

  Point2 center() const { return {r_big, r_big}; }
  Point2 left_dot_center() const { return {0.5 * r_big, r_big}; }
  Point2 right_dot_center() const { return {1.5 * r_big, r_big}; }

  // Throws ConfigError unless 0 < r_small < r_big/2.
  void validate() const;
};

double dist_to_left_dot(Point2 p, const GeometryParams& g);
double dist_to_right_dot(Point2 p, const GeometryParams& g);

// Boundary counts as inside.
bool inside_big_circle(Point2 p, const GeometryParams& g);

// Class of a point inside the big circle. Decision order is fixed: the two
// dots first, then the Yin swirl (right mid-circle plus upper half outside
// the left mid-circle), Yang otherwise. Throws std::domain_error for points
// outside the big circle.
ClassLabel which_class(Point2 p, const GeometryParams& g);

}  // namespace yinyang

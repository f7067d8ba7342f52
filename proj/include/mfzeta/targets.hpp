#pragma once

// Closed target sets C in R^M under the max-norm, with the enlargement
// B(C, r) = {x : dist(x, C) <= r} and the erosion I(C, eps).

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfzeta/measures.hpp"

namespace mfzeta {

/// Absolute fuzz on the closed inequality dist(x, C) <= r so that values on
/// the boundary survive decimal rounding (1.6 - 1.5 > 0.1 in binary).
inline constexpr double kBoundaryTolerance = 1e-12;

class Target {
 public:
  enum class Kind { empty, point, box, ball };

  static Target empty(int dimension);
  static Target point(std::vector<double> x);
  static Target box(std::vector<Interval> sides);
  static Target ball(std::vector<double> center, double radius);

  /// Parses "point:1.0", "box:0.5,1.5", "ball:0.7,0.1"; coordinates of
  /// multi-dimensional targets are separated by ';', e.g.
  /// "point:1.0;1.0", "box:0.5,1.5;0.9,1.1", "ball:0.7;1.0,0.1".
  static Target parse(std::string_view spec);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int dimension() const { return dimension_; }
  [[nodiscard]] bool is_empty() const { return kind_ == Kind::empty; }

  /// Max-norm distance from x to the set; +inf for the empty target.
  [[nodiscard]] double distance(std::span<const double> x) const;

  /// x in B(C, slack): dist(x, C) <= slack + kBoundaryTolerance.
  [[nodiscard]] bool contains(std::span<const double> x, double slack = 0.0) const;

  /// B(C, r). Points become boxes.
  [[nodiscard]] Target expand(double r) const;

  /// I(C, eps): points at distance >= eps from the complement. Empty when the
  /// erosion removes everything (always, for a point and eps > 0).
  [[nodiscard]] Target shrink(double eps) const;

  /// Smallest box containing the set; throws for the empty target.
  [[nodiscard]] std::vector<Interval> bounding_box() const;

  /// True when the interior is non-empty.
  [[nodiscard]] bool has_interior() const;

  /// Canonical spec string accepted by parse().
  [[nodiscard]] std::string to_string() const;

 private:
  Target(Kind kind, int dimension) : kind_(kind), dimension_(dimension) {}

  Kind kind_;
  int dimension_;
  std::vector<Interval> sides_;  // point and box
  std::vector<double> center_;   // ball
  double radius_ = 0.0;          // ball
};

}  // namespace mfzeta

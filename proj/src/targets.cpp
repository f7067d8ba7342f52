#include "mfzeta/targets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mfzeta {

namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError("target: cannot parse number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_finite(std::span<const double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) throw ConfigError("target coordinates must be finite");
}

}  // namespace

Target Target::empty(int dimension) {
  if (dimension < 1) throw ConfigError("target dimension must be >= 1");
  return Target(Kind::empty, dimension);
}

Target Target::point(std::vector<double> x) {
  if (x.empty()) throw ConfigError("point target needs at least one coordinate");
  require_finite(x);
  Target t(Kind::point, static_cast<int>(x.size()));
  for (double v : x) t.sides_.push_back({v, v});
  return t;
}

Target Target::box(std::vector<Interval> sides) {
  if (sides.empty()) throw ConfigError("box target needs at least one side");
  for (const auto& s : sides) {
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi)) throw ConfigError("box sides must be finite");
    if (s.lo > s.hi) throw ConfigError("box side has lo > hi");
  }
  Target t(Kind::box, static_cast<int>(sides.size()));
  t.sides_ = std::move(sides);
  return t;
}

Target Target::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw ConfigError("ball target needs a center");
  require_finite(center);
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw ConfigError("ball radius must be finite and >= 0");
  Target t(Kind::ball, static_cast<int>(center.size()));
  t.center_ = std::move(center);
  t.radius_ = radius;
  return t;
}

Target Target::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ConfigError("target spec needs 'kind:values', got '" + std::string(spec) + "'");
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (kind == "point") {
    std::vector<double> x;
    for (auto c : split(body, ';')) x.push_back(parse_number(c));
    return point(std::move(x));
  }
  if (kind == "box") {
    std::vector<Interval> sides;
    for (auto c : split(body, ';')) {
      auto lohi = split(c, ',');
      if (lohi.size() != 2) throw ConfigError("box side needs 'lo,hi', got '" + std::string(c) + "'");
      sides.push_back({parse_number(lohi[0]), parse_number(lohi[1])});
    }
    return box(std::move(sides));
  }
  if (kind == "ball") {
    const auto comma = body.rfind(',');
    if (comma == std::string_view::npos) throw ConfigError("ball target needs 'center,radius'");
    std::vector<double> center;
    for (auto c : split(body.substr(0, comma), ';')) center.push_back(parse_number(c));
    return ball(std::move(center), parse_number(body.substr(comma + 1)));
  }
  throw ConfigError("unknown target kind '" + std::string(kind) + "'");
}

double Target::distance(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) throw ConfigError("point has the wrong dimension for this target");
  double d = 0.0;
  switch (kind_) {
    case Kind::empty:
      return std::numeric_limits<double>::infinity();
    case Kind::point:
    case Kind::box:
      for (std::size_t m = 0; m < x.size(); ++m) {
        const auto& s = sides_[m];
        d = std::max(d, std::max(s.lo - x[m], x[m] - s.hi));
      }
      return d;
    case Kind::ball:
      for (std::size_t m = 0; m < x.size(); ++m) d = std::max(d, std::abs(x[m] - center_[m]));
      return std::max(0.0, d - radius_);
  }
  return d;
}

bool Target::contains(std::span<const double> x, double slack) const {
  if (!(slack >= 0.0)) throw ConfigError("slack must be >= 0");
  if (kind_ == Kind::empty) return false;
  return distance(x) <= slack + kBoundaryTolerance;
}

Target Target::expand(double r) const {
  if (!(r >= 0.0)) throw ConfigError("expansion radius must be >= 0");
  switch (kind_) {
    case Kind::empty:
      return *this;
    case Kind::ball:
      return ball(center_, radius_ + r);
    case Kind::point:
    case Kind::box: {
      if (r == 0.0) return *this;
      std::vector<Interval> sides = sides_;
      for (auto& s : sides) {
        s.lo -= r;
        s.hi += r;
      }
      return box(std::move(sides));
    }
  }
  return *this;
}

Target Target::shrink(double eps) const {
  if (!(eps >= 0.0)) throw ConfigError("erosion radius must be >= 0");
  switch (kind_) {
    case Kind::empty:
      return *this;
    case Kind::point:
      return eps == 0.0 ? *this : empty(dimension_);
    case Kind::ball:
      if (radius_ < eps) return empty(dimension_);
      return ball(center_, radius_ - eps);
    case Kind::box: {
      std::vector<Interval> sides = sides_;
      for (auto& s : sides) {
        s.lo += eps;
        s.hi -= eps;
        if (s.lo > s.hi) return empty(dimension_);
      }
      return box(std::move(sides));
    }
  }
  return *this;
}

std::vector<Interval> Target::bounding_box() const {
  switch (kind_) {
    case Kind::empty:
      throw ConfigError("the empty target has no bounding box");
    case Kind::ball: {
      std::vector<Interval> out;
      for (double c : center_) out.push_back({c - radius_, c + radius_});
      return out;
    }
    case Kind::point:
    case Kind::box:
      return sides_;
  }
  return sides_;
}

bool Target::has_interior() const {
  switch (kind_) {
    case Kind::empty:
    case Kind::point:
      return false;
    case Kind::ball:
      return radius_ > 0.0;
    case Kind::box:
      return std::all_of(sides_.begin(), sides_.end(), [](const Interval& s) { return s.hi > s.lo; });
  }
  return false;
}

std::string Target::to_string() const {
  std::string out;
  switch (kind_) {
    case Kind::empty:
      return "empty:" + std::to_string(dimension_);
    case Kind::point:
      out = "point:";
      for (std::size_t m = 0; m < sides_.size(); ++m) out += (m ? ";" : "") + fmt(sides_[m].lo);
      return out;
    case Kind::box:
      out = "box:";
      for (std::size_t m = 0; m < sides_.size(); ++m) out += (m ? ";" : "") + fmt(sides_[m].lo) + "," + fmt(sides_[m].hi);
      return out;
    case Kind::ball:
      out = "ball:";
      for (std::size_t m = 0; m < center_.size(); ++m) out += (m ? ";" : "") + fmt(center_[m]);
      return out + "," + fmt(radius_);
  }
  return out;
}

}  // namespace mfzeta

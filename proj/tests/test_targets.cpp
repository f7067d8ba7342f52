#include <doctest.h>

#include <random>

#include "mfzeta/targets.hpp"

using namespace mfzeta;

namespace {

std::vector<double> v(std::initializer_list<double> x) { return std::vector<double>(x); }

}  // namespace

TEST_CASE("contains examples") {
  CHECK(Target::point({1.0}).contains(v({1.0}), 0.0));
  const auto box = Target::box({{0.5, 1.5}});
  CHECK(box.contains(v({1.6}), 0.1));
  CHECK_FALSE(box.contains(v({1.6}), 0.05));
  CHECK(Target::ball({0.0, 0.0}, 1.0).contains(v({1.0, 1.0}), 0.0));
  CHECK_FALSE(Target::ball({0.0, 0.0}, 1.0).contains(v({1.0, 1.01}), 0.0));
  CHECK_FALSE(Target::empty(1).contains(v({0.0}), 100.0));
}

TEST_CASE("shrink examples") {
  const auto box = Target::box({{0.0, 1.0}});
  const auto s = box.shrink(0.25);
  REQUIRE(s.kind() == Target::Kind::box);
  CHECK(s.bounding_box()[0].lo == doctest::Approx(0.25));
  CHECK(s.bounding_box()[0].hi == doctest::Approx(0.75));
  CHECK(box.shrink(0.6).is_empty());
  const auto ball = Target::ball({0.3, 0.4}, 1.0).shrink(0.3);
  REQUIRE(ball.kind() == Target::Kind::ball);
  CHECK(ball.to_string() == Target::ball({0.3, 0.4}, 0.7).to_string());
  CHECK(Target::point({1.0}).shrink(0.1).is_empty());
  CHECK(Target::point({1.0}).shrink(0.0).kind() == Target::Kind::point);
}

TEST_CASE("parse and to_string round trip") {
  for (const char* spec : {"point:1.0", "box:0.5,1.5", "ball:0.7,0.1", "point:1.0;1.0", "box:0.5,1.5;0.9,1.1",
                           "ball:0.7;1.0,0.1"}) {
    const auto t = Target::parse(spec);
    CHECK(Target::parse(t.to_string()).to_string() == t.to_string());
  }
  CHECK(Target::parse("point:1.0;1.0").dimension() == 2);
  CHECK(Target::parse("ball:0.7;1.0,0.1").dimension() == 2);
  CHECK_THROWS_AS(Target::parse("box:1.5,0.5"), ConfigError);
  CHECK_THROWS_AS(Target::parse("cube:1"), ConfigError);
  CHECK_THROWS_AS(Target::parse("point:"), ConfigError);
  CHECK_THROWS_AS(Target::parse("ball:0.5,-1"), ConfigError);
}

TEST_CASE("expand turns points into boxes") {
  const auto e = Target::point({1.0, 2.0}).expand(0.5);
  CHECK(e.kind() == Target::Kind::box);
  CHECK(e.contains(v({1.5, 1.5}), 0.0));
  CHECK_FALSE(e.contains(v({1.6, 1.5}), 0.0));
}

TEST_CASE("property: contains is monotone in the slack") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0), s(0.0, 1.0);
  const std::vector<Target> targets{Target::point({0.1, 0.2}), Target::box({{-0.5, 0.5}, {0.0, 1.0}}),
                                    Target::ball({0.3, -0.3}, 0.4)};
  for (const auto& t : targets)
    for (int k = 0; k < 2000; ++k) {
      const std::vector<double> x{u(rng), u(rng)};
      const double r1 = s(rng), r2 = r1 + s(rng);
      if (t.contains(x, r1)) CHECK(t.contains(x, r2));
      CHECK(t.contains(x, t.distance(x)));
    }
}

TEST_CASE("property: B(I(C, eps), r) lies in C for r < eps") {
  const auto box = Target::box({{0.0, 1.0}, {-1.0, 2.0}});
  for (double eps : {0.1, 0.3, 0.45}) {
    const auto inner = box.shrink(eps);
    for (double r : {0.0, eps / 2, eps * 0.99})
      for (double x = -0.5; x <= 1.5; x += 0.01)
        for (double y = -1.5; y <= 2.5; y += 0.05) {
          const std::vector<double> p{x, y};
          if (inner.contains(p, r)) CHECK(box.contains(p, 0.0));
        }
  }
}

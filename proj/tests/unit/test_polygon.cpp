#include <doctest.h>

#include <algorithm>

#include "srw/polygon.hpp"

using namespace srw;

namespace {

Polygon2D square(double lo, double hi) { return {{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}}; }

}  // namespace

TEST_CASE("signed area follows orientation") {
  CHECK(signed_area(square(0, 2)) == 4.0);
  Polygon2D cw = square(0, 2);
  std::reverse(cw.begin(), cw.end());
  CHECK(signed_area(cw) == -4.0);
}

TEST_CASE("point in polygon") {
  const auto sq = square(0, 10);
  CHECK(point_in_polygon(sq, {5, 5}));
  CHECK_FALSE(point_in_polygon(sq, {15, 5}));
  const Polygon2D concave{{0, 0}, {10, 0}, {10, 10}, {5, 3}, {0, 10}};
  CHECK(point_in_polygon(concave, {2, 2}));
  CHECK_FALSE(point_in_polygon(concave, {5, 8}));
  CHECK(on_boundary(sq, {10, 4}, 1e-9));
  CHECK_FALSE(on_boundary(sq, {9, 4}, 1e-9));
}

TEST_CASE("region boundary rule: outer closed, holes open") {
  Region2D r{square(0, 10), {square(4, 6)}};
  CHECK(r.contains({1, 1}, 1e-9));
  CHECK_FALSE(r.contains({5, 5}, 1e-9));
  CHECK(r.contains({0, 5}, 1e-9));
  CHECK_FALSE(r.contains({4, 5}, 1e-9));
  CHECK_FALSE(r.contains({11, 5}, 1e-9));
}

TEST_CASE("crossing parameters") {
  Region2D r{square(0, 10), {}};
  const auto p = r.crossing_params({-5, 5}, {15, 5});
  REQUIRE(p.size() == 4);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(0.25));
  CHECK(p[2] == doctest::Approx(0.75));
  CHECK(p[3] == 1.0);
}

TEST_CASE("covered pieces") {
  Region2D r{square(0, 10), {square(4, 6)}};
  const auto through = r.covered({-10, 5}, {20, 5}, 1e-9);
  REQUIRE(through.size() == 2);
  CHECK(through[0].first == doctest::Approx(1.0 / 3.0));
  CHECK(through[0].second == doctest::Approx(14.0 / 30.0));
  CHECK(through[1].first == doctest::Approx(16.0 / 30.0));
  CHECK(through[1].second == doctest::Approx(2.0 / 3.0));
  CHECK(r.covered({20, 20}, {30, 30}, 1e-9).empty());
  const auto inside = r.covered({1, 1}, {2, 1}, 1e-9);
  REQUIRE(inside.size() == 1);
  CHECK(inside[0].first == 0.0);
  CHECK(inside[0].second == 1.0);
}

TEST_CASE("segment along an outer edge is covered") {
  Region2D r{square(0, 10), {}};
  const auto c = r.covered({-5, 0}, {5, 0}, 1e-9);
  REQUIRE(c.size() == 1);
  CHECK(c[0].first == doctest::Approx(0.5));
  CHECK(c[0].second == 1.0);
}

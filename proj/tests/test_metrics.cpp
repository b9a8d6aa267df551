#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "navsim/metrics.hpp"

using namespace navsim;
using Eigen::Vector2d;

TEST_CASE("point to segment distance covers all projection cases") {
  const Vector2d a{0, 0}, b{4, 0};
  CHECK(metrics::point_segment_distance({2, 3}, a, b) == doctest::Approx(3.0));
  CHECK(metrics::point_segment_distance({-3, 4}, a, b) == doctest::Approx(5.0));
  CHECK(metrics::point_segment_distance({7, 4}, a, b) == doctest::Approx(5.0));
  CHECK(metrics::point_segment_distance({2, 0}, a, b) == doctest::Approx(0.0));
  // Degenerate segment collapses to point distance.
  CHECK(metrics::point_segment_distance({3, 4}, a, a) == doctest::Approx(5.0));
}

TEST_CASE("polyline distance takes the minimum over segments") {
  const std::vector<Vector2d> poly{{0, 0}, {4, 0}, {4, 4}};
  const std::vector<Vector2d> pts{{2, 1}, {5, 2}, {-1, 0}, {4, 5}};
  const auto d = metrics::polyline_distances(pts, poly);
  REQUIRE(d.size() == 4);
  CHECK(d[0] == doctest::Approx(1.0));
  CHECK(d[1] == doctest::Approx(1.0));
  CHECK(d[2] == doctest::Approx(1.0));
  CHECK(d[3] == doctest::Approx(1.0));
}

TEST_CASE("inner corner picks the closer of the adjacent segments") {
  const std::vector<Vector2d> poly{{0, 0}, {2, 0}, {2, 2}};
  const auto d = metrics::polyline_distances({{1.5, 0.25}}, poly);
  CHECK(d[0] == doctest::Approx(0.25));
}

TEST_CASE("parallel and serial polyline kernels agree exactly") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<Vector2d> poly;
  for (int i = 0; i < 200; ++i) poly.push_back({u(gen), u(gen)});
  std::vector<Vector2d> pts;
  for (int i = 0; i < 1000; ++i) pts.push_back({u(gen), u(gen)});

  const auto par = metrics::polyline_distances(pts, poly);
  const auto ser = metrics::polyline_distances_serial(pts, poly);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("polyline needs at least two vertices") {
  CHECK_THROWS_AS(metrics::polyline_distances({{0, 0}}, {{1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(metrics::polyline_distances_serial({{0, 0}}, {}),
                  std::invalid_argument);
}

TEST_CASE("error statistics") {
  const auto s = metrics::stats_of({1.0, 2.0, 6.0});
  CHECK(s.avg == doctest::Approx(3.0));
  CHECK(s.max == doctest::Approx(6.0));
  CHECK(s.count == 3);

  const auto empty = metrics::stats_of({});
  CHECK(empty.count == 0);
  CHECK(empty.avg == 0.0);
  CHECK(empty.max == 0.0);
}

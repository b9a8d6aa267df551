#include <doctest.h>

#include <cmath>

#include "navsim/angles.hpp"
#include "navsim/geodesy.hpp"

using namespace navsim;

TEST_CASE("frame construction validates the origin") {
  CHECK_NOTHROW(geo::make_ltp({47.0, 8.0, 400.0}));
  CHECK_THROWS_AS(geo::make_ltp({91.0, 8.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(geo::make_ltp({89.5, 8.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(geo::make_ltp({47.0, std::nan(""), 0.0}),
                  std::invalid_argument);
}

TEST_CASE("one degree of latitude spans the textbook arc length") {
  const auto frame = geo::make_ltp({47.0, 8.0, 0.0});
  const Eigen::Vector2d xy = geo::to_ltp(frame, {48.0, 8.0, 0.0});
  CHECK(xy.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(xy.y() == doctest::Approx(geo::kEarthRadius * kPi / 180.0).epsilon(1e-12));
}

TEST_CASE("longitude metres shrink with the cosine of the origin latitude") {
  const auto frame = geo::make_ltp({60.0, 10.0, 0.0});
  const Eigen::Vector2d xy = geo::to_ltp(frame, {60.0, 11.0, 0.0});
  const double expected =
      geo::kEarthRadius * (kPi / 180.0) * std::cos(deg2rad(60.0));
  CHECK(xy.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(xy.x() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("projection round trips are exact to nanodegrees") {
  const auto frame = geo::make_ltp({47.3667, 8.55, 408.0});
  const geo::GeodeticCoord samples[] = {
      {47.3667, 8.55, 408.0}, {47.38, 8.56, 0.0}, {47.35, 8.51, 0.0},
      {47.40, 8.60, 0.0}};
  for (const auto& g : samples) {
    const Eigen::Vector2d xy = geo::to_ltp(frame, g);
    const geo::GeodeticCoord back = geo::from_ltp(frame, xy);
    CHECK(back.lat_deg == doctest::Approx(g.lat_deg).epsilon(1e-12));
    CHECK(back.lon_deg == doctest::Approx(g.lon_deg).epsilon(1e-12));
    const Eigen::Vector2d again = geo::to_ltp(frame, back);
    CHECK((again - xy).norm() < 1e-6);
  }
}

TEST_CASE("the projection is affine: midpoints map to midpoints") {
  const auto frame = geo::make_ltp({47.0, 8.0, 0.0});
  const geo::GeodeticCoord a{47.01, 8.02, 0.0};
  const geo::GeodeticCoord b{47.03, 7.98, 0.0};
  const geo::GeodeticCoord mid{(a.lat_deg + b.lat_deg) / 2,
                               (a.lon_deg + b.lon_deg) / 2, 0.0};
  const Eigen::Vector2d pa = geo::to_ltp(frame, a);
  const Eigen::Vector2d pb = geo::to_ltp(frame, b);
  const Eigen::Vector2d pm = geo::to_ltp(frame, mid);
  CHECK((pm - 0.5 * (pa + pb)).norm() < 1e-9);
}

TEST_CASE("heading decodes from the body-frame field") {
  CHECK(geo::heading_from_field({0.0, 1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(geo::heading_from_field({1.0, 0.0, 0.0}) == doctest::Approx(kPi / 2));
  CHECK(geo::heading_from_field({0.0, -1.0, 0.3}) == doctest::Approx(kPi));
  CHECK(geo::heading_from_field({-1.0, 0.0, 0.0}) == doctest::Approx(-kPi / 2));
  for (double theta = -3.0; theta <= 3.0; theta += 0.37) {
    const Eigen::Vector3d f{std::sin(theta), std::cos(theta), 0.1};
    CHECK(geo::heading_from_field(f) == doctest::Approx(theta).epsilon(1e-12));
  }
}

TEST_CASE("a vertical-only field has no usable heading") {
  CHECK_THROWS_AS(geo::heading_from_field({0.0, 0.0, 50.0}),
                  std::runtime_error);
  CHECK_THROWS_AS(geo::heading_from_field({0.0, 0.0, 0.0}),
                  std::runtime_error);
}

TEST_CASE("angle wrapping lands in (-pi, pi]") {
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(2 * kPi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-0.1) == doctest::Approx(-0.1));
  CHECK(angle_diff(3.1, -3.1) == doctest::Approx(3.1 - (-3.1) - 2 * kPi));
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "uavnet/los.hpp"

using namespace uavnet;

namespace {

constexpr double kPi = std::numbers::pi;

// Frozen with a 30-digit mpmath quadrature of the thinned intensity.
constexpr double kUrbanX = 0.94932558522506192974;
constexpr double kUrbanYIntersection = 0.92220237366061403431;
constexpr double kUrbanYStreet = 0.80430165556351863810;
constexpr double kUrbanCorner = 0.40622006836608473210;
constexpr double kUrbanLosIntersection = 0.35563360839720223294;
constexpr double kUrbanLosStreet = 0.31016695269661508240;

const LinkGeometry kUrbanLink(150.0, 1.0, 100.0, 10.0);

}  // namespace

TEST_CASE("azimuth is folded into the first quadrant") {
  CHECK(LinkGeometry(10.0, kPi - 0.3, 50.0, 10.0).phi() == doctest::Approx(0.3));
  CHECK(LinkGeometry(10.0, kPi + 0.3, 50.0, 10.0).phi() == doctest::Approx(0.3));
  CHECK(LinkGeometry(10.0, -0.3, 50.0, 10.0).phi() == doctest::Approx(0.3));
  CHECK(LinkGeometry(10.0, 0.0, 50.0, 10.0).sin_phi() == 0.0);
  CHECK(LinkGeometry(10.0, kPi / 2.0, 50.0, 10.0).cos_phi() == 0.0);
  CHECK_THROWS_AS(LinkGeometry(-1.0, 0.1, 50.0, 10.0), GeometryError);
  CHECK_THROWS_AS(LinkGeometry(1.0, 0.1, 10.0, 10.0), GeometryError);
}

TEST_CASE("corner critical height") {
  const LinkGeometry link(100.0, kPi / 4.0, 100.0, 10.0);
  CHECK(corner_critical_height(link, 13.0) == doctest::Approx(18.2731493398826060).epsilon(1e-14));
  CHECK(corner_critical_height(link, 0.0) == 10.0);
  CHECK(corner_critical_height(LinkGeometry(100.0, kPi / 2.0, 100.0, 10.0), 13.0) == kUnboundedHeight);
  CHECK(corner_critical_height(LinkGeometry(100.0, 0.0, 100.0, 10.0), 13.0) == kUnboundedHeight);
  CHECK(corner_critical_height(LinkGeometry(0.0, 0.7, 100.0, 10.0), 13.0) == kUnboundedHeight);
  // Approaching the street axis the height grows without bound.
  CHECK(corner_critical_height(LinkGeometry(100.0, kPi / 2.0 - 1e-9, 100.0, 10.0), 13.0) > 1e6);
}

TEST_CASE("corner factor") {
  const auto urban = HeightDistribution::uniform(9.5, 28.5);
  const LinkGeometry link(100.0, kPi / 4.0, 100.0, 10.0);
  CHECK(corner_factor(link, 13.0, urban) == doctest::Approx(0.461744702099084528).epsilon(1e-13));
  CHECK(corner_factor(link, 13.0, HeightDistribution::uniform(1.0, 18.0)) == 1.0);
  CHECK(corner_factor(link, 13.0, HeightDistribution::uniform(18.5, 30.0)) == 0.0);
  CHECK(corner_factor(LinkGeometry(100.0, kPi / 2.0, 100.0, 10.0), 13.0, urban) == 1.0);
  CHECK(corner_factor(kUrbanLink, 13.0, urban) == doctest::Approx(kUrbanCorner).epsilon(1e-13));
}

TEST_CASE("axis critical height is linear between antenna and UAV") {
  const LinkGeometry link(100.0, 0.0, 100.0, 10.0);
  CHECK(axis_critical_height(link, 50.0, Axis::X) == doctest::Approx(55.0));
  CHECK(axis_critical_height(link, 0.0, Axis::X) == 10.0);
  CHECK(axis_critical_height(link, link.run(Axis::X), Axis::X) == doctest::Approx(100.0));
  CHECK_THROWS_AS(axis_critical_height(link, 1.0, Axis::Y), DegenerateAxisError);
  CHECK(axis_critical_height(kUrbanLink, kUrbanLink.run(Axis::Y), Axis::Y) == doctest::Approx(100.0));
}

TEST_CASE("integration limits") {
  const auto urban = make_city(Preset::Urban);
  const LinkGeometry diag(100.0, kPi / 4.0, 100.0, 10.0);
  const auto x = integration_limits(diag, urban, Axis::X, Placement::Intersection);
  CHECK(x.lo == doctest::Approx(6.5));
  CHECK(x.hi == doctest::Approx(70.7106781186548));
  CHECK(integration_limits(kUrbanLink, urban, Axis::Y, Placement::Street).lo == 0.0);
  CHECK(integration_limits(diag, urban, Axis::Y, Placement::Street).lo == 0.0);
  const auto flat = integration_limits(LinkGeometry(100.0, 1e-12, 100.0, 10.0), urban, Axis::Y,
                                       Placement::Intersection);
  CHECK(flat.hi < 1e-9);
  CHECK(flat.empty());
  CHECK(integration_limits(LinkGeometry(100.0, 0.0, 100.0, 10.0), urban, Axis::X, Placement::Intersection).empty());
}

TEST_CASE("axis factor closed form") {
  const auto urban = make_city(Preset::Urban);
  CHECK(axis_factor(kUrbanLink, urban, Axis::X, Placement::Intersection) ==
        doctest::Approx(kUrbanX).epsilon(1e-13));
  CHECK(axis_factor(kUrbanLink, urban, Axis::Y, Placement::Intersection) ==
        doctest::Approx(kUrbanYIntersection).epsilon(1e-13));
  CHECK(axis_factor(kUrbanLink, urban, Axis::Y, Placement::Street) ==
        doctest::Approx(kUrbanYStreet).epsilon(1e-13));
  // X and Y sides are governed by the same intensity and heights.
  CHECK(axis_factor(kUrbanLink, urban, Axis::X, Placement::Street) ==
        axis_factor(kUrbanLink, urban, Axis::X, Placement::Intersection));

  SUBCASE("buildings below the antenna never block") {
    auto low = urban;
    low.heights = HeightDistribution::uniform(2.0, 10.0);
    CHECK(axis_factor(kUrbanLink, low, Axis::X, Placement::Street) == 1.0);
    CHECK(axis_factor(kUrbanLink, low, Axis::Y, Placement::Street) == 1.0);
  }
  SUBCASE("empty interval") {
    const LinkGeometry short_link(5.0, 0.2, 100.0, 10.0);
    CHECK(axis_factor(short_link, urban, Axis::X, Placement::Intersection) == 1.0);
  }
  SUBCASE("all-tall buildings give plain void probability") {
    auto tall = urban;
    tall.heights = HeightDistribution::uniform(200.0, 300.0);
    const auto span = integration_limits(kUrbanLink, tall, Axis::X, Placement::Intersection);
    CHECK(axis_factor(kUrbanLink, tall, Axis::X, Placement::Intersection) ==
          doctest::Approx(std::exp(-(span.hi - span.lo) / 58.0)).epsilon(1e-14));
  }
}

TEST_CASE("axis factor quadrature agrees with the closed form") {
  const auto urban = make_city(Preset::Urban);
  for (auto axis : {Axis::X, Axis::Y}) {
    for (auto placement : {Placement::Intersection, Placement::Street}) {
      const double exact = axis_factor(kUrbanLink, urban, axis, placement);
      const double quad = axis_factor_quadrature(kUrbanLink, urban, axis, placement);
      CHECK(std::abs(quad - exact) <= 1e-10 * exact);
    }
  }
  auto low = urban;
  low.heights = HeightDistribution::uniform(2.0, 10.0);
  CHECK(axis_factor_quadrature(kUrbanLink, low, Axis::X, Placement::Intersection) == 1.0);

  // Doubling the street intensity doubles the exponent.
  auto dense_streets = urban;
  dense_streets.mu_b = (urban.mu_s + urban.mu_b) / 2.0 - urban.mu_s;
  const double single = std::log(axis_factor_quadrature(kUrbanLink, urban, Axis::Y, Placement::Street));
  const double twice = std::log(axis_factor_quadrature(kUrbanLink, dense_streets, Axis::Y, Placement::Street));
  CHECK(twice == doctest::Approx(2.0 * single).epsilon(1e-11));
}

TEST_CASE("los probability") {
  const auto urban = make_city(Preset::Urban);
  CHECK(los_probability(kUrbanLink, urban, Placement::Intersection) ==
        doctest::Approx(kUrbanLosIntersection).epsilon(1e-13));
  CHECK(los_probability(kUrbanLink, urban, Placement::Street) == doctest::Approx(kUrbanLosStreet).epsilon(1e-13));
  CHECK(los_probability(LinkGeometry(150.0, 0.0, 100.0, 10.0), urban, Placement::Intersection) == 1.0);
  CHECK(los_probability(LinkGeometry(0.0, 1.0, 100.0, 10.0), urban, Placement::Street) == 1.0);

  auto low = urban;
  low.heights = HeightDistribution::uniform(2.0, 9.0);
  CHECK(los_probability(kUrbanLink, low, Placement::Street) == 1.0);

  const auto dense = make_city(Preset::DenseUrban);
  CHECK(los_probability(LinkGeometry(80.0, 0.3, 60.0, 10.0), dense, Placement::Intersection) ==
        doctest::Approx(0.731062762389775141).epsilon(1e-13));
}

#pragma once

#include <cstddef>
#include <vector>

#include "uavnet/los.hpp"
#include "uavnet/random.hpp"

namespace uavnet::oracle {

struct BuildingSide {
  double position = 0.0;  ///< coordinate along the axis (m)
  double height = 0.0;    ///< m
};

/// One explicit draw of the blocking model: Poisson building sides on the
/// positive half of each axis with i.i.d. heights, plus the corner building.
struct ExplicitCityDraw {
  std::vector<BuildingSide> x_sides;
  std::vector<BuildingSide> y_sides;
  double corner_height = 0.0;
};

ExplicitCityDraw sample_city(const CityModel& city, double extent_x, double extent_y, RandomStream& rng);

/// Ray test of the link against a draw. The draw must extend past the
/// link's far interval limit on both axes.
bool link_blocked(const ExplicitCityDraw& draw, const LinkGeometry& link, const CityModel& city,
                  Placement placement);

struct EmpiricalLos {
  double p_hat = 0.0;
  double se = 0.0;
};

/// Fraction of `n` independent city draws in which the link is unblocked.
EmpiricalLos empirical_los_probability(const LinkGeometry& link, const CityModel& city, Placement placement,
                                       std::size_t n, RandomStream& rng);

/// Extent needed along an axis: the far limit plus one mean street period.
double sampling_extent(const LinkGeometry& link, const CityModel& city, Axis axis);

}  // namespace uavnet::oracle

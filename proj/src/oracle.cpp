#include "uavnet/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace uavnet::oracle {

namespace {

void sample_sides(std::vector<BuildingSide>& out, double intensity, double extent,
                  const HeightDistribution& heights, RandomStream& rng) {
  out.clear();
  const auto count = rng.poisson(intensity * extent);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double position = rng.uniform(0.0, extent);
    out.push_back({position, heights.sample(rng)});
  }
}

bool axis_blocked(const std::vector<BuildingSide>& sides, const LinkGeometry& link, const CityModel& city,
                  Axis axis, Placement placement) {
  const Interval span = integration_limits(link, city, axis, placement);
  if (span.empty() || !(link.run(axis) > 0.0)) return false;
  for (const auto& side : sides) {
    if (side.position > span.lo && side.position < span.hi &&
        side.height > axis_critical_height(link, side.position, axis))
      return true;
  }
  return false;
}

}  // namespace

ExplicitCityDraw sample_city(const CityModel& city, double extent_x, double extent_y, RandomStream& rng) {
  if (!(extent_x > 0.0) || !(extent_y > 0.0)) throw std::invalid_argument("sampling extents must be positive");
  ExplicitCityDraw draw;
  const double intensity = city.street_intensity();
  sample_sides(draw.x_sides, intensity, extent_x, city.heights, rng);
  sample_sides(draw.y_sides, intensity, extent_y, city.heights, rng);
  draw.corner_height = city.heights.sample(rng);
  return draw;
}

bool link_blocked(const ExplicitCityDraw& draw, const LinkGeometry& link, const CityModel& city,
                  Placement placement) {
  const double h0 = corner_critical_height(link, city.w_v);
  if (h0 != kUnboundedHeight && draw.corner_height > h0) return true;
  return axis_blocked(draw.x_sides, link, city, Axis::X, placement) ||
         axis_blocked(draw.y_sides, link, city, Axis::Y, placement);
}

double sampling_extent(const LinkGeometry& link, const CityModel& city, Axis axis) {
  return link.run(axis) + city.mu_s + city.mu_b;
}

EmpiricalLos empirical_los_probability(const LinkGeometry& link, const CityModel& city, Placement placement,
                                       std::size_t n, RandomStream& rng) {
  if (n == 0) throw std::invalid_argument("empirical LoS estimate needs n >= 1");
  const double ex = sampling_extent(link, city, Axis::X);
  const double ey = sampling_extent(link, city, Axis::Y);
  std::size_t clear = 0;
  ExplicitCityDraw draw;
  for (std::size_t i = 0; i < n; ++i) {
    draw = sample_city(city, ex, ey, rng);
    if (!link_blocked(draw, link, city, placement)) ++clear;
  }
  const double p = static_cast<double>(clear) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

}  // namespace uavnet::oracle

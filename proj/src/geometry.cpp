#include "uavnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavnet {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

void sort_by_distance(std::vector<UavPosition>& uavs) {
  std::sort(uavs.begin(), uavs.end(),
            [](const UavPosition& a, const UavPosition& b) { return a.d < b.d; });
}

}  // namespace

HeightDistribution HeightDistribution::uniform(double h_min, double h_max) {
  HeightDistribution h{h_min, h_max};
  h.validate();
  return h;
}

void HeightDistribution::validate() const {
  if (!(std::isfinite(h_min) && std::isfinite(h_max) && h_min >= 0.0 && h_min < h_max))
    throw GeometryError("building heights require 0 <= h_min < h_max");
}

void CityModel::validate() const {
  if (!finite_positive(mu_s) || !finite_positive(mu_b) || !finite_positive(mu_h))
    throw GeometryError("city model requires mu_s, mu_b, mu_h > 0");
  if (!(w_v >= 0.0) || !(w_h >= 0.0) || !std::isfinite(w_v) || !std::isfinite(w_h))
    throw GeometryError("street widths must be non-negative");
  if (!finite_positive(street_intensity()))
    throw GeometryError("street intensity must be finite and positive");
  heights.validate();
}

CityModel make_city(double mu_s, double mu_b, double mu_h) {
  CityModel city{mu_s, mu_b, mu_h, mu_s, mu_s, HeightDistribution{0.5 * mu_h, 1.5 * mu_h}};
  city.validate();
  return city;
}

CityModel make_city(Preset preset) {
  switch (preset) {
    case Preset::Suburban:
      return make_city(10.0, 37.0, 10.0);
    case Preset::Urban:
      return make_city(13.0, 45.0, 19.0);
    case Preset::DenseUrban:
      return make_city(20.0, 60.0, 25.0);
  }
  throw GeometryError("unknown preset");
}

std::optional<Preset> parse_preset(std::string_view name) {
  if (name == "suburban") return Preset::Suburban;
  if (name == "urban") return Preset::Urban;
  if (name == "dense-urban") return Preset::DenseUrban;
  return std::nullopt;
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::Suburban:
      return "suburban";
    case Preset::Urban:
      return "urban";
    case Preset::DenseUrban:
      return "dense-urban";
  }
  return "unknown";
}

void RadioParams::validate() const {
  if (!std::isfinite(h_uav) || !std::isfinite(h_v) || !(h_v >= 0.0) || !(h_uav > h_v))
    throw GeometryError("radio parameters require h_uav > h_v >= 0");
  if (!(lambda_uav >= 0.0) || !std::isfinite(lambda_uav))
    throw GeometryError("UAV density must be non-negative");
  if (!std::isfinite(r_max) || !(r_max > h_uav - h_v))
    throw GeometryError("r_max must exceed h_uav - h_v; the coverage disk is empty");
}

double ground_range(const RadioParams& radio) {
  // Level links (h_uav == h_v) are still projectable; only the disk needs to exist.
  if (!std::isfinite(radio.h_uav) || !(radio.h_v >= 0.0) || !(radio.h_uav >= radio.h_v))
    throw GeometryError("radio parameters require h_uav >= h_v >= 0");
  if (!std::isfinite(radio.r_max) || !(radio.r_max > radio.h_uav - radio.h_v))
    throw GeometryError("r_max must exceed h_uav - h_v; the coverage disk is empty");
  const double dh = radio.h_uav - radio.h_v;
  return std::sqrt(radio.r_max * radio.r_max - dh * dh);
}

NetworkRealization sample_realization(const RadioParams& radio, RandomStream& rng) {
  radio.validate();
  const double d_max = ground_range(radio);
  const auto count = rng.poisson(radio.lambda_uav * std::numbers::pi * d_max * d_max);
  NetworkRealization out;
  out.uavs.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double d = d_max * std::sqrt(rng.uniform());
    out.uavs.push_back({d, rng.angle()});
  }
  sort_by_distance(out.uavs);
  return out;
}

double intersection_weight(const CityModel& city) noexcept { return city.mu_s / (city.mu_s + city.mu_b); }

double ConstellationSampler::disk_area(double d_max) noexcept { return std::numbers::pi * d_max * d_max; }

std::vector<ConstellationSampler::MarkedUav> ConstellationSampler::marked(std::uint64_t index,
                                                                          double lambda_cap,
                                                                          double d_cap) const {
  std::vector<MarkedUav> out;
  if (!(lambda_cap > 0.0) || !(d_cap > 0.0)) return out;
  const double area_cap = disk_area(d_cap);
  const auto strips = static_cast<std::uint64_t>(std::ceil(lambda_cap / kStripDensity));
  for (std::uint64_t k = 0; k < strips; ++k) {
    auto rng = RandomStream::keyed({seed_, index, k});
    const double mark_base = static_cast<double>(k) * kStripDensity;
    double area = 0.0;
    for (;;) {
      area += rng.exponential() / kStripDensity;
      if (area > area_cap) break;
      const double mark = mark_base + kStripDensity * rng.uniform();
      const double phi = rng.angle();
      if (mark < lambda_cap) out.push_back({{std::sqrt(area / std::numbers::pi), phi}, area, mark});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MarkedUav& a, const MarkedUav& b) { return a.position.d < b.position.d; });
  return out;
}

NetworkRealization ConstellationSampler::realize(std::uint64_t index, double lambda, double d_max) const {
  NetworkRealization out;
  for (const auto& m : marked(index, lambda, d_max)) out.uavs.push_back(m.position);
  return out;
}

}  // namespace uavnet

#include "uavnet/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavnet/parallel.hpp"

namespace uavnet {

double connectivity_from_los(std::span<const double> p_los) noexcept {
  double all_blocked = 1.0;
  for (double p : p_los) all_blocked *= 1.0 - p;
  return 1.0 - all_blocked;
}

double conditional_connectivity(const NetworkRealization& realization, const CityModel& city,
                                const RadioParams& radio, Placement placement) {
  double all_blocked = 1.0;
  for (const auto& uav : realization.uavs) {
    const LinkGeometry link(uav.d, uav.phi, radio.h_uav, radio.h_v);
    all_blocked *= 1.0 - los_probability(link, city, placement);
  }
  return 1.0 - all_blocked;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples, std::uint64_t seed)
    : samples_(std::move(samples)), seed_(seed) {
  for (double s : samples_)
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("connectivity samples must lie in [0, 1]");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::evaluate(double gamma) const noexcept {
  if (samples_.empty()) return 0.0;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), gamma);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

void ScenarioConfig::validate() const {
  city.validate();
  radio.validate();
  if (n_realizations < 1) throw std::invalid_argument("n_realizations must be at least 1");
}

ConnectivityEstimate estimate_distribution(const ScenarioConfig& cfg) {
  cfg.validate();
  const double d_max = ground_range(cfg.radio);
  const bool want_sec = cfg.placement_mode != PlacementMode::StreetOnly;
  const bool want_str = cfg.placement_mode != PlacementMode::IntersectionOnly;
  const ConstellationSampler sampler(cfg.seed);

  std::vector<double> sec(want_sec ? cfg.n_realizations : 0);
  std::vector<double> str(want_str ? cfg.n_realizations : 0);
  parallel_chunks(cfg.n_realizations, cfg.workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto realization = sampler.realize(i, cfg.radio.lambda_uav, d_max);
      if (want_sec) sec[i] = conditional_connectivity(realization, cfg.city, cfg.radio, Placement::Intersection);
      if (want_str) str[i] = conditional_connectivity(realization, cfg.city, cfg.radio, Placement::Street);
    }
  });

  ConnectivityEstimate out;
  if (want_sec) out.intersection = EmpiricalDistribution(std::move(sec), cfg.seed);
  if (want_str) out.street = EmpiricalDistribution(std::move(str), cfg.seed);
  return out;
}

MixtureCdf mixture_cdf(EmpiricalDistribution intersection, EmpiricalDistribution street, const CityModel& city) {
  return MixtureCdf(std::move(intersection), std::move(street), intersection_weight(city));
}

}  // namespace uavnet

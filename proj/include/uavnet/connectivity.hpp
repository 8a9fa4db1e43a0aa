#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavnet/geometry.hpp"
#include "uavnet/los.hpp"

namespace uavnet {

/// Probability that at least one UAV of a fixed constellation has LoS,
/// assuming independent blocking: 1 - prod(1 - p_LoS). Empty gives 0.
double conditional_connectivity(const NetworkRealization& realization, const CityModel& city,
                                const RadioParams& radio, Placement placement);

/// Same product over precomputed per-link LoS probabilities, in order.
double connectivity_from_los(std::span<const double> p_los) noexcept;

/// Sorted Monte Carlo samples of p_c, evaluated as a right-continuous CDF.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  EmpiricalDistribution(std::vector<double> samples, std::uint64_t seed);

  /// Fraction of samples <= gamma.
  double evaluate(double gamma) const noexcept;
  double operator()(double gamma) const noexcept { return evaluate(gamma); }

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::vector<double> samples_;
  std::uint64_t seed_ = 0;
};

enum class PlacementMode { IntersectionOnly, StreetOnly, Mixture };

struct ScenarioConfig {
  CityModel city;
  RadioParams radio;
  PlacementMode placement_mode = PlacementMode::Mixture;
  std::size_t n_realizations = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void validate() const;
};

struct ConnectivityEstimate {
  std::optional<EmpiricalDistribution> intersection;
  std::optional<EmpiricalDistribution> street;
};

/// Scores `n_realizations` coupled constellations (see ConstellationSampler)
/// for each requested placement. Mixture mode scores both placements on the
/// same constellations.
ConnectivityEstimate estimate_distribution(const ScenarioConfig& cfg);

/// Placement-averaged CDF: w F_intersection + (1 - w) F_street.
class MixtureCdf {
 public:
  MixtureCdf(EmpiricalDistribution intersection, EmpiricalDistribution street, double weight)
      : intersection_(std::move(intersection)), street_(std::move(street)), weight_(weight) {}

  double operator()(double gamma) const noexcept {
    return weight_ * intersection_(gamma) + (1.0 - weight_) * street_(gamma);
  }

  double weight() const noexcept { return weight_; }
  const EmpiricalDistribution& intersection() const noexcept { return intersection_; }
  const EmpiricalDistribution& street() const noexcept { return street_; }

 private:
  EmpiricalDistribution intersection_;
  EmpiricalDistribution street_;
  double weight_;
};

MixtureCdf mixture_cdf(EmpiricalDistribution intersection, EmpiricalDistribution street, const CityModel& city);

/// Outage probability: the connectivity CDF at the threshold.
template <class Cdf>
double outage(const Cdf& cdf, double gamma_th) {
  return cdf(gamma_th);
}

}  // namespace uavnet

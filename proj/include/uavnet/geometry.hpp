#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavnet/random.hpp"

namespace uavnet {

/// Raised when parameters describe a geometry the model cannot represent.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Building height distribution. Only the uniform law is supported.
struct HeightDistribution {
  double h_min = 0.0;
  double h_max = 1.0;

  static HeightDistribution uniform(double h_min, double h_max);

  /// Mean-centred uniform law on [mean/2, 3*mean/2].
  static HeightDistribution around_mean(double mean) { return uniform(0.5 * mean, 1.5 * mean); }

  double cdf(double h) const noexcept {
    if (h <= h_min) return 0.0;
    if (h >= h_max) return 1.0;
    return (h - h_min) / (h_max - h_min);
  }

  double sample(RandomStream& rng) const { return rng.uniform(h_min, h_max); }

  void validate() const;
};

/// Street grid statistics plus the building height law.
struct CityModel {
  double mu_s = 0.0;  ///< mean street width (m)
  double mu_b = 0.0;  ///< mean block length (m)
  double mu_h = 0.0;  ///< mean building height (m)
  double w_v = 0.0;   ///< north-south street width (m)
  double w_h = 0.0;   ///< east-west street width (m)
  HeightDistribution heights;

  /// Street (building-side) intensity along each axis, per metre.
  double street_intensity() const noexcept { return 1.0 / (mu_s + mu_b); }

  void validate() const;
};

enum class Preset { Suburban, Urban, DenseUrban };

/// Table rows for the three canonical city types. Street widths default to
/// the mean street width and heights are uniform on [mu_h/2, 3 mu_h/2].
CityModel make_city(Preset preset);
CityModel make_city(double mu_s, double mu_b, double mu_h);

std::optional<Preset> parse_preset(std::string_view name);
std::string_view preset_name(Preset preset);

struct RadioParams {
  double r_max = 250.0;      ///< maximum 3D range (m)
  double h_uav = 100.0;      ///< UAV altitude (m)
  double h_v = 10.0;         ///< vehicle antenna height (m)
  double lambda_uav = 0.0;   ///< UAV density (per m^2)

  void validate() const;
};

struct UavPosition {
  double d = 0.0;    ///< 2D distance from the vehicle (m)
  double phi = 0.0;  ///< azimuth in [0, 2 pi)
};

/// UAVs inside the coverage disk, sorted by ascending distance.
struct NetworkRealization {
  std::vector<UavPosition> uavs;

  std::size_t size() const noexcept { return uavs.size(); }
  bool empty() const noexcept { return uavs.empty(); }
};

/// Ground projection of the 3D range: sqrt(r_max^2 - (h_uav - h_v)^2).
/// Throws GeometryError when the vertical offset reaches the range.
double ground_range(const RadioParams& radio);

/// Draws one constellation from a homogeneous PPP restricted to the disk.
NetworkRealization sample_realization(const RadioParams& radio, RandomStream& rng);

/// Probability that a vehicle on the street grid sits in an intersection.
double intersection_weight(const CityModel& city) noexcept;

/// Coupled constellation source for common-random-number studies.
///
/// Realization `index` is a fixed draw of a unit-intensity Poisson process on
/// (ground area, density mark) space, produced lazily in strips of
/// `kStripDensity` along the mark axis. A scenario (lambda, d_max) keeps the
/// points with area below pi*d_max^2 and mark below lambda, which is a PPP of
/// intensity lambda on the disk. Scenarios therefore share one draw per index:
/// a larger density or range always sees a superset of UAVs, and results do
/// not depend on which other scenarios are evaluated.
class ConstellationSampler {
 public:
  /// Width of one mark strip, per m^2 (10 per km^2).
  static constexpr double kStripDensity = 1e-5;

  struct MarkedUav {
    UavPosition position;
    double area = 0.0;  ///< ground area enclosed at this distance, pi d^2 (m^2)
    double mark = 0.0;  ///< density threshold at which this UAV appears (per m^2)
  };

  /// Disk area used for range filtering. Subsets must compare against this
  /// exact expression to match a direct draw at the smaller range.
  static double disk_area(double d_max) noexcept;

  explicit ConstellationSampler(std::uint64_t seed) : seed_(seed) {}

  /// All UAVs with mark < lambda_cap and distance <= d_cap, sorted by distance.
  std::vector<MarkedUav> marked(std::uint64_t index, double lambda_cap, double d_cap) const;

  NetworkRealization realize(std::uint64_t index, double lambda, double d_max) const;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace uavnet

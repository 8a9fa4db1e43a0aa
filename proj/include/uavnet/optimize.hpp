#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uavnet/connectivity.hpp"
#include "uavnet/geometry.hpp"

namespace uavnet {

class InfeasibleSearchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Monte Carlo settings shared by every cell of a study. The seed keys the
/// constellation draws, so all cells see common random numbers.
struct MonteCarloSettings {
  std::size_t n_realizations = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Fixed part of a deployment: everything but density and altitude.
struct Deployment {
  CityModel city;
  double r_max = 250.0;
  double h_v = 10.0;
};

/// Placement-averaged outage on a density x altitude lattice.
/// Result is indexed [lambda][height]; densities are per m^2.
std::vector<std::vector<double>> outage_lattice(const Deployment& dep, double gamma_th,
                                                const std::vector<double>& lambdas,
                                                const std::vector<double>& heights,
                                                const MonteCarloSettings& mc);

/// Outage versus altitude at one density.
std::vector<double> outage_curve(const Deployment& dep, double gamma_th, double lambda,
                                 const std::vector<double>& heights, const MonteCarloSettings& mc);

double outage_at(const Deployment& dep, double gamma_th, double lambda, double h_uav,
                 const MonteCarloSettings& mc);

struct HeightSearchSpec {
  double h_lo = 0.0;
  double h_hi = 0.0;
  double grid_step = 5.0;
  double refine_tol = 1.0;
  double gamma_th = 0.8;

  /// Full admissible altitude range (h_v, h_v + r_max).
  static HeightSearchSpec full_range(const Deployment& dep, double gamma_th);
};

struct HeightOptimum {
  double h_star = 0.0;
  double outage_star = 0.0;
};

/// Grid scan followed by golden-section refinement inside the bracketing
/// cells. Ties go to the lower altitude; a refinement that does not improve
/// on the grid minimum is discarded.
HeightOptimum optimize_height(const Deployment& dep, double lambda, const HeightSearchSpec& spec,
                              const MonteCarloSettings& mc);

struct ContourGrid {
  std::vector<double> lambda_axis;  ///< per m^2
  std::vector<double> height_axis;  ///< m
  std::vector<std::vector<double>> outage;
};

ContourGrid sweep_contour(const Deployment& dep, double gamma_th, std::vector<double> lambda_axis,
                          std::vector<double> height_axis, const MonteCarloSettings& mc);

struct DensityRequirement {
  double lambda_min = 0.0;  ///< per m^2
  double h_at_min = 0.0;
  double outage = 0.0;
};

/// Smallest density on the grid whose best altitude meets the target.
/// Empty when no cell does.
std::optional<DensityRequirement> min_density_for_outage(const ContourGrid& grid, double target);

}  // namespace uavnet

#pragma once

#include <limits>
#include <stdexcept>

#include "uavnet/geometry.hpp"

namespace uavnet {

/// Ground axis. X sides are crossed via cos(phi) and limited by w_v, Y sides
/// via sin(phi) and w_h.
enum class Axis { X, Y };

/// One vehicle-to-UAV link with the azimuth folded into [0, pi/2].
///
/// Folding uses |cos phi| and |sin phi|, so each axis stays paired with its
/// own street width. Exact multiples of pi/2 snap to cos or sin equal to zero
/// so the degenerate limits are taken exactly.
class LinkGeometry {
 public:
  LinkGeometry(double d, double phi, double h_uav, double h_v);

  double d() const noexcept { return d_; }
  double phi() const noexcept { return phi_; }
  double h_uav() const noexcept { return h_uav_; }
  double h_v() const noexcept { return h_v_; }
  double cos_phi() const noexcept { return cos_; }
  double sin_phi() const noexcept { return sin_; }

  /// Ground-projected run of the link along an axis: d cos phi or d sin phi.
  double run(Axis axis) const noexcept;

 private:
  double d_;
  double phi_;
  double h_uav_;
  double h_v_;
  double cos_;
  double sin_;
};

enum class Placement { Intersection, Street };

/// Raised by axis_critical_height when the link has no run along the axis.
class DegenerateAxisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const noexcept { return !(lo < hi); }
};

inline constexpr double kUnboundedHeight = std::numeric_limits<double>::infinity();

/// Height above which the building at the vehicle's own corner blocks the
/// link. Returns kUnboundedHeight when the link never crosses that building.
double corner_critical_height(const LinkGeometry& link, double w_v);

double corner_factor(const LinkGeometry& link, double w_v, const HeightDistribution& heights);

/// Height of the link above ground at coordinate z along `axis`.
double axis_critical_height(const LinkGeometry& link, double z, Axis axis);

/// Street widths seen by the vehicle for a placement (Street drops w_h).
double effective_width(const CityModel& city, Axis axis, Placement placement) noexcept;

Interval integration_limits(const LinkGeometry& link, const CityModel& city, Axis axis,
                            Placement placement);

/// Void probability of the height-thinned side process along one axis,
/// evaluated exactly for uniform heights.
double axis_factor(const LinkGeometry& link, const CityModel& city, Axis axis, Placement placement);

/// Same quantity by adaptive Gauss-Kronrod integration of the thinned
/// intensity; `tol` is an absolute tolerance on the exponent.
double axis_factor_quadrature(const LinkGeometry& link, const CityModel& city, Axis axis,
                              Placement placement, double tol = 1e-11);

/// Probability that neither the corner building nor any side along X or Y
/// blocks the link.
double los_probability(const LinkGeometry& link, const CityModel& city, Placement placement);

}  // namespace uavnet

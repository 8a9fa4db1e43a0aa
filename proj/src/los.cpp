#include "uavnet/los.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace uavnet {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double fold_azimuth(double phi) {
  double folded = std::fmod(phi, 2.0 * std::numbers::pi);
  if (folded < 0.0) folded += 2.0 * std::numbers::pi;
  if (folded > std::numbers::pi) folded = 2.0 * std::numbers::pi - folded;
  if (folded > kHalfPi) folded = std::numbers::pi - folded;
  return folded;
}

// Start of the crossing interval on an axis: max(w/2, (w/2) * own/other),
// i.e. cot(phi) on X and tan(phi) on Y. Zero-width gaps start at the vehicle.
double interval_start(double width, double own, double other) {
  if (width == 0.0) return 0.0;
  const double half = 0.5 * width;
  if (other == 0.0) return kUnboundedHeight;
  return std::max(half, half * own / other);
}

}  // namespace

LinkGeometry::LinkGeometry(double d, double phi, double h_uav, double h_v)
    : d_(d), phi_(fold_azimuth(phi)), h_uav_(h_uav), h_v_(h_v) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw GeometryError("link distance must be finite and >= 0");
  if (!std::isfinite(phi)) throw GeometryError("link azimuth must be finite");
  if (!(h_uav > h_v) || !(h_v >= 0.0)) throw GeometryError("link requires h_uav > h_v >= 0");
  if (phi_ == 0.0) {
    cos_ = 1.0;
    sin_ = 0.0;
  } else if (phi_ == kHalfPi) {
    cos_ = 0.0;
    sin_ = 1.0;
  } else {
    cos_ = std::cos(phi_);
    sin_ = std::sin(phi_);
  }
}

double LinkGeometry::run(Axis axis) const noexcept { return d_ * (axis == Axis::X ? cos_ : sin_); }

double corner_critical_height(const LinkGeometry& link, double w_v) {
  const double run = link.run(Axis::X);
  if (w_v == 0.0) return link.h_v();
  if (run == 0.0 || link.sin_phi() == 0.0) return kUnboundedHeight;
  const double z0 = interval_start(w_v, link.cos_phi(), link.sin_phi());
  return z0 * (link.h_uav() - link.h_v()) / run + link.h_v();
}

double corner_factor(const LinkGeometry& link, double w_v, const HeightDistribution& heights) {
  const double h0 = corner_critical_height(link, w_v);
  if (h0 == kUnboundedHeight) return 1.0;
  return heights.cdf(h0);
}

double axis_critical_height(const LinkGeometry& link, double z, Axis axis) {
  const double run = link.run(axis);
  if (!(run > 0.0)) throw DegenerateAxisError("link has no run along the requested axis");
  return z * (link.h_uav() - link.h_v()) / run + link.h_v();
}

double effective_width(const CityModel& city, Axis axis, Placement placement) noexcept {
  if (axis == Axis::X) return city.w_v;
  return placement == Placement::Street ? 0.0 : city.w_h;
}

Interval integration_limits(const LinkGeometry& link, const CityModel& city, Axis axis,
                            Placement placement) {
  const double width = effective_width(city, axis, placement);
  const double own = axis == Axis::X ? link.cos_phi() : link.sin_phi();
  const double other = axis == Axis::X ? link.sin_phi() : link.cos_phi();
  return {interval_start(width, own, other), link.run(axis)};
}

double axis_factor(const LinkGeometry& link, const CityModel& city, Axis axis, Placement placement) {
  const Interval span = integration_limits(link, city, axis, placement);
  const double run = link.run(axis);
  if (span.empty() || !(run > 0.0)) return 1.0;

  // Critical height rises linearly, h(z) = h_v + slope * z. The retained
  // fraction 1 - F(h(z)) is 1 below z_lo, 0 above z_hi and linear between.
  const auto& hb = city.heights;
  const double slope = (link.h_uav() - link.h_v()) / run;
  const double z_lo = (hb.h_min - link.h_v()) / slope;
  const double z_hi = (hb.h_max - link.h_v()) / slope;
  const auto retained = [&](double z) { return (hb.h_max - link.h_v() - slope * z) / (hb.h_max - hb.h_min); };

  double integral = 0.0;
  // Segment where every side is tall enough.
  const double full_end = std::min(span.hi, z_lo);
  if (full_end > span.lo) integral += full_end - span.lo;
  // Segment where the retained fraction falls linearly; trapezoid is exact.
  const double a = std::max(span.lo, z_lo);
  const double b = std::min(span.hi, z_hi);
  if (b > a) integral += 0.5 * (b - a) * (retained(a) + retained(b));

  return std::exp(-city.street_intensity() * integral);
}

double axis_factor_quadrature(const LinkGeometry& link, const CityModel& city, Axis axis,
                              Placement placement, double tol) {
  const Interval span = integration_limits(link, city, axis, placement);
  if (span.empty() || !(link.run(axis) > 0.0)) return 1.0;

  struct Integrand {
    const LinkGeometry* link;
    const CityModel* city;
    Axis axis;
  } ctx{&link, &city, axis};
  gsl_function fn;
  fn.params = &ctx;
  fn.function = [](double z, void* p) {
    const auto& c = *static_cast<const Integrand*>(p);
    return c.city->street_intensity() * (1.0 - c.city->heights.cdf(axis_critical_height(*c.link, z, c.axis)));
  };

  // The integrand is smooth except where the critical height enters or
  // leaves the support of the height distribution; split there.
  std::vector<double> edges{span.lo, span.hi};
  const double h_start = axis_critical_height(link, span.lo, axis);
  const double h_end = axis_critical_height(link, span.hi, axis);
  for (const double h : {city.heights.h_min, city.heights.h_max}) {
    if (!(h > h_start && h < h_end)) continue;
    edges.push_back(span.lo + (h - h_start) / (h_end - h_start) * (span.hi - span.lo));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // GSL aborts on errors by default; statuses are handled here instead.
  static const gsl_error_handler_t* const previous_handler = gsl_set_error_handler_off();
  (void)previous_handler;
  constexpr std::size_t kWorkspace = 4000;
  const std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(kWorkspace), &gsl_integration_workspace_free);
  double exponent = 0.0;
  const double panel_tol = tol / static_cast<double>(edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double part = 0.0;
    double abserr = 0.0;
    // A status other than success means round-off capped the achievable
    // accuracy; the estimate is still the best available.
    gsl_integration_qag(&fn, edges[i], edges[i + 1], panel_tol, 0.0, kWorkspace, GSL_INTEG_GAUSS21, ws.get(),
                        &part, &abserr);
    exponent += part;
  }
  return std::exp(-exponent);
}

double los_probability(const LinkGeometry& link, const CityModel& city, Placement placement) {
  const double corner = corner_factor(link, city.w_v, city.heights);
  if (corner == 0.0) return 0.0;
  return corner * axis_factor(link, city, Axis::X, placement) * axis_factor(link, city, Axis::Y, placement);
}

}  // namespace uavnet

#include "uavnet/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "uavnet/parallel.hpp"

namespace uavnet {

namespace {

constexpr double kGoldenRatio = 1.6180339887498948482;

struct Cell {
  std::uint64_t intersection = 0;
  std::uint64_t street = 0;
};

}  // namespace

std::vector<std::vector<double>> outage_lattice(const Deployment& dep, double gamma_th,
                                                const std::vector<double>& lambdas,
                                                const std::vector<double>& heights,
                                                const MonteCarloSettings& mc) {
  dep.city.validate();
  if (mc.n_realizations < 1) throw std::invalid_argument("n_realizations must be at least 1");
  if (!(gamma_th >= 0.0 && gamma_th <= 1.0)) throw std::invalid_argument("gamma_th must lie in [0, 1]");
  for (double l : lambdas)
    if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("UAV densities must be non-negative");

  const std::size_t nl = lambdas.size();
  const std::size_t nh = heights.size();
  std::vector<double> area(nh);
  double d_cap = 0.0;
  for (std::size_t j = 0; j < nh; ++j) {
    const double d_max = ground_range({dep.r_max, heights[j], dep.h_v, 0.0});
    area[j] = ConstellationSampler::disk_area(d_max);
    d_cap = std::max(d_cap, d_max);
  }
  const double lambda_cap = nl == 0 ? 0.0 : *std::max_element(lambdas.begin(), lambdas.end());

  const ConstellationSampler sampler(mc.seed);
  const unsigned workers = resolve_workers(mc.workers);
  std::vector<std::vector<Cell>> partial(workers, std::vector<Cell>(nl * nh));

  parallel_chunks(mc.n_realizations, workers, [&](unsigned worker, std::size_t begin, std::size_t end) {
    auto& counts = partial[worker];
    std::vector<double> p_sec;
    std::vector<double> p_str;
    std::vector<double> marks;
    for (std::size_t i = begin; i < end; ++i) {
      const auto points = sampler.marked(i, lambda_cap, d_cap);
      for (std::size_t j = 0; j < nh; ++j) {
        p_sec.clear();
        p_str.clear();
        marks.clear();
        for (const auto& m : points) {
          if (m.area > area[j]) continue;
          const LinkGeometry link(m.position.d, m.position.phi, heights[j], dep.h_v);
          p_sec.push_back(los_probability(link, dep.city, Placement::Intersection));
          p_str.push_back(los_probability(link, dep.city, Placement::Street));
          marks.push_back(m.mark);
        }
        for (std::size_t k = 0; k < nl; ++k) {
          double blocked_sec = 1.0;
          double blocked_str = 1.0;
          for (std::size_t m = 0; m < marks.size(); ++m) {
            if (!(marks[m] < lambdas[k])) continue;
            blocked_sec *= 1.0 - p_sec[m];
            blocked_str *= 1.0 - p_str[m];
          }
          auto& cell = counts[k * nh + j];
          if (1.0 - blocked_sec <= gamma_th) ++cell.intersection;
          if (1.0 - blocked_str <= gamma_th) ++cell.street;
        }
      }
    }
  });

  const double w = intersection_weight(dep.city);
  const double n = static_cast<double>(mc.n_realizations);
  std::vector<std::vector<double>> out(nl, std::vector<double>(nh));
  for (std::size_t k = 0; k < nl; ++k) {
    for (std::size_t j = 0; j < nh; ++j) {
      std::uint64_t sec = 0;
      std::uint64_t str = 0;
      for (const auto& counts : partial) {
        sec += counts[k * nh + j].intersection;
        str += counts[k * nh + j].street;
      }
      out[k][j] = w * (static_cast<double>(sec) / n) + (1.0 - w) * (static_cast<double>(str) / n);
    }
  }
  return out;
}

std::vector<double> outage_curve(const Deployment& dep, double gamma_th, double lambda,
                                 const std::vector<double>& heights, const MonteCarloSettings& mc) {
  return outage_lattice(dep, gamma_th, {lambda}, heights, mc).front();
}

double outage_at(const Deployment& dep, double gamma_th, double lambda, double h_uav,
                 const MonteCarloSettings& mc) {
  return outage_lattice(dep, gamma_th, {lambda}, {h_uav}, mc).front().front();
}

HeightSearchSpec HeightSearchSpec::full_range(const Deployment& dep, double gamma_th) {
  HeightSearchSpec spec;
  spec.h_lo = dep.h_v;
  spec.h_hi = dep.h_v + dep.r_max;
  spec.gamma_th = gamma_th;
  return spec;
}

HeightOptimum optimize_height(const Deployment& dep, double lambda, const HeightSearchSpec& spec,
                              const MonteCarloSettings& mc) {
  if (!(spec.grid_step > 0.0) || !(spec.refine_tol > 0.0))
    throw std::invalid_argument("grid_step and refine_tol must be positive");
  const double lo = std::max(spec.h_lo, dep.h_v + spec.refine_tol);
  const double hi = std::min(spec.h_hi, dep.h_v + dep.r_max - spec.refine_tol);
  if (!(lo < hi)) throw InfeasibleSearchError("altitude search interval is empty after clamping");

  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double h = lo + static_cast<double>(i) * spec.grid_step;
    if (h >= hi) break;
    grid.push_back(h);
  }
  grid.push_back(hi);

  const auto curve = outage_curve(dep, spec.gamma_th, lambda, grid, mc);
  const std::size_t best_i = static_cast<std::size_t>(std::min_element(curve.begin(), curve.end()) - curve.begin());
  HeightOptimum best{grid[best_i], curve[best_i]};

  std::map<double, double> memo;
  const auto eval = [&](double h) {
    auto it = memo.find(h);
    if (it != memo.end()) return it->second;
    const double f = outage_at(dep, spec.gamma_th, lambda, h, mc);
    memo.emplace(h, f);
    if (f < best.outage_star || (f == best.outage_star && h < best.h_star)) best = {h, f};
    return f;
  };

  double a = grid[best_i == 0 ? 0 : best_i - 1];
  double b = grid[std::min(best_i + 1, grid.size() - 1)];
  double c = b - (b - a) / kGoldenRatio;
  double d = a + (b - a) / kGoldenRatio;
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > spec.refine_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) / kGoldenRatio;
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) / kGoldenRatio;
      fd = eval(d);
    }
  }
  return best;
}

ContourGrid sweep_contour(const Deployment& dep, double gamma_th, std::vector<double> lambda_axis,
                          std::vector<double> height_axis, const MonteCarloSettings& mc) {
  if (lambda_axis.empty() || height_axis.empty()) throw std::invalid_argument("contour axes must be non-empty");
  if (!std::is_sorted(lambda_axis.begin(), lambda_axis.end()) ||
      !std::is_sorted(height_axis.begin(), height_axis.end()))
    throw std::invalid_argument("contour axes must be sorted ascending");
  ContourGrid grid;
  grid.outage = outage_lattice(dep, gamma_th, lambda_axis, height_axis, mc);
  grid.lambda_axis = std::move(lambda_axis);
  grid.height_axis = std::move(height_axis);
  return grid;
}

std::optional<DensityRequirement> min_density_for_outage(const ContourGrid& grid, double target) {
  for (std::size_t k = 0; k < grid.lambda_axis.size(); ++k) {
    const auto& row = grid.outage[k];
    if (row.empty()) continue;
    const auto it = std::min_element(row.begin(), row.end());
    if (*it <= target) {
      const auto j = static_cast<std::size_t>(it - row.begin());
      return DensityRequirement{grid.lambda_axis[k], grid.height_axis[j], *it};
    }
  }
  return std::nullopt;
}

}  // namespace uavnet

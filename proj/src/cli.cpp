#include "uavnet/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "uavnet/connectivity.hpp"
#include "uavnet/optimize.hpp"
#include "uavnet/oracle.hpp"
#include "uavnet/parallel.hpp"

#ifndef UAVNET_BUILD_VERSION
#define UAVNET_BUILD_VERSION "unknown"
#endif

namespace uavnet::cli {

namespace {

constexpr double kPerKm2 = 1e-6;  // per km^2 -> per m^2

using Cell = std::variant<double, std::int64_t, bool, std::string>;
using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json extra = Json::object();
};

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_number(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else return std::to_string(v);
      },
      cell);
}

Json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return Json(v); }, cell);
}

// Inclusive arithmetic axis, computed as start + i*step to avoid drift.
std::vector<double> axis_values(double start, double stop, double step, const char* what) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError(std::string(what) + " step must be positive");
  if (!(stop >= start)) throw ConfigError(std::string(what) + " range is empty");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + 1e-9 * std::max(1.0, std::abs(stop))) break;
    out.push_back(v);
  }
  return out;
}

Deployment deployment(const JobSpec& job) { return {job.city(), job.r_max, job.h_v}; }

MonteCarloSettings monte_carlo(const JobSpec& job) { return {job.n_realizations, job.seed, job.workers}; }

std::vector<double> height_axis(const JobSpec& job, double default_lo, double default_hi) {
  return axis_values(job.h_min.value_or(default_lo), job.h_max.value_or(default_hi), job.h_step, "height");
}

Table run_distribution(const JobSpec& job) {
  ScenarioConfig cfg;
  cfg.city = job.city();
  cfg.radio = {job.r_max, job.h_uav, job.h_v, job.lambda_per_km2 * kPerKm2};
  cfg.n_realizations = job.n_realizations;
  cfg.seed = job.seed;
  cfg.workers = job.workers;
  auto est = estimate_distribution(cfg);
  const auto mix = mixture_cdf(std::move(*est.intersection), std::move(*est.street), cfg.city);

  Table t{{"gamma", "F_intersection", "F_street", "F_mixture"}, {}, Json::object()};
  const auto last = static_cast<double>(job.gamma_points - 1);
  for (std::size_t i = 0; i < job.gamma_points; ++i) {
    const double g = static_cast<double>(i) / last;
    t.rows.push_back({g, mix.intersection()(g), mix.street()(g), mix(g)});
  }
  t.extra["outage"] = outage(mix, job.gamma_th);
  t.extra["intersection_weight"] = mix.weight();
  return t;
}

Table run_outage_curve(const JobSpec& job) {
  const auto heights = height_axis(job, 20.0, 250.0);
  const auto curve = outage_curve(deployment(job), job.gamma_th, job.lambda_per_km2 * kPerKm2, heights,
                                  monte_carlo(job));
  Table t{{"h_uav_m", "outage"}, {}, Json::object()};
  for (std::size_t j = 0; j < heights.size(); ++j) t.rows.push_back({heights[j], curve[j]});
  return t;
}

Table run_optimize(const JobSpec& job) {
  const auto dep = deployment(job);
  auto spec = HeightSearchSpec::full_range(dep, job.gamma_th);
  if (job.h_min) spec.h_lo = *job.h_min;
  if (job.h_max) spec.h_hi = *job.h_max;
  spec.grid_step = job.h_step;
  spec.refine_tol = job.refine_tol;
  const auto best = optimize_height(dep, job.lambda_per_km2 * kPerKm2, spec, monte_carlo(job));
  Table t{{"lambda_per_km2", "h_star_m", "outage_star"}, {}, Json::object()};
  t.rows.push_back({job.lambda_per_km2, best.h_star, best.outage_star});
  return t;
}

Table run_contour(const JobSpec& job) {
  const auto lambdas = axis_values(job.lambda_min, job.lambda_max, job.lambda_step, "density");
  const auto heights = height_axis(job, 50.0, 250.0);
  std::vector<double> lambda_axis;
  for (double l : lambdas) lambda_axis.push_back(l * kPerKm2);
  const auto grid = sweep_contour(deployment(job), job.gamma_th, lambda_axis, heights, monte_carlo(job));

  Table t{{"lambda_per_km2", "h_uav_m", "outage"}, {}, Json::object()};
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    for (std::size_t j = 0; j < heights.size(); ++j) t.rows.push_back({lambdas[k], heights[j], grid.outage[k][j]});
  if (job.target) {
    const auto req = min_density_for_outage(grid, *job.target);
    Json r = {{"target", *job.target}, {"feasible", req.has_value()}};
    if (req) {
      const auto k = static_cast<std::size_t>(
          std::find(lambda_axis.begin(), lambda_axis.end(), req->lambda_min) - lambda_axis.begin());
      r["lambda_min_per_km2"] = lambdas[k];
      r["h_at_min_m"] = req->h_at_min;
      r["outage"] = req->outage;
    }
    t.extra["min_density"] = r;
  }
  return t;
}

struct ValidationCase {
  double d = 0.0;
  double phi = 0.0;
  Placement placement = Placement::Intersection;
  double p_analytic = 0.0;
  oracle::EmpiricalLos empirical;
  bool pass = false;
};

// Draw on the open interval (lo, hi).
double open_uniform(RandomStream& rng, double lo, double hi) {
  double u = 0.0;
  while (u == 0.0) u = rng.uniform();
  return lo + (hi - lo) * u;
}

Table run_validate(const JobSpec& job, bool& all_ok) {
  constexpr Preset kPresets[] = {Preset::Suburban, Preset::Urban, Preset::DenseUrban};
  constexpr double kMinDistance = 10.0;
  std::vector<ValidationCase> cases(job.cases);
  std::vector<Preset> presets(job.cases);
  const double h_span = std::sqrt(job.r_max * job.r_max - kMinDistance * kMinDistance);

  parallel_chunks(job.cases, job.workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      auto rng = RandomStream::keyed({job.seed, 0x76616c6964617465ULL, c});
      presets[c] = kPresets[std::min<std::size_t>(2, static_cast<std::size_t>(3.0 * rng.uniform()))];
      const auto city = make_city(presets[c]);
      auto& vc = cases[c];
      vc.placement = rng.uniform() < 0.5 ? Placement::Intersection : Placement::Street;
      const double h_uav = open_uniform(rng, job.h_v, job.h_v + h_span);
      const double d_max = ground_range({job.r_max, h_uav, job.h_v, 0.0});
      vc.d = open_uniform(rng, kMinDistance, d_max);
      vc.phi = open_uniform(rng, 0.0, 0.5 * std::numbers::pi);
      const LinkGeometry link(vc.d, vc.phi, h_uav, job.h_v);
      vc.p_analytic = los_probability(link, city, vc.placement);
      auto oracle_rng = RandomStream::keyed({job.seed, 0x6f7261636c65ULL, c});
      vc.empirical = oracle::empirical_los_probability(link, city, vc.placement, job.oracle_n, oracle_rng);
      // When the estimate saturates at 0 or 1 its own standard error is
      // zero; the standard error under the analytic value still applies.
      const double n = static_cast<double>(job.oracle_n);
      const double se = std::max(vc.empirical.se, std::sqrt(vc.p_analytic * (1.0 - vc.p_analytic) / n));
      vc.pass = std::abs(vc.p_analytic - vc.empirical.p_hat) <= 3.0 * se;
    }
  });

  Table t{{"case_id", "d_m", "phi_rad", "placement", "p_analytic", "p_oracle", "se", "pass"}, {}, Json::object()};
  std::size_t failures = 0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& vc = cases[c];
    failures += vc.pass ? 0 : 1;
    t.rows.push_back({static_cast<std::int64_t>(c), vc.d, vc.phi,
                      std::string(vc.placement == Placement::Intersection ? "intersection" : "street"),
                      vc.p_analytic, vc.empirical.p_hat, vc.empirical.se, vc.pass});
  }
  all_ok = failures <= job.max_outliers;
  t.extra["failures"] = failures;
  t.extra["max_outliers"] = job.max_outliers;
  t.extra["passed"] = all_ok;
  return t;
}

Json metadata(const JobSpec& job) {
  Json m;
  m["command"] = command_name(job.command);
  m["seed"] = job.seed;
  m["n_realizations"] = job.n_realizations;
  m["build"] = build_version();
  Json city;
  if (job.preset) {
    city["preset"] = *job.preset;
  } else {
    const auto c = job.city();
    city = {{"mu_s_m", c.mu_s}, {"mu_b_m", c.mu_b}, {"mu_h_m", c.mu_h}, {"w_v_m", c.w_v}, {"w_h_m", c.w_h}};
  }
  m["city"] = city;
  m["r_max_m"] = job.r_max;
  m["h_v_m"] = job.h_v;
  m["gamma_th"] = job.gamma_th;
  switch (job.command) {
    case Command::Distribution:
      m["h_uav_m"] = job.h_uav;
      m["lambda_per_km2"] = job.lambda_per_km2;
      break;
    case Command::OutageCurve:
    case Command::Optimize:
      m["lambda_per_km2"] = job.lambda_per_km2;
      break;
    case Command::Contour:
      m["lambda_min_per_km2"] = job.lambda_min;
      m["lambda_max_per_km2"] = job.lambda_max;
      m["lambda_step_per_km2"] = job.lambda_step;
      break;
    case Command::Validate:
      m["cases"] = job.cases;
      m["oracle_n"] = job.oracle_n;
      break;
  }
  return m;
}

void write_table(const JobSpec& job, const Table& t, std::ostream& out) {
  if (job.format == Format::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
      out << '\n';
    }
    return;
  }
  Json doc;
  doc["metadata"] = metadata(job);
  doc["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  for (const auto& [key, value] : t.extra.items()) doc[key] = value;
  out << doc.dump(2) << '\n';
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string_view build_version() { return UAVNET_BUILD_VERSION; }

std::string_view command_name(Command command) {
  switch (command) {
    case Command::Distribution:
      return "distribution";
    case Command::OutageCurve:
      return "outage-curve";
    case Command::Optimize:
      return "optimize";
    case Command::Contour:
      return "contour";
    case Command::Validate:
      return "validate";
  }
  return "unknown";
}

CityModel JobSpec::city() const {
  const bool any_explicit = mu_s || mu_b || mu_h || w_v || w_h;
  if (preset && any_explicit) throw ConfigError("--preset and explicit city parameters are mutually exclusive");
  CityModel c;
  if (any_explicit) {
    if (!mu_s || !mu_b || !mu_h) throw ConfigError("an explicit city needs --mu-s, --mu-b and --mu-h");
    try {
      c = make_city(*mu_s, *mu_b, *mu_h);
    } catch (const GeometryError& e) {
      throw ConfigError(e.what());
    }
    if (w_v) c.w_v = *w_v;
    if (w_h) c.w_h = *w_h;
  } else {
    const auto p = parse_preset(preset.value_or("urban"));
    if (!p) throw ConfigError("unknown preset '" + *preset + "' (expected suburban, urban or dense-urban)");
    c = make_city(*p);
  }
  try {
    c.validate();
  } catch (const GeometryError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

void JobSpec::validate() const {
  (void)city();
  const auto check = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
  };
  check(std::isfinite(r_max) && r_max > 0.0, "--r-max must be positive");
  check(std::isfinite(h_v) && h_v >= 0.0, "--h-v must be non-negative");
  check(std::isfinite(lambda_per_km2) && lambda_per_km2 >= 0.0, "--lambda-uav must be non-negative");
  check(gamma_th >= 0.0 && gamma_th <= 1.0, "--gamma-th must lie in [0, 1]");
  check(n_realizations >= 1, "--n-realizations must be at least 1");
  check(gamma_points >= 2, "--gamma-points must be at least 2");
  check(h_step > 0.0, "--h-step must be positive");
  check(refine_tol > 0.0, "--refine-tol must be positive");
  check(!target || (*target >= 0.0 && *target <= 1.0), "--target must lie in [0, 1]");
  check(oracle_n >= 1, "--oracle-n must be at least 1");
  if (command == Command::Distribution) {
    check(h_uav > h_v, "--h-uav must exceed --h-v");
    check(r_max > h_uav - h_v, "--r-max must exceed h_uav - h_v");
  }
  if (command == Command::Validate) check(r_max > 10.0, "--r-max must exceed the 10 m minimum link distance");
}

int run(const JobSpec& job, std::ostream& out) {
  job.validate();
  bool ok = true;
  Table table;
  switch (job.command) {
    case Command::Distribution:
      table = run_distribution(job);
      break;
    case Command::OutageCurve:
      table = run_outage_curve(job);
      break;
    case Command::Optimize:
      table = run_optimize(job);
      break;
    case Command::Contour:
      table = run_contour(job);
      break;
    case Command::Validate:
      table = run_validate(job, ok);
      break;
  }
  if (job.output.empty()) {
    write_table(job, table, out);
  } else {
    std::ofstream file(job.output, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file " + job.output);
    write_table(job, table, file);
  }
  return ok ? kExitOk : kExitValidationFailed;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  JobSpec job;
  CLI::App app{"Connectivity and altitude optimization for mmWave UAV networks in grid cities", "uavnet"};
  app.set_config("--config", "", "Key-value configuration file (flags override it)")->envname("UAVNET_CONFIG");
  app.require_subcommand(1, 1);

  auto* preset = app.add_option("--preset", job.preset, "City preset: suburban, urban or dense-urban");
  const std::vector<CLI::Option*> explicit_city{
      app.add_option("--mu-s", job.mu_s, "Mean street width (m)"),
      app.add_option("--mu-b", job.mu_b, "Mean block length (m)"),
      app.add_option("--mu-h", job.mu_h, "Mean building height (m)"),
      app.add_option("--w-v", job.w_v, "North-south street width (m), default mu-s"),
      app.add_option("--w-h", job.w_h, "East-west street width (m), default mu-s"),
  };
  for (auto* opt : explicit_city) preset->excludes(opt);

  app.add_option("--r-max", job.r_max, "Maximum 3D range (m)")->capture_default_str();
  app.add_option("--h-v", job.h_v, "Vehicle antenna height (m)")->capture_default_str();
  app.add_option("--h-uav", job.h_uav, "UAV altitude (m)")->capture_default_str();
  app.add_option("--lambda-uav", job.lambda_per_km2, "UAV density (per km^2)")->capture_default_str();
  app.add_option("--gamma-th", job.gamma_th, "Connectivity threshold")->capture_default_str();
  app.add_option("--seed", job.seed, "Random seed")->capture_default_str();
  app.add_option("--n-realizations", job.n_realizations, "Monte Carlo constellations")->capture_default_str();
  app.add_option("--workers", job.workers, "Worker threads (0 = all cores); never changes results")
      ->capture_default_str();
  app.add_option("--gamma-points", job.gamma_points, "Threshold grid points for distribution output")
      ->capture_default_str();
  app.add_option("--h-min", job.h_min, "Lowest altitude of a sweep (m)");
  app.add_option("--h-max", job.h_max, "Highest altitude of a sweep (m)");
  app.add_option("--h-step", job.h_step, "Altitude grid step (m)")->capture_default_str();
  app.add_option("--refine-tol", job.refine_tol, "Altitude refinement tolerance (m)")->capture_default_str();
  app.add_option("--lambda-min", job.lambda_min, "Lowest contour density (per km^2)")->capture_default_str();
  app.add_option("--lambda-max", job.lambda_max, "Highest contour density (per km^2)")->capture_default_str();
  app.add_option("--lambda-step", job.lambda_step, "Contour density step (per km^2)")->capture_default_str();
  app.add_option("--target", job.target, "Outage target for the minimum-density report");
  app.add_option("--cases", job.cases, "Validation cases")->capture_default_str();
  app.add_option("--n,--oracle-n", job.oracle_n, "Oracle city draws per validation case")->capture_default_str();
  app.add_option("--max-outliers", job.max_outliers, "Validation cases allowed outside 3 sigma")
      ->capture_default_str();
  app.add_option("--output,-o", job.output, "Output path (default stdout)");
  app.add_option("--format", job.format, "Output format: csv or structured")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv},
                                                                        {"structured", Format::Structured}}));

  const std::pair<const char*, Command> commands[] = {
      {"distribution", Command::Distribution}, {"outage-curve", Command::OutageCurve},
      {"optimize", Command::Optimize},         {"contour", Command::Contour},
      {"validate", Command::Validate},
  };
  const char* help[] = {
      "Connectivity CDF at intersections, on streets and mixed",
      "Outage versus UAV altitude at one density",
      "Outage-minimizing UAV altitude",
      "Outage over a density x altitude grid",
      "Check closed-form LoS probabilities against an explicit-city oracle",
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->fallthrough();
    sub->callback([&job, cmd = commands[i].second] { job.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    return run(job, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace uavnet::cli

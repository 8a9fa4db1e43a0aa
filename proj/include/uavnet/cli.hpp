#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavnet/geometry.hpp"

namespace uavnet::cli {

/// Bad user input: units, ranges or conflicting options.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Distribution, OutageCurve, Optimize, Contour, Validate };
enum class Format { Csv, Structured };

/// One batch job in user units (metres, UAVs per km^2).
struct JobSpec {
  Command command = Command::Distribution;

  std::optional<std::string> preset;
  std::optional<double> mu_s, mu_b, mu_h, w_v, w_h;

  double r_max = 250.0;
  double h_v = 10.0;
  double h_uav = 100.0;
  double lambda_per_km2 = 20.0;
  double gamma_th = 0.8;

  std::uint64_t seed = 1;
  std::size_t n_realizations = 100000;
  unsigned workers = 1;

  std::size_t gamma_points = 101;

  std::optional<double> h_min, h_max;
  double h_step = 5.0;
  double refine_tol = 1.0;

  double lambda_min = 5.0;
  double lambda_max = 50.0;
  double lambda_step = 1.0;
  std::optional<double> target;

  std::size_t cases = 200;
  std::size_t oracle_n = 100000;
  std::size_t max_outliers = 2;

  std::string output;  ///< empty writes to stdout
  Format format = Format::Csv;

  /// Resolved city after preset/explicit handling.
  CityModel city() const;
  void validate() const;
};

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidationFailed = 3;

/// Executes a job and writes its table. Returns an exit status.
int run(const JobSpec& job, std::ostream& out);

/// Full command-line entry point: parse, validate, run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string_view command_name(Command command);

/// Shortest round-trip decimal text for a double.
std::string format_number(double value);

/// Build identifier recorded in structured output.
std::string_view build_version();

}  // namespace uavnet::cli

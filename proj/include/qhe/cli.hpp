#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qhe/errors.hpp"
#include "qhe/physics.hpp"

namespace qhe::cli {

inline constexpr const char* kToolName = "qhe";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Subcommand { spectrum, crossings, iso_cycle, iso_sweep, carnot, carnot_sweep, magnetization };

std::string to_string(Subcommand sub);

/// Bad flags, unreadable config file or out-of-range settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Field values are b = omega_B/omega_d in dimensionless mode and tesla in SI
// mode; temperatures are k_B T/(hbar omega_d) or kelvin respectively.

struct SpectrumOptions {
  double b_min = 0.0;
  double b_max = 5.0;
  std::size_t b_count = 101;
  int max_n_rho = 3;
  int max_abs_m = 3;
};

struct CrossingOptions {
  double b_min = 0.0;
  double b_max = 10.0;
  double step = 0.01;
  int max_n_rho = 3;
  int max_abs_m = 3;
};

struct IsoCycleOptions {
  double n_phi1 = 10.0;
  double alpha = 2.0;
};

struct IsoSweepOptions {
  std::vector<double> n_phi1{3.0, 5.0, 10.0, 30.0, 100.0};
  double alpha_min = 1.0;
  double alpha_max = 10.0;
  std::size_t alpha_count = 91;
};

struct CarnotOptions {
  double b1 = 2.0;
  double b2 = 1.0;
  double t_hot = 2.0;
  double t_cold = 1.0;
  std::size_t grid_count = 400;
  double grid_min = 1e-4;
  double grid_max = 1e4;
};

struct CarnotSweepOptions {
  CarnotOptions cycle{};
  double ratio_min = 0.1;
  double ratio_max = 0.95;
  std::size_t ratio_count = 18;
};

struct MagnetizationOptions {
  std::vector<double> temperatures{0.25, 0.5, 1.0, 2.0};
  double b_min = 0.0;
  double b_max = 10.0;
  std::size_t b_count = 101;
  bool loop = true;
  CarnotOptions cycle{};
  std::size_t loop_points = 50;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::spectrum;
  UnitMode unit_mode = UnitMode::dimensionless;
  std::string material = "gaas";
  double l_d_nm = 70.0;
  std::string out = "-";
  int precision = 17;
  int threads = 0;
  bool serial = false;

  SpectrumOptions spectrum;
  CrossingOptions crossings;
  IsoCycleOptions iso_cycle;
  IsoSweepOptions iso_sweep;
  CarnotOptions carnot;
  CarnotSweepOptions carnot_sweep;
  MagnetizationOptions magnetization;

  /// Material parameters used for SI conversion (dimensionless params otherwise).
  PhysicalParams physical_params() const;
  void validate() const;
};

/// Parses command-line tokens (program name excluded). A `--config <path>`
/// file of `key = value` lines supplies defaults; explicit flags win.
RunConfig parse_args(const std::vector<std::string>& args);

struct CommandResult {
  std::string csv;
  /// 0 all rows ok, 2 some rows failed or exceeded residual tolerances.
  int exit_code = 0;
  std::vector<std::string> diagnostics;
};

CommandResult execute(const RunConfig& config);

/// Full pipeline: parse, execute, write CSV to --out (or `out` for "-"),
/// diagnostics to `err`. Returns the process exit code (1 on fatal errors).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhe::cli

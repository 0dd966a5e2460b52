#include "qhe/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "qhe/carnot.hpp"
#include "qhe/isoenergetic.hpp"
#include "qhe/kernels.hpp"

namespace qhe::cli {

namespace {

struct HelpRequested {
  std::string text;
};

constexpr std::pair<Subcommand, const char*> kSubcommandNames[] = {
    {Subcommand::spectrum, "spectrum"},       {Subcommand::crossings, "crossings"},
    {Subcommand::iso_cycle, "iso-cycle"},     {Subcommand::iso_sweep, "iso-sweep"},
    {Subcommand::carnot, "carnot"},           {Subcommand::carnot_sweep, "carnot-sweep"},
    {Subcommand::magnetization, "magnetization"},
};

// ---------------------------------------------------------------------------
// parsing helpers

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw ConfigError(flag + ": not a number: '" + token + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(flag + ": empty list");
  return out;
}

/// `key = value` lines; '#' or ';' start comments.
std::vector<std::string> read_config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty() || key == "config") continue;
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

std::string find_config_path(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

void add_cycle_options(CLI::App* sub, CarnotOptions& c) {
  sub->add_option("--b1", c.b1, "isothermal leg start field");
  sub->add_option("--b2", c.b2, "isothermal leg end field");
  sub->add_option("--t-hot", c.t_hot, "hot reservoir temperature");
  sub->add_option("--t-cold", c.t_cold, "cold reservoir temperature");
  sub->add_option("--grid-count", c.grid_count, "entropy-match scan points");
  sub->add_option("--grid-min", c.grid_min, "entropy-match scan lower field (b units)");
  sub->add_option("--grid-max", c.grid_max, "entropy-match scan upper field (b units)");
}

// ---------------------------------------------------------------------------
// output helpers

std::string num(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string num(int v) { return std::to_string(v); }

class CsvBuilder {
 public:
  explicit CsvBuilder(int precision) : precision_(precision) {}

  void comment(const std::string& text) { os_ << "# " << text << '\n'; }
  void comment(const std::string& key, double value) { comment(key + ": " + num(value, precision_)); }
  void header(const std::vector<std::string>& cols) { line(cols); }
  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(num(v, precision_));
    line(cells);
  }
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }
  std::string fmt(double v) const { return num(v, precision_); }
  std::string str() const { return os_.str(); }

 private:
  int precision_;
  std::ostringstream os_;
};

/// Converts user-facing field/temperature values to reduced units.
struct UnitConverter {
  PhysicalParams phys;
  bool si;

  double field(double v) const { return si ? v / phys.field_unit() : v; }
  double temperature(double v) const { return si ? phys.k_B * v / phys.energy_unit() : v; }
};

UnitConverter converter(const RunConfig& cfg) {
  return {cfg.physical_params(), cfg.unit_mode == UnitMode::si};
}

void write_preamble(CsvBuilder& csv, const RunConfig& cfg) {
  csv.comment(std::string(kToolName) + " " + kToolVersion);
  csv.comment("subcommand: " + to_string(cfg.subcommand));
  csv.comment("units: " + qhe::to_string(cfg.unit_mode));
  if (cfg.unit_mode == UnitMode::si) {
    const auto p = cfg.physical_params();
    csv.comment("material: " + cfg.material);
    csv.comment("m_star_kg", p.m_star);
    csv.comment("l_d_nm", cfg.l_d_nm);
    csv.comment("hbar_omega_d_J", p.energy_unit());
    csv.comment("tesla_per_b", p.field_unit());
    csv.comment("kelvin_per_reduced_T", p.energy_unit() / p.k_B);
    csv.comment("inputs: fields in tesla, temperatures in kelvin; columns in reduced units");
  }
  csv.comment("energies in hbar*omega_d, fields as b = omega_B/omega_d, temperatures as k_B*T/(hbar*omega_d)");
}

std::vector<LevelIndex> levels_for(int max_n_rho, int max_abs_m) { return level_set(max_n_rho, max_abs_m); }

numerics::SolverSettings solver_for(const CarnotOptions& c) {
  numerics::SolverSettings s;
  s.bracket_grid.count = c.grid_count;
  s.bracket_grid.lo = c.grid_min;
  s.bracket_grid.hi = c.grid_max;
  return s;
}

CarnotSpec carnot_spec(const CarnotOptions& c, const UnitConverter& u) {
  CarnotSpec spec;
  spec.b1 = FieldPoint(u.field(c.b1));
  spec.b2 = FieldPoint(u.field(c.b2));
  spec.T_hot = u.temperature(c.t_hot);
  spec.T_cold = u.temperature(c.t_cold);
  spec.solver = solver_for(c);
  return spec;
}

void write_cycle_options(CsvBuilder& csv, const CarnotOptions& c) {
  csv.comment("b1", c.b1);
  csv.comment("b2", c.b2);
  csv.comment("t_hot", c.t_hot);
  csv.comment("t_cold", c.t_cold);
  csv.comment("grid_count", static_cast<double>(c.grid_count));
  csv.comment("grid_min", c.grid_min);
  csv.comment("grid_max", c.grid_max);
}

const std::vector<std::string> kCarnotColumns = {
    "b1", "b2", "b3", "b4", "T_hot", "T_cold", "Q_12", "W_12", "W_23", "Q_34", "W_34", "W_41",
    "S_1", "S_2", "S_3", "S_4", "eta_numeric", "eta_formula", "entropy_match_23", "entropy_match_41",
    "combined_condition", "first_law", "net_work", "heat_entropy_12", "heat_entropy_34",
    "efficiency_residual"};

std::vector<double> carnot_values(const CarnotReport& r) {
  const auto& s = r.residuals;
  return {r.b1.b(), r.b2.b(), r.b3.b(), r.b4.b(), r.T_hot, r.T_cold, r.Q_12, r.W_12, r.W_23,
          r.Q_34, r.W_34, r.W_41, r.S_1, r.S_2, r.S_3, r.S_4, r.eta_numeric, r.eta_formula,
          s.entropy_match_23, s.entropy_match_41, s.combined_condition, s.first_law, s.net_work,
          s.heat_entropy_12, s.heat_entropy_34, s.efficiency};
}

std::string describe(const CarnotSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "b1=" << s.b1.b() << " b2=" << s.b2.b() << " T_hot=" << s.T_hot << " T_cold=" << s.T_cold;
  return os.str();
}

// ---------------------------------------------------------------------------
// subcommands

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const auto& o = cfg.spectrum;
  const auto u = converter(cfg);
  CsvBuilder csv(cfg.precision);
  write_preamble(csv, cfg);
  csv.comment("b_min", o.b_min);
  csv.comment("b_max", o.b_max);
  csv.comment("b_count", static_cast<double>(o.b_count));
  csv.comment("max_n_rho: " + num(o.max_n_rho));
  csv.comment("max_abs_m: " + num(o.max_abs_m));

  const auto levels = levels_for(o.max_n_rho, o.max_abs_m);
  const auto grid = kernels::linear_grid(u.field(o.b_min), u.field(o.b_max), o.b_count);
  const auto rows = cfg.serial ? kernels::serial::spectrum(levels, grid) : kernels::omp::spectrum(levels, grid);
  csv.header({"b", "n_rho", "m", "E_over_hbar_omega_d"});
  for (const auto& r : rows) csv.line({csv.fmt(r.b), num(r.level.n_rho), num(r.level.m), csv.fmt(r.energy)});
  return {csv.str(), 0, {}};
}

CommandResult cmd_crossings(const RunConfig& cfg) {
  const auto& o = cfg.crossings;
  const auto u = converter(cfg);
  CsvBuilder csv(cfg.precision);
  write_preamble(csv, cfg);
  csv.comment("b_min", o.b_min);
  csv.comment("b_max", o.b_max);
  csv.comment("step", o.step);
  csv.comment("max_n_rho: " + num(o.max_n_rho));
  csv.comment("max_abs_m: " + num(o.max_abs_m));

  const auto levels = levels_for(o.max_n_rho, o.max_abs_m);
  CrossingSearch search{u.field(o.b_min), u.field(o.b_max), u.field(o.step)};
  const auto crossings = find_level_crossings(levels, search);
  csv.header({"n_rho_1", "m_1", "n_rho_2", "m_2", "b_star"});
  for (const auto& c : crossings) {
    csv.line({num(c.first.n_rho), num(c.first.m), num(c.second.n_rho), num(c.second.m), csv.fmt(c.b_star)});
  }
  return {csv.str(), 0, {}};
}

CommandResult cmd_iso_cycle(const RunConfig& cfg) {
  const auto& o = cfg.iso_cycle;
  CsvBuilder csv(cfg.precision);
  write_preamble(csv, cfg);
  csv.comment("N_phi1", o.n_phi1);
  csv.comment("alpha", o.alpha);
  csv.header({"N_phi1", "alpha", "alpha1", "alpha3", "b1", "b2", "b3", "b4", "Q_12", "W_12", "W_23", "Q_34",
              "W_34", "W_41", "Q_12_quadrature", "Q_34_quadrature", "eta", "eta_closed_form",
              "eta_asymptotic", "first_law_residual", "adiabatic_residual", "iso_energy_drift",
              "heat_oracle_residual"});
  CommandResult result;
  try {
    const auto r = run_iso_cycle({o.n_phi1, o.alpha, PhysicalParams::dimensionless()});
    csv.row({r.n_phi1, r.alpha, r.alpha1, r.alpha3, r.b1.b(), r.b2.b(), r.b3.b(), r.b4.b(), r.Q_12, r.W_12,
             r.W_23, r.Q_34, r.W_34, r.W_41, r.Q_12_quadrature, r.Q_34_quadrature, r.eta,
             efficiency(o.n_phi1, o.alpha), asymptotic_efficiency(o.alpha), r.residuals.first_law,
             r.residuals.adiabatic_cancellation, r.residuals.iso_energy_drift, r.residuals.heat_oracle});
    const auto& res = r.residuals;
    if (res.first_law > 1e-10 || res.adiabatic_cancellation > 1e-10 || res.iso_energy_drift > 1e-11 ||
        res.heat_oracle > 1e-8) {
      result.exit_code = 2;
      result.diagnostics.push_back("iso-cycle residuals exceed tolerance");
    }
  } catch (const Error& e) {
    result.exit_code = 2;
    result.diagnostics.push_back(std::string("iso-cycle: ") + e.what());
  }
  result.csv = csv.str();
  return result;
}

CommandResult cmd_iso_sweep(const RunConfig& cfg) {
  const auto& o = cfg.iso_sweep;
  CsvBuilder csv(cfg.precision);
  write_preamble(csv, cfg);
  std::string list;
  for (double n : o.n_phi1) list += (list.empty() ? "" : ",") + csv.fmt(n);
  csv.comment("N_phi1: " + list);
  csv.comment("alpha_min", o.alpha_min);
  csv.comment("alpha_max", o.alpha_max);
  csv.comment("alpha_count", static_cast<double>(o.alpha_count));

  const auto alphas = kernels::linear_grid(o.alpha_min, o.alpha_max, o.alpha_count);
  const auto rows = cfg.serial ? kernels::serial::iso_sweep(o.n_phi1, alphas)
                               : kernels::omp::iso_sweep(o.n_phi1, alphas);
  CommandResult result;
  csv.header({"N_phi1", "alpha", "eta", "eta_asymptotic", "first_law_residual"});
  for (const auto& r : rows) {
    if (!r.ok()) {
      result.diagnostics.push_back("row N_phi1=" + csv.fmt(r.n_phi1) + " alpha=" + csv.fmt(r.alpha) + ": " +
                                   r.error);
      continue;
    }
    csv.row({r.n_phi1, r.alpha, r.eta, r.eta_asymptotic, r.first_law_residual});
  }
  if (!result.diagnostics.empty()) result.exit_code = 2;
  result.csv = csv.str();
  return result;
}

CommandResult carnot_rows(const RunConfig& cfg, const CarnotOptions& cycle, std::vector<CarnotSpec> specs,
                          CsvBuilder& csv) {
  const auto rows = cfg.serial ? kernels::serial::carnot_sweep(specs) : kernels::omp::carnot_sweep(specs);
  CommandResult result;
  csv.header(kCarnotColumns);
  for (const auto& r : rows) {
    if (!r.ok()) {
      result.diagnostics.push_back("carnot " + describe(r.spec) + ": " + r.error);
      continue;
    }
    csv.row(carnot_values(r.report));
    if (!r.report.residuals.within_tolerance()) {
      result.diagnostics.push_back("carnot " + describe(r.spec) + ": residuals exceed tolerance");
    }
  }
  (void)cycle;
  if (!result.diagnostics.empty()) result.exit_code = 2;
  result.csv = csv.str();
  return result;
}

CommandResult cmd_carnot(const RunConfig& cfg) {
  CsvBuilder csv(cfg.precision);
  write_preamble(csv, cfg);
  write_cycle_options(csv, cfg.carnot);
  return carnot_rows(cfg, cfg.carnot, {carnot_spec(cfg.carnot, converter(cfg))}, csv);
}

CommandResult cmd_carnot_sweep(const RunConfig& cfg) {
  const auto& o = cfg.carnot_sweep;
  CsvBuilder csv(cfg.precision);
  write_preamble(csv, cfg);
  write_cycle_options(csv, o.cycle);
  csv.comment("ratio_min", o.ratio_min);
  csv.comment("ratio_max", o.ratio_max);
  csv.comment("ratio_count", static_cast<double>(o.ratio_count));
  const auto u = converter(cfg);
  std::vector<CarnotSpec> specs;
  for (double ratio : kernels::linear_grid(o.ratio_min, o.ratio_max, o.ratio_count)) {
    auto spec = carnot_spec(o.cycle, u);
    spec.T_cold = ratio * spec.T_hot;
    specs.push_back(spec);
  }
  return carnot_rows(cfg, o.cycle, std::move(specs), csv);
}

CommandResult cmd_magnetization(const RunConfig& cfg) {
  const auto& o = cfg.magnetization;
  const auto u = converter(cfg);
  const auto params = PhysicalParams::dimensionless();
  CsvBuilder csv(cfg.precision);
  write_preamble(csv, cfg);
  std::string list;
  for (double t : o.temperatures) list += (list.empty() ? "" : ",") + csv.fmt(t);
  csv.comment("temperatures: " + list);
  csv.comment("b_min", o.b_min);
  csv.comment("b_max", o.b_max);
  csv.comment("b_count", static_cast<double>(o.b_count));
  if (o.loop) {
    write_cycle_options(csv, o.cycle);
    csv.comment("loop_points", static_cast<double>(o.loop_points));
  }

  std::vector<double> temps;
  for (double t : o.temperatures) temps.push_back(u.temperature(t));
  const auto grid = kernels::linear_grid(u.field(o.b_min), u.field(o.b_max), o.b_count);
  const auto rows = cfg.serial ? kernels::serial::magnetization_grid(grid, temps, params)
                               : kernels::omp::magnetization_grid(grid, temps, params);
  CommandResult result;
  csv.header({"b", "T", "M_over_mu_B"});
  for (const auto& r : rows) csv.row({r.b, r.T, r.M});

  if (o.loop) {
    try {
      const auto spec = carnot_spec(o.cycle, u);
      const auto rep = run_carnot_cycle(spec);
      const auto isotherm = [&](FieldPoint from, FieldPoint to, double T, const std::string& label) {
        csv.comment("cycle leg " + label + ": isotherm T=" + csv.fmt(T));
        for (double b : kernels::linear_grid(from.b(), to.b(), o.loop_points)) {
          csv.row({b, T, magnetization(FieldPoint(b), 1.0 / T, params)});
        }
      };
      const auto isentrope = [&](FieldPoint from, FieldPoint to, double S, const std::string& label) {
        csv.comment("cycle leg " + label + ": isentrope S/k_B=" + csv.fmt(S));
        for (double b : kernels::linear_grid(from.b(), to.b(), o.loop_points)) {
          const double beta = isentrope_beta(FieldPoint(b), S, params);
          csv.row({b, 1.0 / beta, magnetization(FieldPoint(b), beta, params)});
        }
      };
      isotherm(rep.b1, rep.b2, rep.T_hot, "1-2");
      isentrope(rep.b2, rep.b3, rep.S_2, "2-3");
      isotherm(rep.b3, rep.b4, rep.T_cold, "3-4");
      isentrope(rep.b4, rep.b1, rep.S_1, "4-1");
    } catch (const Error& e) {
      result.exit_code = 2;
      result.diagnostics.push_back(std::string("magnetization loop: ") + e.what());
    }
  }
  result.csv = csv.str();
  return result;
}

}  // namespace

std::string to_string(Subcommand sub) {
  for (const auto& [s, name] : kSubcommandNames) {
    if (s == sub) return name;
  }
  return "unknown";
}

PhysicalParams RunConfig::physical_params() const {
  if (unit_mode == UnitMode::dimensionless) return PhysicalParams::dimensionless();
  return PhysicalParams::gaas(l_d_nm * 1e-9);
}

void RunConfig::validate() const {
  if (precision < 6 || precision > 17) throw ConfigError("--precision must lie in [6, 17]");
  if (!(l_d_nm > 0.0) || !std::isfinite(l_d_nm)) throw ConfigError("--ld must be > 0");
  if (material != "gaas") throw ConfigError("unknown material '" + material + "'");
  const auto range = [](double lo, double hi, const char* what) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || hi < lo) {
      throw ConfigError(std::string(what) + ": need finite 0 <= min <= max");
    }
  };
  const auto count = [](std::size_t n, const char* what) {
    if (n < 1) throw ConfigError(std::string(what) + " must be >= 1");
  };
  const auto cycle = [&](const CarnotOptions& c) {
    if (!(c.t_hot > 0.0) || !(c.t_cold > 0.0)) throw ConfigError("temperatures must be > 0");
    if (!(c.b1 >= 0.0) || !(c.b2 >= 0.0)) throw ConfigError("cycle fields must be >= 0");
    if (c.grid_count < 2 || !(c.grid_min > 0.0) || !(c.grid_max > c.grid_min)) {
      throw ConfigError("entropy scan grid needs count >= 2 and 0 < grid-min < grid-max");
    }
  };
  switch (subcommand) {
    case Subcommand::spectrum:
      range(spectrum.b_min, spectrum.b_max, "spectrum field range");
      count(spectrum.b_count, "--b-count");
      if (spectrum.max_n_rho < 0 || spectrum.max_abs_m < 0) throw ConfigError("level caps must be >= 0");
      break;
    case Subcommand::crossings:
      range(crossings.b_min, crossings.b_max, "crossing field range");
      if (!(crossings.step > 0.0)) throw ConfigError("--step must be > 0");
      if (crossings.max_n_rho < 0 || crossings.max_abs_m < 0) throw ConfigError("level caps must be >= 0");
      break;
    case Subcommand::iso_cycle:
      break;
    case Subcommand::iso_sweep:
      count(iso_sweep.alpha_count, "--alpha-count");
      if (!std::isfinite(iso_sweep.alpha_min) || !std::isfinite(iso_sweep.alpha_max)) {
        throw ConfigError("alpha range must be finite");
      }
      break;
    case Subcommand::carnot:
      cycle(carnot);
      break;
    case Subcommand::carnot_sweep:
      cycle(carnot_sweep.cycle);
      count(carnot_sweep.ratio_count, "--ratio-count");
      if (!(carnot_sweep.ratio_min > 0.0) || carnot_sweep.ratio_max > 1.0 ||
          carnot_sweep.ratio_max < carnot_sweep.ratio_min) {
        throw ConfigError("temperature ratio range must satisfy 0 < min <= max <= 1");
      }
      break;
    case Subcommand::magnetization:
      range(magnetization.b_min, magnetization.b_max, "magnetization field range");
      count(magnetization.b_count, "--b-count");
      for (double t : magnetization.temperatures) {
        if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("temperatures must be finite and > 0");
      }
      if (magnetization.loop) {
        cycle(magnetization.cycle);
        count(magnetization.loop_points, "--loop-points");
      }
      break;
  }
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Single-particle magnetic quantum heat engine: Landau spectrum, iso-energetic and Carnot cycles",
               kToolName};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string units = "dimensionless";
  std::string config_path;
  app.add_option("--units", units, "unit system for input values")
      ->check(CLI::IsMember({"dimensionless", "si"}));
  app.add_option("--material", cfg.material, "material preset (SI mode)")->check(CLI::IsMember({"gaas"}));
  app.add_option("--ld", cfg.l_d_nm, "geometric confinement length in nm (SI mode)");
  app.add_option("--out", cfg.out, "output CSV path, '-' for stdout");
  app.add_option("--config", config_path, "flat 'key = value' file supplying flag defaults");
  app.add_option("--precision", cfg.precision, "significant digits in CSV output")->check(CLI::Range(6, 17));
  app.add_option("--threads", cfg.threads, "OpenMP threads for sweeps (0 = runtime default)");
  app.add_flag("--serial", cfg.serial, "use the serial reference kernels");

  std::string iso_nphi_list = "3,5,10,30,100";
  std::string temperature_list = "0.25,0.5,1,2";

  auto* sp = app.add_subcommand("spectrum", "energy levels over a field grid");
  sp->add_option("--b-min", cfg.spectrum.b_min);
  sp->add_option("--b-max", cfg.spectrum.b_max);
  sp->add_option("--b-count", cfg.spectrum.b_count);
  sp->add_option("--max-n-rho", cfg.spectrum.max_n_rho);
  sp->add_option("--max-abs-m", cfg.spectrum.max_abs_m);

  auto* cr = app.add_subcommand("crossings", "degeneracies between levels");
  cr->add_option("--b-min", cfg.crossings.b_min);
  cr->add_option("--b-max", cfg.crossings.b_max);
  cr->add_option("--step", cfg.crossings.step, "scan step before root refinement");
  cr->add_option("--max-n-rho", cfg.crossings.max_n_rho);
  cr->add_option("--max-abs-m", cfg.crossings.max_abs_m);

  auto* ic = app.add_subcommand("iso-cycle", "one iso-energetic cycle with full leg report");
  ic->add_option("--nphi1", cfg.iso_cycle.n_phi1, "initial flux number N_Phi1 (> 2 sqrt 2)");
  ic->add_option("--alpha", cfg.iso_cycle.alpha, "expansion parameter (>= 1)");

  auto* is = app.add_subcommand("iso-sweep", "iso-energetic efficiency over N_Phi1 x alpha");
  is->add_option("--nphi1", iso_nphi_list, "comma-separated N_Phi1 values");
  is->add_option("--alpha-min", cfg.iso_sweep.alpha_min);
  is->add_option("--alpha-max", cfg.iso_sweep.alpha_max);
  is->add_option("--alpha-count", cfg.iso_sweep.alpha_count);

  auto* ca = app.add_subcommand("carnot", "one quantum Carnot cycle");
  add_cycle_options(ca, cfg.carnot);

  auto* cs = app.add_subcommand("carnot-sweep", "Carnot cycles over T_cold/T_hot");
  add_cycle_options(cs, cfg.carnot_sweep.cycle);
  cs->add_option("--ratio-min", cfg.carnot_sweep.ratio_min);
  cs->add_option("--ratio-max", cfg.carnot_sweep.ratio_max);
  cs->add_option("--ratio-count", cfg.carnot_sweep.ratio_count);

  auto* mg = app.add_subcommand("magnetization", "equation-of-state isotherms and the Carnot loop");
  mg->add_option("--temperatures", temperature_list, "comma-separated temperatures");
  mg->add_option("--b-min", cfg.magnetization.b_min);
  mg->add_option("--b-max", cfg.magnetization.b_max);
  mg->add_option("--b-count", cfg.magnetization.b_count);
  mg->add_option("--loop-points", cfg.magnetization.loop_points);
  bool no_loop = false;
  mg->add_flag("--no-loop", no_loop, "omit the Carnot-cycle M(B) loop");
  add_cycle_options(mg, cfg.magnetization.cycle);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  // Config-file tokens go right after the subcommand name so explicit flags,
  // which follow, take precedence under TakeLast.
  std::vector<std::string> ordered;
  std::vector<std::string> rest;
  std::string sub_token;
  for (const auto& a : args) {
    const bool is_sub = std::any_of(std::begin(kSubcommandNames), std::end(kSubcommandNames),
                                    [&](const auto& p) { return a == p.second; });
    if (is_sub && sub_token.empty()) {
      sub_token = a;
    } else {
      rest.push_back(a);
    }
  }
  if (!sub_token.empty()) ordered.push_back(sub_token);
  const std::string cfg_file = find_config_path(args);
  if (!cfg_file.empty()) {
    // One file may serve several subcommands: keys owned by another
    // subcommand are skipped, keys nobody owns are rejected.
    CLI::App* selected = sub_token.empty() ? nullptr : app.get_subcommand(sub_token);
    for (const auto& token : read_config_tokens(cfg_file)) {
      const std::string name = token.substr(0, token.find('='));
      if (app.get_option_no_throw(name) != nullptr ||
          (selected != nullptr && selected->get_option_no_throw(name) != nullptr)) {
        ordered.push_back(token);
        continue;
      }
      const auto subs = app.get_subcommands({});
      const bool owned = std::any_of(subs.begin(), subs.end(),
                                     [&](CLI::App* s) { return s->get_option_no_throw(name) != nullptr; });
      if (!owned) throw ConfigError(cfg_file + ": unknown key '" + name.substr(2) + "'");
    }
  }
  ordered.insert(ordered.end(), rest.begin(), rest.end());

  std::reverse(ordered.begin(), ordered.end());
  try {
    app.parse(ordered);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(kToolName) + " " + kToolVersion + "\n"};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  cfg.unit_mode = units == "si" ? UnitMode::si : UnitMode::dimensionless;
  for (const auto& [s, name] : kSubcommandNames) {
    if (app.got_subcommand(name)) cfg.subcommand = s;
  }
  cfg.iso_sweep.n_phi1 = parse_list(iso_nphi_list, "--nphi1");
  cfg.magnetization.temperatures = parse_list(temperature_list, "--temperatures");
  cfg.magnetization.loop = !no_loop;
  cfg.validate();
  return cfg;
}

CommandResult execute(const RunConfig& config) {
  config.validate();
  switch (config.subcommand) {
    case Subcommand::spectrum: return cmd_spectrum(config);
    case Subcommand::crossings: return cmd_crossings(config);
    case Subcommand::iso_cycle: return cmd_iso_cycle(config);
    case Subcommand::iso_sweep: return cmd_iso_sweep(config);
    case Subcommand::carnot: return cmd_carnot(config);
    case Subcommand::carnot_sweep: return cmd_carnot_sweep(config);
    case Subcommand::magnetization: return cmd_magnetization(config);
  }
  throw ConfigError("unknown subcommand");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  kernels::set_threads(cfg.threads);
  CommandResult result;
  try {
    result = execute(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (cfg.out == "-") {
    out << result.csv;
    out.flush();
    if (!out) {
      err << "error: failed writing to stdout\n";
      return 1;
    }
  } else {
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file '" << cfg.out << "'\n";
      return 1;
    }
    file << result.csv;
    file.close();
    if (!file) {
      err << "error: failed writing '" << cfg.out << "'\n";
      return 1;
    }
  }
  for (const auto& d : result.diagnostics) err << d << '\n';
  return result.exit_code;
}

}  // namespace qhe::cli

#include "casimir/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "casimir/app/config.hpp"
#include "casimir/app/report.hpp"
#include "casimir/engine.hpp"
#include "casimir/errors.hpp"
#include "casimir/limits.hpp"

namespace casimir::app {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  double temperature = 0.0;
  double rel_tol = 0.0;
  std::string q_cutoff;
  int matsubara_terms = 0;
  std::string zero_term_policy;
  std::string method;
  bool quiet = false;

  CLI::Option* temperature_opt = nullptr;
  CLI::Option* rel_tol_opt = nullptr;
  CLI::Option* matsubara_opt = nullptr;
};

enum Flags : unsigned {
  with_config = 1u << 0,
  with_physics = 1u << 1,  // temperature, policy, method, q cutoff, Matsubara terms
};

void add_common(CLI::App* sub, Options& o, unsigned flags, bool config_required) {
  if (flags & with_config) {
    auto* c = sub->add_option("--config", o.config_path, "Config file (sectioned text or JSON)");
    if (config_required) c->required();
  }
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_path, "Output file (default: [output] targets, else stdout)");
  o.rel_tol_opt = sub->add_option("--rel-tol", o.rel_tol, "Relative quadrature tolerance");
  if (flags & with_physics) {
    o.temperature_opt = sub->add_option("--temperature", o.temperature, "Temperature in K");
    sub->add_option("--q-cutoff", o.q_cutoff, "Transverse wavenumber cutoff in 1/m, or none");
    o.matsubara_opt = sub->add_option("--matsubara-terms", o.matsubara_terms,
                                      "Maximum number of Matsubara terms");
    sub->add_option("--zero-term-policy", o.zero_term_policy,
                    "half-weight, drop or custom:<N/m^2>");
    sub->add_option("--method", o.method,
                    "exact-difference, direct-difference or minkowski");
  }
  sub->add_flag("--quiet", o.quiet, "No summary on stderr");
}

template <class F>
auto config_guard(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void apply_overrides(RunConfig& cfg, const Options& o) {
  if (o.temperature_opt && o.temperature_opt->count()) {
    if (!(o.temperature >= 0.0)) throw ConfigError("--temperature must be >= 0");
    cfg.temperature = o.temperature;
  }
  if (o.rel_tol_opt && o.rel_tol_opt->count()) cfg.quadrature.rel_tol = o.rel_tol;
  if (!o.q_cutoff.empty()) {
    if (o.q_cutoff == "none") {
      cfg.quadrature.q_cutoff.reset();
    } else {
      try {
        std::size_t used = 0;
        cfg.quadrature.q_cutoff = std::stod(o.q_cutoff, &used);
        if (used != o.q_cutoff.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ConfigError("--q-cutoff expects a number or none");
      }
    }
  }
  if (o.matsubara_opt && o.matsubara_opt->count()) cfg.quadrature.matsubara_max_terms = o.matsubara_terms;
  if (!o.zero_term_policy.empty()) {
    cfg.zero_term_policy = config_guard([&] { return parse_zero_term_policy(o.zero_term_policy); });
  }
  if (!o.method.empty()) cfg.method = config_guard([&] { return parse_force_method(o.method); });
  config_guard([&] {
    cfg.quadrature.validate();
    return 0;
  });
}

RunConfig load(const Options& o) {
  RunConfig cfg = o.config_path.empty() ? default_config() : load_config(o.config_path);
  apply_overrides(cfg, o);
  return cfg;
}

// Reproducibility metadata carried by every row.
void metadata_columns(Table& t) {
  for (const char* c : {"rel_tol", "abs_floor", "max_subdivisions", "q_cutoff[1/m]",
                        "matsubara_terms", "matsubara_tail", "zero_term_policy"}) {
    t.columns.emplace_back(c);
  }
}

void append_metadata(std::vector<Cell>& row, const RunConfig& cfg) {
  const QuadratureSpec& q = cfg.quadrature;
  row.emplace_back(q.rel_tol);
  row.emplace_back(q.abs_floor);
  row.emplace_back(static_cast<long>(q.max_subdivisions));
  if (q.q_cutoff) {
    row.emplace_back(*q.q_cutoff);
  } else {
    row.emplace_back(std::string("none"));
  }
  row.emplace_back(static_cast<long>(q.matsubara_max_terms));
  row.emplace_back(std::string(to_string(q.matsubara_tail)));
  row.emplace_back(cfg.zero_term_policy ? to_string(*cfg.zero_term_policy) : std::string("default"));
}

void write_table(std::ostream& out, const std::string& format, const std::string& command,
                 const RunConfig& cfg, const Table& table) {
  if (format == "json") {
    out << report_json(command, to_json(cfg), table).dump(2) << '\n';
  } else {
    write_csv(out, table);
  }
}

void emit(const Options& o, const std::string& command, const RunConfig& cfg, const Table& table,
          std::ostream& out) {
  auto to_file = [&](const std::string& path, const std::string& format) {
    std::ofstream file(path);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    write_table(file, format, command, cfg, table);
  };
  if (!o.out_path.empty()) {
    to_file(o.out_path, o.format);
  } else if (!cfg.outputs.empty()) {
    for (const OutputTarget& target : cfg.outputs) to_file(target.path, target.format);
  } else {
    write_table(out, o.format, command, cfg, table);
  }
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

ForceResult compute_force(const CavityConfig& cavity, const RunConfig& cfg, bool cross_check) {
  if (cross_check) return cross_checked_plate_force(cavity, cfg.quadrature, cfg.thermal());
  if (cfg.method == ForceMethod::minkowski) {
    return minkowski_plate_force(cavity, cfg.quadrature, cfg.thermal());
  }
  return plate_force(cavity, cfg.quadrature, cfg.thermal(), cfg.method);
}

void force_columns(Table& t) {
  for (const char* c : {"force_per_area[N/m^2]", "error_estimate[N/m^2]", "force_s[N/m^2]",
                        "force_p[N/m^2]", "method", "converged", "evaluations", "temperature[K]",
                        "d1[m]", "d3[m]", "diagnostic"}) {
    t.columns.emplace_back(c);
  }
  metadata_columns(t);
}

std::vector<Cell> force_row(const ForceResult& r, const CavityConfig& cavity, const RunConfig& cfg) {
  std::vector<Cell> row{r.force_per_area,
                        r.error_estimate,
                        r.per_polarization.s,
                        r.per_polarization.p,
                        std::string(to_string(r.method)),
                        r.converged,
                        r.evaluations,
                        r.temperature,
                        cavity.gap1.width,
                        cavity.gap3.width,
                        r.diagnostic};
  append_metadata(row, cfg);
  return row;
}

int cmd_force(const Options& o, bool cross_check, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load(o);
  const CavityConfig cavity = build_cavity(cfg);
  const ForceResult r = compute_force(cavity, cfg, cross_check);

  Table t;
  force_columns(t);
  t.add_row(force_row(r, cavity, cfg));
  emit(o, "force", cfg, t, out);

  if (!o.quiet) {
    err << "force per area: " << sci(r.force_per_area) << " +/- " << sci(r.error_estimate)
        << " N/m^2 (" << to_string(r.method) << ", T = " << r.temperature << " K"
        << (cross_check ? ", cross-checked" : "") << ")\n";
  }
  if (!r.converged) {
    err << "not converged: " << (r.diagnostic.empty() ? "error above tolerance" : r.diagnostic)
        << '\n';
    return exit_convergence;
  }
  return exit_ok;
}

int cmd_stress_profile(const Options& o, int samples, std::ostream& out, std::ostream& err) {
  if (samples < 2) throw UsageError("--z-samples must be >= 2 interior points");
  const RunConfig cfg = load(o);
  const TwoWallSetup setup = build_two_wall(cfg);
  const InterspaceView view = setup.view();
  const StressProfile profile =
      stress_profile(view, interior_grid(setup.width, samples), cfg.quadrature, cfg.thermal());

  Table t;
  for (const char* c : {"z[m]", "T_zz[N/m^2]", "error_estimate[N/m^2]", "converged",
                        "evaluations", "temperature[K]", "width[m]", "diagnostic"}) {
    t.columns.emplace_back(c);
  }
  metadata_columns(t);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < profile.z.size(); ++k) {
    const StressValue& s = profile.samples[k];
    std::vector<Cell> row{profile.z[k], s.t_zz,          s.error_estimate, s.converged,
                          s.evaluations, cfg.temperature, setup.width,      s.diagnostic};
    append_metadata(row, cfg);
    t.add_row(std::move(row));
    if (std::isfinite(s.t_zz)) {
      lo = std::min(lo, s.t_zz);
      hi = std::max(hi, s.t_zz);
    }
  }
  emit(o, "stress-profile", cfg, t, out);

  int unconverged = 0;
  for (std::size_t k = 0; k < profile.samples.size(); ++k) {
    if (profile.samples[k].converged) continue;
    ++unconverged;
    err << "sample z = " << sci(profile.z[k]) << " m not converged: "
        << profile.samples[k].diagnostic << '\n';
  }
  if (!o.quiet) {
    err << "T_zz over " << samples << " interior points: min " << sci(lo) << ", max " << sci(hi)
        << " N/m^2\n";
  }
  return unconverged ? exit_convergence : exit_ok;
}

struct CompareOptions {
  double n_min = 1.0;
  double n_max = 5.0;
  int points = 41;
  std::vector<double> eps;
  double mu = 1.0;
  double d1 = 1e-6;
  std::string d3 = "inf";
  bool quadrature = false;
  CLI::Option* d1_opt = nullptr;
  CLI::Option* d3_opt = nullptr;
};

double parse_length(const std::string& text, const char* name) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && v > 0.0) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(name) + " expects a positive length in m, or inf");
}

std::vector<double> grid(double from, double to, int points, bool log) {
  if (points < 2 || !(to > from) || !std::isfinite(from) || !std::isfinite(to)) {
    throw UsageError("empty range: need --to > --from and --points >= 2");
  }
  if (log && !(from > 0.0)) throw UsageError("--log needs a positive range");
  std::vector<double> v(points);
  for (int k = 0; k < points; ++k) {
    const double f = static_cast<double>(k) / (points - 1);
    v[k] = log ? std::exp(std::log(from) + f * (std::log(to) - std::log(from)))
               : from + f * (to - from);
  }
  v.back() = to;
  return v;
}

CavityConfig mirror_cavity(const DispersionModel& medium, double d1, double d3) {
  return CavityConfig{Wall::perfect_mirror(), Gap{medium, d1}, Plate::perfect_mirror(),
                      Gap{medium, d3}, Wall::perfect_mirror()};
}

void set_gap_medium(CavityConfig& cavity, const DispersionModel& medium) {
  cavity.gap1.medium = medium;
  cavity.gap3.medium = medium;
}

int cmd_compare(const Options& o, const CompareOptions& c, std::ostream& out, std::ostream& err) {
  if (c.mu != 1.0) {
    throw UnsupportedError("the Minkowski column is defined for nonmagnetic media only (mu = 1)");
  }
  const RunConfig cfg = load(o);
  std::optional<CavityConfig> base;
  if (!o.config_path.empty()) base = build_cavity(cfg);
  double d1 = base ? base->gap1.width : c.d1;
  double d3 = base ? base->gap3.width : parse_length(c.d3, "--d3");
  if (c.d1_opt->count()) d1 = c.d1;
  if (c.d3_opt->count()) d3 = parse_length(c.d3, "--d3");
  if (!(d1 > 0.0 && std::isfinite(d1))) throw UsageError("--d1 must be finite and > 0");

  std::vector<double> eps = c.eps;
  if (eps.empty()) {
    for (double n : grid(c.n_min, c.n_max, c.points, false)) eps.push_back(n * n);
  }

  Table t;
  for (const char* col : {"n", "eps", "d1[m]", "d3[m]", "force[N/m^2]", "force_error[N/m^2]",
                          "force_minkowski[N/m^2]", "force_minkowski_error[N/m^2]",
                          "ratio_minkowski_over_force", "mode", "converged"}) {
    t.columns.emplace_back(col);
  }
  metadata_columns(t);

  bool all_converged = true;
  for (double e : eps) {
    const StaticMedium medium{e, 1.0};
    config_guard([&] {
      medium.validate();
      return 0;
    });
    double f = 0.0, f_err = 0.0, fm = 0.0, fm_err = 0.0;
    bool converged = true;
    if (c.quadrature) {
      CavityConfig cavity = base ? *base : mirror_cavity(DispersionModel::vacuum(), d1, d3);
      cavity.gap1.width = d1;
      cavity.gap3.width = d3;
      set_gap_medium(cavity, DispersionModel::constant(e, 1.0));
      const ForceMethod method =
          cfg.method == ForceMethod::minkowski ? ForceMethod::exact_difference : cfg.method;
      const ForceResult r = plate_force(cavity, cfg.quadrature, cfg.thermal(), method);
      const ForceResult m = minkowski_plate_force(cavity, cfg.quadrature, cfg.thermal());
      f = r.force_per_area;
      f_err = r.error_estimate;
      fm = m.force_per_area;
      fm_err = m.error_estimate;
      converged = r.converged && m.converged;
    } else {
      f = casimir_generalized(medium, d1, d3);
      fm = minkowski_generalized(e, d1, d3);
    }
    all_converged = all_converged && converged;
    std::vector<Cell> row{std::sqrt(e), e,      d1,     d3,
                          f,            f_err,  fm,     fm_err,
                          fm / f,       std::string(c.quadrature ? "quadrature" : "closed-form"),
                          converged};
    append_metadata(row, cfg);
    t.add_row(std::move(row));
  }
  emit(o, "compare", cfg, t, out);
  if (!o.quiet) {
    err << "compared " << eps.size() << " media ("
        << (c.quadrature ? "quadrature" : "closed form") << ")\n";
  }
  if (!all_converged) {
    err << "some rows did not converge\n";
    return exit_convergence;
  }
  return exit_ok;
}

struct SweepOptions {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  bool log = false;
};

const char* sweep_unit(const std::string& param) {
  if (param == "T") return "T[K]";
  if (param == "eps") return "eps";
  if (param == "d1") return "d1_sweep[m]";
  if (param == "d3") return "d3_sweep[m]";
  return "d_sweep[m]";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_sweep(const Options& o, const SweepOptions& s, std::ostream& out, std::ostream& err) {
  const std::vector<double> values = grid(s.from, s.to, s.points, s.log);
  RunConfig cfg = load(o);
  const CavityConfig base = build_cavity(cfg);

  std::optional<double> gap_mu;
  if (s.param == "eps") {
    if (base.gap1.medium.kind() != MaterialKind::Constant) {
      throw ConfigError("an eps sweep needs a constant gap medium");
    }
    gap_mu = base.gap1.medium.mu_static();
  }

  Table t;
  t.columns.emplace_back(sweep_unit(s.param));
  force_columns(t);

  bool all_converged = true;
  std::vector<double> forces;
  for (double v : values) {
    CavityConfig cavity = base;
    RunConfig point = cfg;
    if (s.param == "d1") {
      cavity.gap1.width = v;
    } else if (s.param == "d3") {
      cavity.gap3.width = v;
    } else if (s.param == "d") {
      // d scales both gaps, keeping d3/d1 fixed.
      cavity.gap3.width = base.gap3.width * (v / base.gap1.width);
      cavity.gap1.width = v;
    } else if (s.param == "eps") {
      set_gap_medium(cavity, config_guard([&] { return DispersionModel::constant(v, *gap_mu); }));
    } else {
      if (!(v >= 0.0)) throw UsageError("temperatures must be >= 0");
      point.temperature = v;
    }
    config_guard([&] {
      cavity.validate();
      return 0;
    });
    const ForceResult r = compute_force(cavity, point, false);
    all_converged = all_converged && r.converged;
    forces.push_back(r.force_per_area);
    std::vector<Cell> row = force_row(r, cavity, point);
    row.insert(row.begin(), v);
    t.add_row(std::move(row));
    if (!r.converged) err << s.param << " = " << sci(v) << " not converged: " << r.diagnostic << '\n';
  }
  emit(o, "sweep", cfg, t, out);

  if (!o.quiet) {
    err << "swept " << s.param << " over " << values.size() << " points\n";
    if ((s.param == "d" || s.param == "d1") && values.size() >= 2) {
      err << "log-log slope of |F| vs " << s.param << ": " << loglog_slope(values, forces) << '\n';
    }
  }
  return all_converged ? exit_ok : exit_convergence;
}

struct LimitsOptions {
  double eps = 1.0;
  double mu = 1.0;
  double d1 = 1e-6;
  std::string d3 = "inf";
  bool approx = false;
  bool ratio_sweep = false;
  double n_max = 5.0;
  int points = 41;
};

int cmd_limits(const Options& o, const LimitsOptions& l, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load(o);
  Table t;
  if (l.ratio_sweep) {
    t.columns = {"n", "ratio_minkowski_over_force"};
    for (double n : grid(1.0, l.n_max, l.points, false)) t.add_row({n, force_ratio(n * n)});
    emit(o, "limits", cfg, t, out);
    if (!o.quiet) err << "F^(M)/F for n in [1, " << l.n_max << "]\n";
    return exit_ok;
  }

  const StaticMedium medium{l.eps, l.mu};
  config_guard([&] {
    medium.validate();
    return 0;
  });
  const double d3 = parse_length(l.d3, "--d3");
  if (!(l.d1 > 0.0 && std::isfinite(l.d1))) throw UsageError("--d1 must be finite and > 0");

  for (const char* c : {"eps", "mu", "n", "d1[m]", "d3[m]", "force_closed_form[N/m^2]",
                        "force_minkowski_closed_form[N/m^2]", "ratio_minkowski_over_force"}) {
    t.columns.emplace_back(c);
  }
  std::vector<Cell> row{l.eps, l.mu, medium.n(), l.d1, d3, casimir_generalized(medium, l.d1, d3)};
  if (l.mu == 1.0) {
    row.emplace_back(minkowski_generalized(l.eps, l.d1, d3));
    row.emplace_back(force_ratio(l.eps));
  } else {
    row.emplace_back(std::string("unsupported"));
    row.emplace_back(std::string("unsupported"));
  }
  bool converged = true;
  if (l.approx) {
    for (const char* c : {"force_approx[N/m^2]", "force_approx_error[N/m^2]", "approx_converged"}) {
      t.columns.emplace_back(c);
    }
    const auto mirror = ConstantCoefficients::mirror();
    const IntegralResult a = approx_plate_force(medium, mirror, mirror, mirror, l.d1, d3, cfg.quadrature);
    row.emplace_back(a.value);
    row.emplace_back(a.error_estimate);
    row.emplace_back(a.converged);
    converged = a.converged;
  }
  metadata_columns(t);
  append_metadata(row, cfg);
  t.add_row(std::move(row));
  emit(o, "limits", cfg, t, out);
  if (!o.quiet) {
    err << "closed-form force per area: " << sci(casimir_generalized(medium, l.d1, d3))
        << " N/m^2\n";
  }
  return converged ? exit_ok : exit_convergence;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir stress and force in planar magnetodielectric multilayers", "casimir"};
  app.require_subcommand(1);

  // One option set per subcommand: option handles are checked for presence later.
  Options force_o, profile_o, compare_o, sweep_o, limits_o;

  auto* force = app.add_subcommand("force", "Force per area on the plate of a cavity");
  add_common(force, force_o, with_config | with_physics, true);
  bool cross_check = false;
  force->add_flag("--cross-check", cross_check,
                  "Run exact- and direct-difference and require agreement");

  auto* profile = app.add_subcommand("stress-profile", "T_zz across the gap of a two-wall setup");
  add_common(profile, profile_o, with_config | with_physics, true);
  int z_samples = 9;
  profile->add_option("--z-samples", z_samples, "Interior sample points (>= 2)");

  auto* compare = app.add_subcommand("compare", "F and F^(M) over a range of gap media");
  add_common(compare, compare_o, with_config | with_physics, false);
  CompareOptions c;
  compare->add_option("--n-min", c.n_min, "Smallest refractive index");
  compare->add_option("--n-max", c.n_max, "Largest refractive index");
  compare->add_option("--points", c.points, "Number of indices");
  compare->add_option("--eps", c.eps, "Explicit permittivities (overrides the n range)")
      ->delimiter(',');
  compare->add_option("--mu", c.mu, "Gap permeability (only 1 is supported)");
  c.d1_opt = compare->add_option("--d1", c.d1, "Left gap width in m");
  c.d3_opt = compare->add_option("--d3", c.d3, "Right gap width in m, or inf");
  compare->add_flag("--quadrature", c.quadrature, "Full engine quadrature instead of closed forms");

  auto* sweep = app.add_subcommand("sweep", "Plate force over a parameter range");
  add_common(sweep, sweep_o, with_config | with_physics, true);
  SweepOptions s;
  sweep->add_option("--param", s.param, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"d1", "d3", "d", "eps", "T"}));
  sweep->add_option("--from", s.from, "Range start")->required();
  sweep->add_option("--to", s.to, "Range end")->required();
  sweep->add_option("--points", s.points, "Number of points")->required();
  sweep->add_flag("--log", s.log, "Logarithmic spacing");

  auto* limits = app.add_subcommand("limits", "Closed-form perfect-mirror results");
  add_common(limits, limits_o, 0, false);
  LimitsOptions l;
  limits->add_option("--eps", l.eps, "Gap permittivity");
  limits->add_option("--mu", l.mu, "Gap permeability");
  limits->add_option("--d1", l.d1, "Left gap width in m");
  limits->add_option("--d3", l.d3, "Right gap width in m, or inf");
  limits->add_flag("--approx", l.approx, "Also integrate the frozen-coefficient approximation");
  limits->add_flag("--ratio-sweep", l.ratio_sweep, "Emit (n, F^(M)/F) instead");
  limits->add_option("--n-max", l.n_max, "Largest index of the ratio sweep");
  limits->add_option("--points", l.points, "Points of the ratio sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (force->parsed()) return cmd_force(force_o, cross_check, out, err);
    if (profile->parsed()) return cmd_stress_profile(profile_o, z_samples, out, err);
    if (compare->parsed()) return cmd_compare(compare_o, c, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_o, s, out, err);
    if (limits->parsed()) return cmd_limits(limits_o, l, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_usage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_usage;
  } catch (const ConsistencyError& e) {
    err << "consistency check failed: " << e.what() << '\n';
    return exit_convergence;
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_convergence;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_internal;
}

}  // namespace casimir::app

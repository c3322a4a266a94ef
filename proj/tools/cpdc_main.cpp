// cpdc: cascaded three-photon down-conversion toolkit.
// Subcommands: qpm (coupling sweeps + grating design), jsa (three-photon
// joint spectra + Schmidt analysis), opo (intracavity cascade dynamics),
// ghz (polarization-entangled triplet states).

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "cpdc/cascade_states.hpp"
#include "cpdc/coupling.hpp"
#include "cpdc/io.hpp"
#include "cpdc/jsa.hpp"
#include "cpdc/lindblad.hpp"
#include "cpdc/qpm_design.hpp"
#include "cpdc/run_opo.hpp"
#include "cpdc/schmidt.hpp"
#include "cpdc/svg.hpp"
#include "cpdc/wigner.hpp"

namespace fs = std::filesystem;
using namespace cpdc;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  std::uint64_t seed = 1;
};

void ensure_out(const CommonArgs& args) { fs::create_directories(args.out_dir); }

json load_config(const CommonArgs& args) {
  if (args.config_path.empty()) return json::object();
  return load_json_file(args.config_path);
}

// ---------------------------------------------------------------- qpm ----

int cmd_qpm(const CommonArgs& args) {
  ensure_out(args);
  json cfg = load_config(args);
  if (!cfg.contains("lattice")) throw ConfigError("missing field lattice");
  SuperlatticeSpec lattice = lattice_from_json(cfg["lattice"], "lattice");

  json manifest_cfg = cfg;
  manifest_cfg["seed"] = args.seed;
  manifest_cfg["out"] = args.out_dir;

  if (cfg.contains("sweep")) {
    const json& sw = cfg["sweep"];
    const std::string target = string_or(sw, "target", "zeta");
    const long points = integer_or(sw, "points", 801);
    if (points < 2) throw ConfigError("field sweep.points must be >= 2");

    double center = 0.0, span = 0.0;
    if (target == "zeta" || target == "xi") {
      if (!lattice.dual_grid) throw ConfigError("sweep target '" + target + "' needs lattice.dual_grid");
      const DualGridParams& g = *lattice.dual_grid;
      const double q = target == "zeta" ? g.q1() : g.q2();
      const double L = target == "zeta" ? g.length1() : g.length2();
      center = number_or(sw, "center", q);
      span = number_or(sw, "span", 16.0 * M_PI / L);
    } else if (target == "xi_spacer") {
      if (!lattice.spacer_grid) throw ConfigError("sweep target 'xi_spacer' needs lattice.spacer_grid");
      center = require_number(sw, "center", "sweep");
      span = require_number(sw, "span", "sweep");
    } else {
      throw ConfigError("field sweep.target must be zeta, xi or xi_spacer");
    }

    const double dkappa_center = number_or(sw, "dkappa2_center", 0.0);
    const double dkappa_slope = number_or(sw, "dkappa2_slope", 0.0);

    CsvWriter csv(fs::path(args.out_dir) / (target + "_sweep.csv"), {"delta_k", "re", "im", "abs"});
    std::vector<double> xs(points), mags(points);
    for (long i = 0; i < points; ++i) {
      const double dk = center - 0.5 * span + span * double(i) / double(points - 1);
      Complex v;
      if (target == "zeta")
        v = zeta_dualgrid(lattice, dk);
      else if (target == "xi")
        v = xi_dualgrid(lattice, dk);
      else
        v = xi_linear_spacers(lattice, dk, dkappa_center + dkappa_slope * (dk - center));
      csv.row({dk, v.real(), v.imag(), std::abs(v)});
      xs[i] = dk;
      mags[i] = std::abs(v);
    }
    write_svg_line(fs::path(args.out_dir) / (target + "_sweep.svg"), xs,
                   {{("|" + target + "|"), mags}}, target + " coupling sweep");
  }

  if (cfg.contains("design")) {
    const json& d = cfg["design"];
    if (!cfg.contains("dispersion")) throw ConfigError("design block needs a dispersion table");
    DispersionTable table = dispersion_table_from_json(cfg["dispersion"], "dispersion");
    ZeroOrderMismatches mm = zero_order_mismatches(
        table, string_or(d, "pump", "pump"), string_or(d, "mode1", "mode1"),
        string_or(d, "mode2", "mode2"), string_or(d, "spacer_mode1", ""),
        string_or(d, "spacer_mode2", ""));
    QpmDesignRequest req;
    req.want_d1 = false;
    req.want_d2 = false;
    req.want_spacers = false;
    for (const auto& w : d.value("want", json::array({"d1"}))) {
      const std::string s = w.get<std::string>();
      if (s == "d1") req.want_d1 = true;
      else if (s == "d2") req.want_d2 = true;
      else if (s == "spacers") req.want_spacers = true;
      else throw ConfigError("field design.want holds unknown entry '" + s + "'");
    }
    QpmDesignResult res = solve_qpm_design(mm, req);
    json report{{"feasible", res.feasible},
                {"message", res.message},
                {"dk1", mm.dk1},
                {"dk2", mm.dk2},
                {"dkappa2", mm.dkappa2},
                {"residual_q1", res.residual_q1},
                {"residual_q2", res.residual_q2},
                {"residual_compensation", res.residual_compensation},
                {"residual_spacer_pi", res.residual_spacer_pi}};
    if (res.d1) report["d1"] = *res.d1;
    if (res.d2) report["d2"] = *res.d2;
    if (res.l2) report["l2"] = *res.l2;
    if (res.l3) report["l3"] = *res.l3;
    write_json_file(fs::path(args.out_dir) / "design_report.json", report);
    std::cout << "design " << (res.feasible ? "feasible" : ("infeasible: " + res.message)) << "\n";
  }

  write_manifest(args.out_dir, "qpm", manifest_cfg);
  return 0;
}

// ---------------------------------------------------------------- jsa ----

std::array<Polarization, 3> parse_triple(const std::string& s) {
  if (s.size() != 3) throw ConfigError("polarizations must be a 3-letter string of e/o");
  std::array<Polarization, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = polarization_from_string(std::string(1, s[i]));
  return out;
}

int cmd_jsa(const CommonArgs& args) {
  ensure_out(args);
  json cfg = load_config(args);
  const std::string route = string_or(cfg, "route", "gaussian");
  const std::array<Polarization, 3> pol = parse_triple(string_or(cfg, "polarizations", "eoo"));

  GridOptions gopt;
  if (cfg.contains("grid")) {
    gopt.points = static_cast<std::size_t>(integer_or(cfg["grid"], "points", 64));
    gopt.span_sigmas = number_or(cfg["grid"], "span_sigmas", 4.0);
  }

  JointAmplitudeGrid grid;
  json manifest_cfg = cfg;
  manifest_cfg["seed"] = args.seed;
  manifest_cfg["route"] = route;

  if (route == "gaussian") {
    if (!cfg.contains("walkoffs")) throw ConfigError("missing field walkoffs");
    WalkoffSet w = walkoffs_from_json(cfg["walkoffs"], "walkoffs");
    grid = build_gaussian_grid(w, pol, gopt);
    if (cfg.value("check_heralding", true)) {
      HeraldingResiduals r = heralding_residuals(w);
      json rep{{"r12", r.r12}, {"r13", r.r13}, {"r23", r.r23}};
      write_json_file(fs::path(args.out_dir) / "heralding.json", rep);
      std::printf("heralding residuals: r12=%s r13=%s r23=%s\n", format_double(r.r12).c_str(),
                  format_double(r.r13).c_str(), format_double(r.r23).c_str());
    }
  } else if (route == "resonant" || route == "full") {
    if (!cfg.contains("pump")) throw ConfigError("missing field pump");
    if (!cfg.contains("lattice") || !cfg["lattice"].contains("dual_grid"))
      throw ConfigError("route '" + route + "' needs lattice.dual_grid");
    if (!cfg.contains("dispersion")) throw ConfigError("route '" + route + "' needs dispersion");
    if (!cfg.contains("materials")) throw ConfigError("route '" + route + "' needs materials");
    PumpPulse pump = pump_from_json(cfg["pump"], "pump");
    SuperlatticeSpec lattice = lattice_from_json(cfg["lattice"], "lattice");
    DispersionTable table = dispersion_table_from_json(cfg["dispersion"], "dispersion");
    const json& mats = cfg["materials"];
    const DispersionModel kl = table.at(string_or(mats, "pump", "pump"));
    const DispersionModel k1 = table.at(string_or(mats, "daughter", "daughter"));
    const DispersionModel k2 = table.at(string_or(mats, "subharmonic", "subharmonic"));
    DualGridParams dg = *lattice.dual_grid;

    CouplingFunctions c;
    c.zeta = [kl, k1, k2, dg](double w, double w1, double w2) {
      return zeta_dualgrid(dg, kl.k(w) - k1.k(w1) - k2.k(w2));
    };
    c.xi = [k1, k2, dg](double w1p, double w1pp, double w2) {
      return xi_dualgrid(dg, k2.k(w2) - k1.k(w1p) - k1.k(w1pp));
    };

    const std::size_t default_pts = route == "full" ? 17 : 33;
    if (!cfg.contains("grid")) gopt.points = default_pts;
    if (route == "full" && gopt.points > 33)
      throw ResourceGuardError("route 'full' limits the grid to 33 points per axis");

    const double half = gopt.span_sigmas / pump.tau_p;
    std::vector<double> axis(gopt.points);
    for (std::size_t i = 0; i < gopt.points; ++i)
      axis[i] = -half + 2.0 * half * double(i) / double(gopt.points - 1);

    if (route == "resonant") {
      grid = build_grid(
          [&](double a, double b, double cc) { return amplitude_resonant(pump, c, a, b, cc); },
          axis, axis, axis);
    } else {
      FullIntegralOptions fopt;
      fopt.epsilon = number_or(cfg, "epsilon", 1e-3 / pump.tau_p);
      fopt.half_window = number_or(cfg, "half_window", 20.0 / pump.tau_p);
      grid = build_grid(
          [&](double a, double b, double cc) { return amplitude_full(pump, c, a, b, cc, fopt); },
          axis, axis, axis);
    }
    grid.route = route;
    grid.polarizations = pol;
  } else {
    throw ConfigError("unknown route '" + route + "' (expected gaussian|resonant|full)");
  }

  if (args.format == "json")
    write_json_file(fs::path(args.out_dir) / "amplitude_grid.json", grid_to_json(grid));
  else
    write_grid_csv(fs::path(args.out_dir) / "amplitude_grid.csv", grid);

  json schmidt;
  for (Bipartition b : {Bipartition::One_23, Bipartition::Two_13, Bipartition::Three_12}) {
    SchmidtReport rep = schmidt_analysis(grid, b);
    schmidt[to_string(b)] = schmidt_to_json(rep);
    std::printf("schmidt %s: K=%s purity=%s\n", to_string(b),
                format_double(rep.schmidt_number).c_str(), format_double(rep.purity).c_str());
  }
  write_json_file(fs::path(args.out_dir) / "schmidt.json", schmidt);
  write_manifest(args.out_dir, "jsa", manifest_cfg);
  return 0;
}

// ---------------------------------------------------------------- opo ----

void apply_opo_json(OpoRunConfig& c, const json& cfg) {
  c.model = string_or(cfg, "model", c.model);
  c.method = string_or(cfg, "method", c.method);
  if (cfg.contains("params")) {
    const json& p = cfg["params"];
    c.params.drive = number_or(p, "drive", c.params.drive);
    c.params.drive_phase = number_or(p, "drive_phase", c.params.drive_phase);
    c.params.zeta_p = number_or(p, "zeta_p", c.params.zeta_p);
    c.params.xi_p = number_or(p, "xi_p", c.params.xi_p);
    c.params.gamma0 = number_or(p, "gamma0", c.params.gamma0);
    c.params.gamma1 = number_or(p, "gamma1", c.params.gamma1);
    c.params.gamma2 = number_or(p, "gamma2", c.params.gamma2);
  }
  c.ratio = number_or(cfg, "ratio", c.ratio);
  if (cfg.contains("truncation")) {
    const json& t = cfg["truncation"];
    if (!t.is_array() || t.size() != 3)
      throw ConfigError("field truncation must be [n0_max, n1_max, n2_max]");
    c.truncation = {t[0].get<int>(), t[1].get<int>(), t[2].get<int>()};
  }
  c.n1_max = static_cast<int>(integer_or(cfg, "n1_max", c.n1_max));
  c.n2_max = static_cast<int>(integer_or(cfg, "n2_max", c.n2_max));
  if (cfg.contains("record_times"))
    c.record_times = cfg["record_times"].get<std::vector<double>>();
  c.dt = number_or(cfg, "dt", c.dt);
  c.n_traj = static_cast<std::size_t>(integer_or(cfg, "n_traj", static_cast<long>(c.n_traj)));
  c.unraveling = string_or(cfg, "unraveling", c.unraveling);
  c.wigner = cfg.value("wigner", c.wigner);
  c.wigner_points = static_cast<int>(integer_or(cfg, "wigner_points", c.wigner_points));
  c.wigner_halfwidth = number_or(cfg, "wigner_halfwidth", c.wigner_halfwidth);
}

int cmd_opo(const CommonArgs& args, const std::string& preset, double ratio, double time_override,
            long trajectories, bool oracle) {
  ensure_out(args);
  OpoRunConfig c = preset.empty() ? OpoRunConfig{} : opo_preset(preset);
  if (!args.config_path.empty()) apply_opo_json(c, load_json_file(args.config_path));
  if (ratio >= 0.0) c.ratio = ratio;
  if (time_override > 0.0) c.record_times = {time_override};
  if (trajectories > 0) c.n_traj = static_cast<std::size_t>(trajectories);
  if (oracle) c.method = "dense";
  c.seed = args.seed;
  if (c.record_times.empty()) throw ConfigError("no record times (use --time or a preset)");

  OpoRunResult res = run_opo(c);

  // Observable series.
  std::vector<std::string> cols{"t"};
  for (const std::string& label : res.mode_labels) {
    cols.push_back("n_" + label);
    cols.push_back("n_" + label + "_stderr");
  }
  cols.push_back("g3_a1");
  CsvWriter obs(fs::path(args.out_dir) / "observables.csv", cols);
  for (std::size_t rec = 0; rec < res.times.size(); ++rec) {
    std::vector<double> row{res.times[rec]};
    for (std::size_t m = 0; m < res.mode_labels.size(); ++m) {
      row.push_back(res.n_mean(rec, m));
      row.push_back(res.n_stderr(rec, m));
    }
    row.push_back(res.g3_subharmonic[rec]);
    obs.row(row);
  }

  {
    std::vector<SvgSeries> series;
    std::vector<double> g3series = res.g3_subharmonic;
    series.push_back({"g3(a1)", g3series});
    write_svg_line(fs::path(args.out_dir) / "g3.svg", res.times, series, "third-order correlation");
  }

  // Final-time photon distributions.
  {
    std::size_t max_levels = 0;
    for (const MatrixXc& r : res.rho_final)
      max_levels = std::max<std::size_t>(max_levels, r.rows());
    std::vector<std::string> pcols{"n"};
    for (const std::string& label : res.mode_labels) pcols.push_back("p_" + label);
    CsvWriter pn(fs::path(args.out_dir) / "pn_final.csv", pcols);
    for (std::size_t n = 0; n < max_levels; ++n) {
      std::vector<double> row{static_cast<double>(n)};
      for (const MatrixXc& r : res.rho_final)
        row.push_back(n < static_cast<std::size_t>(r.rows()) ? std::real(r(n, n)) : 0.0);
      pn.row(row);
    }
  }

  if (res.resolved.wigner) {
    for (std::size_t m = 0; m < res.mode_labels.size(); ++m) {
      if (res.mode_labels[m] == "a0") continue;
      const MatrixXc& r = res.rho_final[m];
      double hw = res.resolved.wigner_halfwidth;
      if (hw <= 0.0) hw = 2.0 * std::sqrt(2.0 * (mean_photon_number(r) + 1.0)) + 2.0;
      const int pts = res.resolved.wigner_points;
      std::vector<double> axis(pts);
      for (int i = 0; i < pts; ++i) axis[i] = -hw + 2.0 * hw * double(i) / double(pts - 1);
      MatrixXd w = wigner_grid(r, axis, axis);
      CsvWriter csv(fs::path(args.out_dir) / ("wigner_" + res.mode_labels[m] + ".csv"),
                    {"x", "y", "w"});
      for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) csv.row({axis[i], axis[j], w(i, j)});
      write_svg_heatmap(fs::path(args.out_dir) / ("wigner_" + res.mode_labels[m] + ".svg"), axis,
                        axis, w, "W(" + res.mode_labels[m] + ")");
    }
  }

  json manifest_cfg = opo_config_to_json(res.resolved);
  manifest_cfg["seed"] = args.seed;
  manifest_cfg["results"] = {{"e_th", res.e_th},
                             {"method_used", res.method_used},
                             {"max_leakage", res.max_leakage},
                             {"escalations", res.escalations},
                             {"step_rejections", res.step_rejections},
                             {"wall_seconds", res.wall_seconds}};
  write_manifest(args.out_dir, "opo", manifest_cfg);
  std::printf("opo done: method=%s e_th=%s leakage=%.3g t_wall=%.1fs\n", res.method_used.c_str(),
              format_double(res.e_th).c_str(), res.max_leakage, res.wall_seconds);
  return 0;
}

// ---------------------------------------------------------------- ghz ----

int cmd_ghz(const CommonArgs& args) {
  ensure_out(args);
  json cfg = load_config(args);
  const double chi = number_or(cfg, "chi", 1.0);
  const double kv = number_or(cfg, "k_v", number_or(cfg, "k", 1.0));
  const double kh = number_or(cfg, "k_h", number_or(cfg, "k", 1.0));
  const double e0 = number_or(cfg, "e0", 1.0);
  const double t = number_or(cfg, "t", 1.0);
  const int levels = static_cast<int>(integer_or(cfg, "levels", 5));

  ModeRegister reg;
  if (cfg.contains("register")) {
    for (const auto& m : cfg["register"]) {
      FockMode mode;
      mode.label = string_or(m, "label", "");
      mode.levels = static_cast<int>(integer_or(m, "levels", levels));
      const std::string pol = string_or(m, "polarization", "");
      mode.polarization = pol.empty() ? 0 : pol[0];
      reg.modes.push_back(mode);
    }
  } else {
    reg = ghz_register(levels);
  }

  GhzResult res = ghz_state(reg, chi, kv, kh, e0, t);
  write_json_file(fs::path(args.out_dir) / "ghz_state.json", state_to_json(reg, res.state));
  json report{{"fidelity", res.fidelity},
              {"fidelity_occupancy", res.fidelity_occupancy},
              {"amplitude_vhh", {res.amplitude_21.real(), res.amplitude_21.imag()}},
              {"amplitude_hvv", {res.amplitude_12.real(), res.amplitude_12.imag()}},
              {"norm_squared", res.state.squaredNorm()}};
  write_json_file(fs::path(args.out_dir) / "ghz_report.json", report);
  json manifest_cfg{{"chi", chi}, {"k_v", kv}, {"k_h", kh}, {"e0", e0}, {"t", t},
                    {"levels", levels}, {"seed", args.seed}};
  write_manifest(args.out_dir, "ghz", manifest_cfg);
  std::printf("ghz fidelity = %s\n", format_double(res.fidelity).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascaded three-photon down-conversion toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string preset;
  double ratio = -1.0, time_override = -1.0;
  long trajectories = -1;
  bool oracle = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "JSON run configuration");
    sub->add_option("--out", args.out_dir, "output directory")->envname("CPDC_OUT");
    sub->add_option("--seed", args.seed, "master RNG seed")->envname("CPDC_SEED");
    sub->add_option("--format", args.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* qpm = app.add_subcommand("qpm", "coupling sweeps and grating design");
  add_common(qpm);
  CLI::App* jsa = app.add_subcommand("jsa", "three-photon joint spectral amplitudes");
  add_common(jsa);
  CLI::App* opo = app.add_subcommand("opo", "cascaded intracavity dynamics");
  add_common(opo);
  opo->add_option("--preset", preset, "fig2|fig3|fig4|fig5|fig6");
  opo->add_option("--ratio", ratio, "drive ratio E/E_th");
  opo->add_option("--time", time_override, "single record time (units of 1/gamma)");
  opo->add_option("--trajectories", trajectories, "trajectory count");
  opo->add_flag("--oracle", oracle, "force the dense master-equation path");
  CLI::App* ghz = app.add_subcommand("ghz", "GHZ polarization triplet state");
  add_common(ghz);

  try {
    app.parse(argc, argv);
    if (qpm->parsed()) return cmd_qpm(args);
    if (jsa->parsed()) return cmd_jsa(args);
    if (opo->parsed()) return cmd_opo(args, preset, ratio, time_override, trajectories, oracle);
    if (ghz->parsed()) return cmd_ghz(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ResourceGuardError& e) {
    std::fprintf(stderr, "resource guard: %s\n", e.what());
    return 3;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

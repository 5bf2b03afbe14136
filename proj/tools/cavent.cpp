// Command-line front end: SI-unit inputs, CSV/JSON output, gnuplot
// script emission. Exit codes: 0 success, 2 argument/config errors,
// 3 numerical non-convergence (partial results are still written).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavent/experiments.hpp"
#include "cavent/units.hpp"

namespace {

using nlohmann::json;
using namespace cavent;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Fixed 12-significant-digit formatting, C locale, '.' decimal point;
// identical invocations must produce byte-identical output.
std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct CommonArgs {
  std::optional<double> accel_si;
  std::optional<double> aL;
  double length_m = 0.0;
  double W_s = 0.0;
  std::optional<double> omega_rad_s;
  double eps = 1e-3;
  int modes_max = 16;
  double tol = 1e-8;
  std::string out;
  std::string format;  // "csv" or "json"; per-command default if empty
  std::string gnuplot;

  void add_to(CLI::App* cmd, bool needs_accel) {
    if (needs_accel) {
      cmd->add_option("--accel-si", accel_si, "Proper acceleration in m/s^2");
      cmd->add_option("--aL", aL, "Dimensionless acceleration-length product a*L");
    }
    cmd->add_option("--length-m", length_m, "Cavity length in meters")->required();
    cmd->add_option("--W-s", W_s, "Switching width in seconds")->required();
    cmd->add_option("--omega-rad-s", omega_rad_s,
                    "Atom gap in rad/s (default: resonance pi/L)");
    cmd->add_option("--eps", eps, "Coupling strength (default 1e-3)");
    cmd->add_option("--modes-max", modes_max, "Initial mode cutoff (default 16)");
    cmd->add_option("--tol", tol, "Quadrature relative tolerance (default 1e-8)");
    cmd->add_option("--out", out, "Output file path (default: stdout)");
    cmd->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--gnuplot", gnuplot, "Also write a gnuplot script to this path");
  }

  // Natural-unit parameters; acceleration resolved from --accel-si or --aL.
  ProtocolParams to_params(bool accel_required) const {
    const double L = units::length_si_to_natural(length_m);
    double a = 0.0;
    if (accel_si && aL) {
      throw CLI::ValidationError("give either --accel-si or --aL, not both");
    }
    if (accel_si) {
      a = units::accel_si_to_natural(*accel_si);
    } else if (aL) {
      a = *aL / L;
    } else if (accel_required) {
      throw CLI::ValidationError("one of --accel-si or --aL is required");
    }
    ProtocolParams p;
    p.a = a;
    p.L = L;
    p.W = W_s;
    p.Omega = omega_rad_s ? *omega_rad_s : std::numbers::pi / L;
    p.eps = eps;
    p.t_A = -3.0 * W_s;
    p.n_max = modes_max;
    p.tol = tol;
    validate(p);
    return p;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw CLI::ValidationError("cannot open output path: " + path);
  }
  f << text;
  if (!f) {
    throw CLI::ValidationError("write failed: " + path);
  }
}

std::string row_flag(const PointResult& r) {
  std::string flag;
  if (!r.converged) flag = "noconv";
  if (r.perturbative_warning) flag += flag.empty() ? "pwarn" : "+pwarn";
  return flag;
}

json point_to_json(const PointResult& r) {
  return json{{"entropy_bits", r.entropy_bits}, {"p_alice", r.p_alice},
              {"p_rob", r.p_rob},               {"p_success", r.p_success},
              {"n_modes", r.n_modes},           {"quad_err", r.quad_err},
              {"flag", row_flag(r)}};
}

json params_to_json(const ProtocolParams& p) {
  return json{{"a", p.a},
              {"a_si", units::accel_natural_to_si(p.a)},
              {"L", p.L},
              {"L_m", units::length_natural_to_si(p.L)},
              {"W", p.W},
              {"Omega", p.Omega},
              {"eps", p.eps},
              {"t_A", p.t_A},
              {"n_max", p.n_max},
              {"tol", p.tol}};
}

// CSV schema, exact order: param,entropy_bits,p_alice,p_rob,p_success,
// n_modes,quad_err,flag. For sweep-a `param` is the dimensionless aL
// of the row; for sweep-l it is the length in meters.
std::string sweep_to_csv(const SweepResult& s) {
  std::string out = "param,entropy_bits,p_alice,p_rob,p_success,n_modes,quad_err,flag\n";
  for (const auto& row : s.rows) {
    const double param = (s.axis == SweepAxis::acceleration)
                             ? row.param * s.baseline.L
                             : units::length_natural_to_si(row.param);
    const auto& r = row.point;
    out += fmt12(param) + "," + fmt12(r.entropy_bits) + "," + fmt12(r.p_alice) + "," +
           fmt12(r.p_rob) + "," + fmt12(r.p_success) + "," + std::to_string(r.n_modes) + "," +
           fmt12(r.quad_err) + "," + row_flag(r) + "\n";
  }
  return out;
}

json sweep_to_json(const SweepResult& s) {
  json rows = json::array();
  for (const auto& row : s.rows) {
    json r = point_to_json(row.point);
    r["param"] = row.param;
    if (s.axis == SweepAxis::acceleration) {
      r["param_aL"] = row.param * s.baseline.L;
      r["param_si"] = units::accel_natural_to_si(row.param);
    } else {
      r["param_si"] = units::length_natural_to_si(row.param);
    }
    rows.push_back(std::move(r));
  }
  return json{{"metadata",
               {{"axis", s.axis == SweepAxis::acceleration ? "acceleration" : "length"},
                {"baseline", params_to_json(s.baseline)}}},
              {"rows", std::move(rows)},
              {"partial", s.partial}};
}

void maybe_write_gnuplot(const std::string& gp_path, const std::string& data_path,
                         const std::string& xlabel) {
  if (gp_path.empty()) return;
  if (data_path.empty()) {
    throw CLI::ValidationError("--gnuplot requires --out with a CSV data file");
  }
  std::string script;
  script += "set datafile separator ','\n";
  script += "set logscale x\n";
  script += "set xlabel '" + xlabel + "'\n";
  script += "set ylabel 'entropy (bits)'\n";
  script += "set yrange [0:1.05]\n";
  script += "set key off\n";
  script += "plot '" + data_path + "' using 1:2 skip 1 with linespoints\n";
  write_text(gp_path, script);
}

std::vector<double> log_grid(double lo, double hi, int points, const char* what) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw CLI::ValidationError(std::string(what) + ": need 0 < min < max");
  }
  if (points < 2) {
    throw CLI::ValidationError(std::string(what) + ": need at least 2 points");
  }
  std::vector<double> g(points);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    g[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

// --config support: keys mirror the long option names without the
// leading dashes; values from the file are appended as arguments for
// any option the user did not pass, so explicit flags always win.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  std::ifstream f(config_path);
  if (!f) {
    throw CLI::ValidationError("cannot read config file: " + config_path);
  }
  json cfg;
  try {
    f >> cfg;
  } catch (const json::exception& e) {
    throw CLI::ValidationError("malformed config JSON: " + std::string(e.what()));
  }
  if (!cfg.is_object()) {
    throw CLI::ValidationError("config must be a JSON object of option values");
  }

  auto given = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };

  std::vector<std::string> out = args;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    out.push_back(flag);
    if (value.is_string()) {
      out.push_back(value.get<std::string>());
    } else {
      out.push_back(value.dump());
    }
  }
  return out;
}

int run(const std::vector<std::string>& raw_args) {
  CLI::App app{"cavity-entanglement protocol simulator"};
  app.require_subcommand(1);
  std::string config_dummy;
  app.add_option("--config", config_dummy,
                 "JSON file with option values (explicit flags override)");

  CommonArgs geo, amp, ent, swa, swl, tun;

  auto* cmd_geometry = app.add_subcommand("geometry", "Derived cavity geometry");
  geo.add_to(cmd_geometry, true);
  cmd_geometry->get_option("--W-s")->required(false);

  auto* cmd_amplitudes = app.add_subcommand("amplitudes", "Per-mode emission amplitudes");
  amp.add_to(cmd_amplitudes, true);

  auto* cmd_entangle = app.add_subcommand("entangle", "Entropy and probabilities at one point");
  ent.add_to(cmd_entangle, true);

  auto* cmd_sweep_a = app.add_subcommand("sweep-a", "Entropy vs acceleration (log grid in aL)");
  swa.add_to(cmd_sweep_a, false);
  double aL_min = 0.0, aL_max = 0.0;
  int points_a = 40;
  cmd_sweep_a->add_option("--aL-min", aL_min, "Smallest aL (> 0)")->required();
  cmd_sweep_a->add_option("--aL-max", aL_max, "Largest aL")->required();
  cmd_sweep_a->add_option("--points", points_a, "Grid points (default 40)");
  bool include_inertial = false;
  cmd_sweep_a->add_flag("--include-a0", include_inertial, "Prepend the a = 0 row");

  auto* cmd_sweep_l = app.add_subcommand("sweep-l", "Entropy vs length at fixed acceleration");
  swl.add_to(cmd_sweep_l, true);
  double L_min_m = 0.0, L_max_m = 0.0;
  int points_l = 40;
  cmd_sweep_l->add_option("--L-min-m", L_min_m, "Smallest length in meters")->required();
  cmd_sweep_l->add_option("--L-max-m", L_max_m, "Largest length in meters")->required();
  cmd_sweep_l->add_option("--points", points_l, "Grid points (default 40)");

  auto* cmd_tune = app.add_subcommand("tune-l", "Find the length restoring maximal entanglement");
  tun.add_to(cmd_tune, true);
  double L_lo_m = 0.0, L_hi_m = 0.0;
  cmd_tune->add_option("--L-lo-m", L_lo_m, "Bracket lower end, meters (default: length-m)");
  cmd_tune->add_option("--L-hi-m", L_hi_m, "Bracket upper end, meters (default: 2x length-m)");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    // CLI11 parses from a reversed vector.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (cmd_geometry->parsed()) {
    const double L = units::length_si_to_natural(geo.length_m);
    double a = 0.0;
    if (geo.accel_si) a = units::accel_si_to_natural(*geo.accel_si);
    else if (geo.aL) a = *geo.aL / L;
    else throw CLI::ValidationError("one of --accel-si or --aL is required");
    const CavityGeometry g = make_geometry(a, L);
    json j{{"a", g.a},
           {"a_si", units::accel_natural_to_si(g.a)},
           {"L", g.L},
           {"L_m", units::length_natural_to_si(g.L)},
           {"aL", g.a * g.L},
           {"X1", g.X1},
           {"X2", g.X2},
           {"X", g.X},
           {"Lp", g.Lp},
           {"Lp_m", units::length_natural_to_si(g.Lp)},
           {"t_a", g.t_a},
           {"inertial", g.inertial}};
    if (geo.format == "csv") {
      std::string csv = "a,a_si,L,L_m,aL,X1,X2,X,Lp,Lp_m,t_a,inertial\n";
      csv += fmt12(g.a) + "," + fmt12(units::accel_natural_to_si(g.a)) + "," + fmt12(g.L) + "," +
             fmt12(units::length_natural_to_si(g.L)) + "," + fmt12(g.a * g.L) + "," +
             fmt12(g.X1) + "," + fmt12(g.X2) + "," + fmt12(g.X) + "," + fmt12(g.Lp) + "," +
             fmt12(units::length_natural_to_si(g.Lp)) + "," + fmt12(g.t_a) + "," +
             (g.inertial ? "1" : "0") + "\n";
      write_text(geo.out, csv);
    } else {
      write_text(geo.out, j.dump(2) + "\n");
    }
    return kExitOk;
  }

  if (cmd_amplitudes->parsed()) {
    const ProtocolParams p = amp.to_params(true);
    const ModeAmplitudes amps = compute_amplitudes(p);
    if (amp.format == "json") {
      json rows = json::array();
      for (int n = 1; n <= amps.n_modes(); ++n) {
        rows.push_back(json{{"n", n},
                            {"re_I_A", amps.alice[n - 1].real()},
                            {"im_I_A", amps.alice[n - 1].imag()},
                            {"re_I_R", amps.rob[n - 1].real()},
                            {"im_I_R", amps.rob[n - 1].imag()}});
      }
      json j{{"params", params_to_json(p)},
             {"truncation_error", amps.truncation_error},
             {"max_quad_rel_err", amps.max_quad_rel_err},
             {"rows", std::move(rows)}};
      write_text(amp.out, j.dump(2) + "\n");
    } else {
      std::string csv = "n,re_I_A,im_I_A,abs_I_A,re_I_R,im_I_R,abs_I_R\n";
      for (int n = 1; n <= amps.n_modes(); ++n) {
        const Complex& ia = amps.alice[n - 1];
        const Complex& ir = amps.rob[n - 1];
        csv += std::to_string(n) + "," + fmt12(ia.real()) + "," + fmt12(ia.imag()) + "," +
               fmt12(std::abs(ia)) + "," + fmt12(ir.real()) + "," + fmt12(ir.imag()) + "," +
               fmt12(std::abs(ir)) + "\n";
      }
      write_text(amp.out, csv);
    }
    return (amps.quad_converged && amps.truncation_converged) ? kExitOk : kExitNumerical;
  }

  if (cmd_entangle->parsed()) {
    const ProtocolParams p = ent.to_params(true);
    const PointResult r = evaluate_protocol(p);
    if (ent.format.empty() && ent.out.empty()) {
      std::string text;
      text += "entropy " + fmt12(r.entropy_bits) + "\n";
      text += "p_A " + fmt12(r.p_alice) + "\n";
      text += "p_R " + fmt12(r.p_rob) + "\n";
      text += "p_success " + fmt12(r.p_success) + "\n";
      text += "n_modes " + std::to_string(r.n_modes) + "\n";
      text += "quad_err " + fmt12(r.quad_err) + "\n";
      write_text("", text);
    } else if (ent.format == "csv") {
      std::string csv = "entropy_bits,p_alice,p_rob,p_success,n_modes,quad_err,flag\n";
      csv += fmt12(r.entropy_bits) + "," + fmt12(r.p_alice) + "," + fmt12(r.p_rob) + "," +
             fmt12(r.p_success) + "," + std::to_string(r.n_modes) + "," + fmt12(r.quad_err) +
             "," + row_flag(r) + "\n";
      write_text(ent.out, csv);
    } else {
      json j = point_to_json(r);
      j["params"] = params_to_json(p);
      write_text(ent.out, j.dump(2) + "\n");
    }
    if (r.perturbative_warning) {
      std::fprintf(stderr,
                   "warning: success probability %.3g exceeds %.2g; first-order treatment "
                   "is strained\n",
                   r.p_success, perturbative_limit);
    }
    return r.converged ? kExitOk : kExitNumerical;
  }

  if (cmd_sweep_a->parsed()) {
    ProtocolParams base = swa.to_params(false);
    std::vector<double> grid;
    if (include_inertial) grid.push_back(0.0);
    for (double aL : log_grid(aL_min, aL_max, points_a, "sweep-a")) {
      grid.push_back(aL / base.L);
    }
    const SweepResult s = sweep_acceleration(base, grid);
    const bool as_json = swa.format == "json";
    write_text(swa.out, as_json ? sweep_to_json(s).dump(2) + "\n" : sweep_to_csv(s));
    maybe_write_gnuplot(swa.gnuplot, swa.out, "aL");
    return s.partial ? kExitNumerical : kExitOk;
  }

  if (cmd_sweep_l->parsed()) {
    ProtocolParams base = swl.to_params(true);
    const double a_fixed = base.a;
    std::vector<double> grid;
    for (double Lm : log_grid(L_min_m, L_max_m, points_l, "sweep-l")) {
      grid.push_back(units::length_si_to_natural(Lm));
    }
    const SweepResult s = sweep_length(base, a_fixed, grid);
    const bool as_json = swl.format == "json";
    write_text(swl.out, as_json ? sweep_to_json(s).dump(2) + "\n" : sweep_to_csv(s));
    maybe_write_gnuplot(swl.gnuplot, swl.out, "L (m)");
    return s.partial ? kExitNumerical : kExitOk;
  }

  if (cmd_tune->parsed()) {
    ProtocolParams base = tun.to_params(true);
    const double lo = (L_lo_m > 0.0) ? units::length_si_to_natural(L_lo_m) : base.L;
    const double hi = (L_hi_m > 0.0) ? units::length_si_to_natural(L_hi_m) : 2.0 * base.L;
    const TuneResult t = tune_length(base, base.a, {lo, hi});
    json j{{"L_star", t.L_star},
           {"L_star_m", units::length_natural_to_si(t.L_star)},
           {"entropy_at_L_star", t.entropy_at_L_star},
           {"iterations", t.iterations},
           {"bracket", {t.bracket.first, t.bracket.second}},
           {"bracket_m",
            {units::length_natural_to_si(t.bracket.first),
             units::length_natural_to_si(t.bracket.second)}},
           {"note", t.note}};
    if (tun.format == "csv") {
      std::string csv = "L_star,L_star_m,entropy_at_L_star,iterations,bracket_lo,bracket_hi,note\n";
      csv += fmt12(t.L_star) + "," + fmt12(units::length_natural_to_si(t.L_star)) + "," +
             fmt12(t.entropy_at_L_star) + "," + std::to_string(t.iterations) + "," +
             fmt12(t.bracket.first) + "," + fmt12(t.bracket.second) + "," + t.note + "\n";
      write_text(tun.out, csv);
    } else {
      write_text(tun.out, j.dump(2) + "\n");
    }
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const BracketError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    for (const auto& [L, E] : e.scan) {
      std::fprintf(stderr, "  scan L=%.12g E=%.12g\n", L, E);
    }
    return kExitNumerical;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}

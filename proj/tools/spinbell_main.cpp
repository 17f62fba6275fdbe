// spinbell: heralded spin-photon Bell test simulator and feasibility planner.
//
// Subcommands: simulate, fig2, fig3, plan, cavity-sweep. Table outputs are
// CSV (or JSON with --format json); simulate and plan emit JSON reports.
// Writing to a file also writes a <file>.inputs.json sidecar with every
// resolved parameter. Identical invocations produce byte-identical files.
//
// Exit codes: 0 success, 2 validation error, 3 computation error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinbell/bell.hpp"
#include "spinbell/cavity.hpp"
#include "spinbell/diqkd.hpp"
#include "spinbell/feasibility.hpp"
#include "spinbell/kernels.hpp"
#include "spinbell/protocol.hpp"
#include "spinbell/qstate.hpp"

namespace {

using nlohmann::json;
using namespace spinbell;

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw validation_error("failed writing output file '" + path + "'");
}

void write_sidecar(const std::string& path, const std::string& subcommand, const json& inputs) {
  if (path == "-") return;
  json sidecar;
  sidecar["subcommand"] = subcommand;
  sidecar["parameters"] = inputs;
  write_text(path + ".inputs.json", sidecar.dump(2) + "\n");
}

std::string table_to_csv(const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += i + 1 < header.size() ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += fmt9(row[i]);
      out += i + 1 < row.size() ? ',' : '\n';
    }
  }
  return out;
}

std::string table_to_json(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[header[i]] = row[i];
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

void emit_table(const std::string& path, const std::string& format,
                const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  if (format == "csv") {
    write_text(path, table_to_csv(header, rows));
  } else if (format == "json") {
    write_text(path, table_to_json(header, rows));
  } else {
    throw validation_error("unknown format '" + format + "' (expected csv or json)");
  }
}

TransitionConvention parse_convention(const std::string& s) {
  if (s == "two" || s == "two_transition") return TransitionConvention::TwoTransition;
  if (s == "single" || s == "single_transition") return TransitionConvention::SingleTransition;
  throw validation_error("unknown convention '" + s + "' (expected two or single)");
}

std::string convention_name(TransitionConvention c) {
  return c == TransitionConvention::SingleTransition ? "single_transition" : "two_transition";
}

// Applies --set key=value overrides through the profile JSON schema so key
// names and value ranges are checked by the same code as config files.
PlatformProfile apply_overrides(const PlatformProfile& base,
                                const std::vector<std::string>& overrides) {
  if (overrides.empty()) return base;
  json j = json::parse(profile_to_json(base));
  for (const std::string& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw validation_error("--set expects key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (!j.contains(key)) {
      throw validation_error("--set: unknown profile key '" + key + "'");
    }
    if (j.at(key).is_string()) {
      j[key] = value;
    } else {
      try {
        std::size_t used = 0;
        const double num = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        j[key] = num;
      } catch (const std::exception&) {
        throw validation_error("--set: value for '" + key + "' is not a number: '" + value +
                               "'");
      }
    }
  }
  return profile_from_json(j.dump());
}

json settings_to_json(const MeasurementSettings& s) {
  const auto vec = [](const Vec3& v) { return json::array({v.x, v.y, v.z}); };
  return json{{"a0", vec(s.a0)}, {"a1", vec(s.a1)}, {"b0", vec(s.b0)}, {"b1", vec(s.b1)}};
}

json profile_to_json_value(const PlatformProfile& p) { return json::parse(profile_to_json(p)); }

struct CommonOptions {
  std::string output = "-";
  std::string format = "csv";
  bool degrees = false;
  std::string isa = "auto";

  double angle(double v) const { return degrees ? v * kPi / 180.0 : v; }

  kernels::Isa isa_value() const {
    if (isa == "auto") return kernels::Isa::Auto;
    if (isa == "scalar") return kernels::Isa::Scalar;
    if (isa == "avx2") return kernels::Isa::Avx2;
    throw validation_error("unknown --isa '" + isa + "' (expected auto, scalar or avx2)");
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Heralded spin-photon Bell test simulator and feasibility planner"};
  app.require_subcommand(0, 1);

  CommonOptions common;
  bool list_profiles = false;
  app.add_option("--output,-o", common.output, "Output path, '-' for stdout")
      ->capture_default_str();
  app.add_option("--format", common.format, "Table output format: csv or json")
      ->capture_default_str();
  app.add_flag("--degrees", common.degrees, "Interpret angle inputs as degrees");
  app.add_option("--isa", common.isa, "Kernel variant: auto, scalar or avx2")
      ->capture_default_str();
  app.add_flag("--list-profiles", list_profiles, "List bundled platform profiles and exit");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Heralded state, CHSH violation and boundary for one interaction setting");
  double sim_alpha_a = -1.0, sim_alpha_b = -1.0;
  double sim_mean = -1.0, sim_delta = 0.0;
  double sim_t_over_tau = 0.0;
  std::string sim_convention = "two";
  std::size_t sim_dirs = 1024;
  std::optional<double> sim_reference;
  simulate->add_option("--alpha-a", sim_alpha_a, "Interaction phase in arm A (radians)");
  simulate->add_option("--alpha-b", sim_alpha_b, "Interaction phase in arm B (radians)");
  simulate->add_option("--mean-alpha", sim_mean, "Mean interaction phase (radians)");
  simulate->add_option("--delta-alpha", sim_delta, "Half-difference of the phases (radians)");
  simulate->add_option("--t-over-tau", sim_t_over_tau, "Delay before measurement, units of tau")
      ->capture_default_str();
  simulate->add_option("--convention", sim_convention, "two or single (transition)")
      ->capture_default_str();
  simulate->add_option("--search-directions", sim_dirs, "Grid size of the numeric CHSH search")
      ->capture_default_str();
  simulate->add_option("--reference-chsh", sim_reference,
                       "External CHSH estimate echoed beside the computed values");

  // fig2
  auto* fig2 = app.add_subcommand(
      "fig2", "CHSH=2 contours: critical t/tau against mean interaction phase");
  std::size_t fig2_samples = 241;
  std::vector<double> fig2_deltas;
  fig2->add_option("--samples", fig2_samples, "Mean-phase samples on [0, pi/2]")
      ->capture_default_str();
  fig2->add_option("--delta-alphas", fig2_deltas,
                   "Comma-separated half-difference phases (radians)")
      ->delimiter(',');

  // fig3
  auto* fig3 = app.add_subcommand("fig3", "DI-QKD key rate against distance");
  std::string fig3_profile = "dots";
  double fig3_mean = 0.1 * kPi, fig3_delta = kPi / 50.0;
  std::string fig3_convention;
  double fig3_max_km = 150.0, fig3_step_km = 1.0;
  std::vector<double> fig3_distances;
  std::optional<double> fig3_chsh_override;
  std::vector<std::string> fig3_sets;
  fig3->add_option("--profile", fig3_profile, "Bundled profile name or JSON file")
      ->capture_default_str();
  fig3->add_option("--mean-alpha", fig3_mean, "Mean interaction phase (radians)")
      ->capture_default_str();
  fig3->add_option("--delta-alpha", fig3_delta, "Half-difference phase (radians)")
      ->capture_default_str();
  fig3->add_option("--convention", fig3_convention,
                   "two or single; defaults to the profile's convention");
  fig3->add_option("--max-km", fig3_max_km, "Largest distance")->capture_default_str();
  fig3->add_option("--step-km", fig3_step_km, "Distance step")->capture_default_str();
  fig3->add_option("--distances", fig3_distances, "Explicit comma-separated distances (km)")
      ->delimiter(',');
  fig3->add_option("--chsh-override", fig3_chsh_override,
                   "Use this CHSH value instead of the modeled one");
  fig3->add_option("--set", fig3_sets, "Override a profile key, key=value (repeatable)");

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Loophole-free feasibility report for a platform");
  std::string plan_profile;
  double plan_distance = -1.0, plan_runs = 1e5;
  double plan_mean = -1.0, plan_delta = 0.0;
  std::string plan_convention;
  double plan_t_logic_ns = 100.0, plan_dark_rate = 0.0;
  std::vector<std::string> plan_sets;
  plan_cmd->add_option("--profile", plan_profile, "Bundled profile name or JSON file")
      ->required();
  plan_cmd->add_option("--distance", plan_distance,
                       "Separation in meters; defaults to c*delta_t rounded up to 1 m");
  plan_cmd->add_option("--runs", plan_runs, "Heralded runs to acquire")->capture_default_str();
  plan_cmd->add_option("--mean-alpha", plan_mean,
                       "Mean interaction phase; defaults to the profile's alpha_bar");
  plan_cmd->add_option("--delta-alpha", plan_delta, "Half-difference phase (radians)")
      ->capture_default_str();
  plan_cmd->add_option("--convention", plan_convention,
                       "two or single; defaults to the profile's convention");
  plan_cmd->add_option("--t-logic-ns", plan_t_logic_ns, "Detection/logic delay (ns)")
      ->capture_default_str();
  plan_cmd->add_option("--dark-count-rate", plan_dark_rate, "Detector dark-count rate (Hz)")
      ->capture_default_str();
  plan_cmd->add_option("--set", plan_sets, "Override a profile key, key=value (repeatable)");

  // cavity-sweep
  auto* sweep = app.add_subcommand(
      "cavity-sweep", "Fixed-kappa_T coupling-ratio sweep of the maximum Faraday rotation");
  std::string sweep_profile = "low-q";
  std::vector<double> sweep_ratios;
  std::size_t sweep_points = 10001;
  std::vector<std::string> sweep_sets;
  sweep->add_option("--profile", sweep_profile, "Bundled profile name or JSON file")
      ->capture_default_str();
  sweep->add_option("--ratios", sweep_ratios, "Comma-separated kappa/kappa_s ratios")
      ->delimiter(',');
  sweep->add_option("--points", sweep_points, "Coarse grid points per frequency window")
      ->capture_default_str();
  sweep->add_option("--set", sweep_sets, "Override a profile key, key=value (repeatable)");

  for (CLI::App* sub : {simulate, fig2, fig3, plan_cmd, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list_profiles) {
    std::string out;
    for (const PlatformProfile& p : builtin_profiles()) out += p.name + "\n";
    write_text(common.output, out);
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  if (*simulate) {
    const bool has_ab = simulate->count("--alpha-a") || simulate->count("--alpha-b");
    const bool has_md = simulate->count("--mean-alpha") || simulate->count("--delta-alpha");
    if (has_ab && has_md) {
      throw validation_error(
          "simulate: pass either --alpha-a/--alpha-b or --mean-alpha/--delta-alpha");
    }
    if (has_ab && (simulate->count("--alpha-a") == 0 || simulate->count("--alpha-b") == 0)) {
      throw validation_error("simulate: both --alpha-a and --alpha-b are required");
    }
    if (!has_ab && !has_md) {
      throw validation_error(
          "simulate: pass --alpha-a/--alpha-b or --mean-alpha/--delta-alpha");
    }
    const TransitionConvention conv = parse_convention(sim_convention);
    const InteractionParams params =
        has_md ? InteractionParams::from_mean_delta(common.angle(sim_mean),
                                                    common.angle(sim_delta), conv)
               : InteractionParams(common.angle(sim_alpha_a), common.angle(sim_alpha_b), conv);
    if (!(sim_t_over_tau >= 0.0)) throw validation_error("simulate: --t-over-tau must be >= 0");

    const HeraldResult herald = evolve_and_herald(params);
    const EffectiveAngles eff = params.effective();
    const DensityMatrix rho =
        decohere(herald.state, DecoherenceParams(sim_t_over_tau, 1.0));
    const HorodeckiResult horo = horodecki_max(rho);
    const SearchResult search = chsh_max_search(rho, sim_dirs, common.isa_value());

    json report;
    report["inputs"] = {{"alpha_a_rad", params.alpha_a()},
                        {"alpha_b_rad", params.alpha_b()},
                        {"convention", convention_name(conv)},
                        {"t_over_tau", sim_t_over_tau}};
    report["effective"] = {{"mean_alpha_rad", eff.mean_alpha},
                           {"delta_alpha_rad", eff.delta_alpha},
                           {"herald_norm", eff.herald_norm()}};
    report["herald_probability"] = herald.herald_probability;
    json amps = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      amps.push_back({herald.state.amp(i).real(), herald.state.amp(i).imag()});
    }
    report["state"]["amplitudes_uu_ud_du_dd"] = amps;
    const PureState bells[4] = {bell_phi_plus(), bell_phi_minus(), bell_psi_plus(),
                                bell_psi_minus()};
    const char* bell_names[4] = {"phi_plus", "phi_minus", "psi_plus", "psi_minus"};
    for (int b = 0; b < 4; ++b) {
      const Complex c = bells[b].inner(herald.state);
      report["state"]["bell_coefficients"][bell_names[b]] = {c.real(), c.imag()};
    }
    report["concurrence"] = concurrence(herald.state);
    report["chsh"] = {{"max_value", horo.max_value},
                      {"violating", horo.max_value > 2.0},
                      {"optimal_settings", settings_to_json(horo.optimal)},
                      {"search_value", search.value}};
    report["violation_boundary"] = {
        {"closed_form", violation_boundary(eff.mean_alpha, eff.delta_alpha)},
        {"bisection", violation_boundary_bisect(herald.state)}};
    if (sim_reference) report["reference_chsh"] = *sim_reference;

    write_text(common.output, report.dump(2) + "\n");
    write_sidecar(common.output, "simulate", report["inputs"]);
    return 0;
  }

  if (*fig2) {
    const std::vector<double> deltas = [&] {
      if (fig2_deltas.empty()) return default_delta_alphas();
      std::vector<double> out;
      for (const double d : fig2_deltas) out.push_back(common.angle(d));
      return out;
    }();
    const std::vector<double> grid = default_mean_alpha_grid(fig2_samples);
    std::vector<std::vector<double>> rows;
    for (const Figure2Row& r : figure2_curves(deltas, grid)) {
      rows.push_back({r.delta_alpha, r.mean_alpha, r.critical_t_over_tau});
    }
    emit_table(common.output, common.format,
               {"delta_alpha_rad", "mean_alpha_rad", "critical_t_over_tau"}, rows);
    json inputs;
    inputs["delta_alphas_rad"] = deltas;
    inputs["samples"] = fig2_samples;
    write_sidecar(common.output, "fig2", inputs);
    return 0;
  }

  if (*fig3) {
    PlatformProfile profile = apply_overrides(load_profile(fig3_profile), fig3_sets);
    const TransitionConvention conv = fig3->count("--convention")
                                          ? parse_convention(fig3_convention)
                                          : profile.convention;
    const InteractionParams params = InteractionParams::from_mean_delta(
        common.angle(fig3_mean), common.angle(fig3_delta), conv);
    std::vector<double> distances = fig3_distances;
    if (distances.empty()) {
      if (!(fig3_step_km > 0.0) || !(fig3_max_km >= 0.0)) {
        throw validation_error("fig3: --step-km must be positive and --max-km non-negative");
      }
      for (double km = 0.0; km <= fig3_max_km + 1e-9; km += fig3_step_km) distances.push_back(km);
    }
    std::vector<std::vector<double>> rows;
    for (const RateCurvePoint& p : figure3_sweep(profile, params, distances, fig3_chsh_override)) {
      rows.push_back({p.distance_km, p.eta_t, p.herald_rate, p.fractional_key_rate,
                      p.absolute_rate});
    }
    emit_table(common.output, common.format,
               {"distance_km", "eta_t", "herald_rate_hz", "key_rate_bits_per_herald",
                "key_rate_bits_per_s"},
               rows);
    json inputs;
    inputs["profile"] = profile_to_json_value(profile);
    inputs["mean_alpha_rad"] = common.angle(fig3_mean);
    inputs["delta_alpha_rad"] = common.angle(fig3_delta);
    inputs["convention"] = convention_name(conv);
    inputs["distances_km"] = distances;
    if (fig3_chsh_override) inputs["chsh_override"] = *fig3_chsh_override;
    write_sidecar(common.output, "fig3", inputs);
    return 0;
  }

  if (*plan_cmd) {
    PlatformProfile profile = apply_overrides(load_profile(plan_profile), plan_sets);
    const TransitionConvention conv = plan_cmd->count("--convention")
                                          ? parse_convention(plan_convention)
                                          : profile.convention;
    const double mean = plan_cmd->count("--mean-alpha") ? common.angle(plan_mean)
                                                        : profile.alpha_bar;
    const InteractionParams params =
        InteractionParams::from_mean_delta(mean, common.angle(plan_delta), conv);
    const double distance = plan_cmd->count("--distance")
                                ? plan_distance
                                : std::max(1.0, std::ceil(min_separation(profile.delta_t)));
    PlanOptions options;
    options.t_logic = plan_t_logic_ns * 1e-9;
    options.dark_count_rate = plan_dark_rate;
    const FeasibilityReport r = plan(profile, params, distance, plan_runs, options);

    json report;
    report["profile"] = profile_to_json_value(profile);
    report["interaction"] = {{"alpha_a_rad", params.alpha_a()},
                             {"alpha_b_rad", params.alpha_b()},
                             {"convention", convention_name(conv)}};
    report["min_d_m"] = r.min_d;
    report["distance_m"] = r.d;
    report["t_delay_s"] = r.t_delay;
    report["t_double_readout_s"] = r.t_double_readout;
    report["t_used_s"] = r.t_used;
    report["t_over_tau"] = r.t_over_tau;
    report["readout_bound_s"] = r.readout_bound;
    report["chsh_expected"] =
        std::isfinite(r.chsh_expected) ? json(r.chsh_expected) : json(nullptr);
    report["herald_probability"] = r.herald_prob;
    report["herald_probability_two_transition"] = r.herald_prob_two_transition;
    report["herald_probability_single_transition"] = r.herald_prob_single_transition;
    report["herald_rate_hz"] = r.herald_rate;
    report["n_runs"] = r.n_runs;
    report["acquisition_time_s"] = r.acquisition_time;
    report["dark_count_warning"] = r.dark_count_warning;
    for (const ConstraintCheck& c : r.constraints) report["constraints_ok"][c.name] = c.ok;
    report["all_constraints_ok"] = r.all_constraints_ok();
    if (!r.errors.empty()) report["errors"] = r.errors;

    write_text(common.output, report.dump(2) + "\n");
    json inputs;
    inputs["profile"] = profile_to_json_value(profile);
    inputs["interaction"] = report["interaction"];
    inputs["distance_m"] = distance;
    inputs["n_runs"] = plan_runs;
    inputs["t_logic_s"] = options.t_logic;
    inputs["dark_count_rate_hz"] = options.dark_count_rate;
    write_sidecar(common.output, "plan", inputs);
    return 0;
  }

  if (*sweep) {
    PlatformProfile profile = apply_overrides(load_profile(sweep_profile), sweep_sets);
    const std::vector<double> ratios =
        sweep_ratios.empty() ? default_kappa_ratios() : sweep_ratios;
    std::vector<std::vector<double>> rows;
    for (const KappaRatioRow& r :
         kappa_ratio_sweep(profile.cavity, ratios, sweep_points, common.isa_value())) {
      rows.push_back({r.ratio, r.omega_at_max, r.sin_rotation_max, r.r_hot_abs, r.r_cold_abs});
    }
    emit_table(common.output, common.format,
               {"ratio", "omega_at_max_rad_s", "sin_rotation_max", "r_hot_abs", "r_cold_abs"},
               rows);
    json inputs;
    inputs["profile"] = profile_to_json_value(profile);
    inputs["ratios"] = ratios;
    inputs["points"] = sweep_points;
    write_sidecar(common.output, "cavity-sweep", inputs);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const computation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

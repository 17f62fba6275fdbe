#include "spinbell/feasibility.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "spinbell/bell.hpp"

namespace spinbell {

namespace {

using nlohmann::json;

constexpr double kLnSqrt2 = 0.34657359027997264;
// Table values are quoted to 1-2 significant digits; the readout check
// tolerates that much rounding.
constexpr double kReadoutGrace = 0.85;

double mhz_over_2pi_to_rad_s(double v) { return kTwoPi * v * 1e6; }

double require_number(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw validation_error(std::string("profile config: missing key '") + key + "'");
  }
  if (!j.at(key).is_number()) {
    throw validation_error(std::string("profile config: key '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw validation_error(std::string("profile config: missing key '") + key + "'");
  }
  if (!j.at(key).is_string()) {
    throw validation_error(std::string("profile config: key '") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

const char* const kProfileKeys[] = {
    "name",          "g_mhz_over_2pi", "kappa_mhz_over_2pi", "kappa_s_mhz_over_2pi",
    "gamma_mhz_over_2pi", "alpha_bar_rad", "tau_us",         "delta_t_ns",
    "convention",    "lambda_nm",      "loss_db_per_km",     "eta_c",
    "eta_d",         "source_rate_hz", "pair_probability"};

PlatformProfile profile_from_parsed(const json& j) {
  if (!j.is_object()) throw validation_error("profile config: expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : kProfileKeys) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw validation_error("profile config: unknown key '" + item.key() + "'");
    }
  }

  const double lambda = require_number(j, "lambda_nm") * 1e-9;
  if (!(lambda > 0.0)) throw validation_error("profile config: lambda_nm must be positive");
  const double omega_c = kTwoPi * kSpeedOfLight / lambda;

  const std::string conv = require_string(j, "convention");
  TransitionConvention convention;
  if (conv == "two_transition") {
    convention = TransitionConvention::TwoTransition;
  } else if (conv == "single_transition") {
    convention = TransitionConvention::SingleTransition;
  } else {
    throw validation_error(
        "profile config: convention must be 'two_transition' or 'single_transition', got '" +
        conv + "'");
  }

  PlatformProfile p{
      require_string(j, "name"),
      CavityParams(mhz_over_2pi_to_rad_s(require_number(j, "g_mhz_over_2pi")),
                   mhz_over_2pi_to_rad_s(require_number(j, "kappa_mhz_over_2pi")),
                   mhz_over_2pi_to_rad_s(require_number(j, "kappa_s_mhz_over_2pi")),
                   mhz_over_2pi_to_rad_s(require_number(j, "gamma_mhz_over_2pi")), omega_c,
                   omega_c),
      require_number(j, "alpha_bar_rad"),
      require_number(j, "tau_us") * 1e-6,
      require_number(j, "delta_t_ns") * 1e-9,
      convention,
      lambda,
      require_number(j, "loss_db_per_km"),
      require_number(j, "eta_c"),
      require_number(j, "eta_d"),
      require_number(j, "source_rate_hz"),
      require_number(j, "pair_probability")};
  p.validate();
  return p;
}

// Table-1 platforms plus the channel and source figures used in the text.
const char* const kBuiltinProfilesJson = R"json([
  {
    "name": "atoms",
    "g_mhz_over_2pi": 5.0,
    "kappa_mhz_over_2pi": 3.0,
    "kappa_s_mhz_over_2pi": 0.5,
    "gamma_mhz_over_2pi": 3.0,
    "alpha_bar_rad": 1.2566370614359172,
    "tau_us": 10000.0,
    "delta_t_ns": 500.0,
    "convention": "single_transition",
    "lambda_nm": 780.0,
    "loss_db_per_km": 3.0,
    "eta_c": 0.3,
    "eta_d": 0.3,
    "source_rate_hz": 1.0e6,
    "pair_probability": 1.0
  },
  {
    "name": "nv",
    "g_mhz_over_2pi": 100.0,
    "kappa_mhz_over_2pi": 13.0,
    "kappa_s_mhz_over_2pi": 39.0,
    "gamma_mhz_over_2pi": 0.6,
    "alpha_bar_rad": 0.3141592653589793,
    "tau_us": 1000.0,
    "delta_t_ns": 300.0,
    "convention": "single_transition",
    "lambda_nm": 637.0,
    "loss_db_per_km": 3.0,
    "eta_c": 0.3,
    "eta_d": 0.3,
    "source_rate_hz": 1.0e6,
    "pair_probability": 1.0
  },
  {
    "name": "dots",
    "g_mhz_over_2pi": 5000.0,
    "kappa_mhz_over_2pi": 3000.0,
    "kappa_s_mhz_over_2pi": 7000.0,
    "gamma_mhz_over_2pi": 1000.0,
    "alpha_bar_rad": 0.3141592653589793,
    "tau_us": 1.0,
    "delta_t_ns": 1.5,
    "convention": "two_transition",
    "lambda_nm": 1300.0,
    "loss_db_per_km": 0.3,
    "eta_c": 0.3,
    "eta_d": 0.5,
    "source_rate_hz": 1.0e10,
    "pair_probability": 1.0e-3
  },
  {
    "name": "low-q",
    "g_mhz_over_2pi": 3300.0,
    "kappa_mhz_over_2pi": 440000.0,
    "kappa_s_mhz_over_2pi": 220000.0,
    "gamma_mhz_over_2pi": 6.0,
    "alpha_bar_rad": 1.2566370614359172,
    "tau_us": 1000.0,
    "delta_t_ns": 1000.0,
    "convention": "single_transition",
    "lambda_nm": 700.0,
    "loss_db_per_km": 3.0,
    "eta_c": 0.3,
    "eta_d": 0.3,
    "source_rate_hz": 1.0e6,
    "pair_probability": 1.0
  }
])json";

}  // namespace

void PlatformProfile::validate() const {
  if (name.empty()) throw validation_error("profile: name must not be empty");
  if (!(tau > 0.0)) throw validation_error("profile: tau must be positive");
  if (!(delta_t > 0.0)) throw validation_error("profile: delta_t must be positive");
  if (!(lambda > 0.0)) throw validation_error("profile: lambda must be positive");
  if (!(loss_db_per_km >= 0.0)) throw validation_error("profile: loss must be non-negative");
  if (!(eta_c >= 0.0 && eta_c <= 1.0)) throw validation_error("profile: eta_c must be in [0,1]");
  if (!(eta_d >= 0.0 && eta_d <= 1.0)) throw validation_error("profile: eta_d must be in [0,1]");
  if (!(source_rate > 0.0)) throw validation_error("profile: source_rate must be positive");
  if (!(pair_probability > 0.0 && pair_probability <= 1.0)) {
    throw validation_error("profile: pair_probability must be in (0,1]");
  }
  if (!(alpha_bar >= 0.0 && alpha_bar < kTwoPi)) {
    throw validation_error("profile: alpha_bar must lie in [0, 2*pi)");
  }
}

PlatformProfile profile_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("profile config: JSON parse error: ") + e.what());
  }
  return profile_from_parsed(j);
}

std::string profile_to_json(const PlatformProfile& p) {
  json j;
  j["name"] = p.name;
  j["g_mhz_over_2pi"] = p.cavity.g / (kTwoPi * 1e6);
  j["kappa_mhz_over_2pi"] = p.cavity.kappa / (kTwoPi * 1e6);
  j["kappa_s_mhz_over_2pi"] = p.cavity.kappa_s / (kTwoPi * 1e6);
  j["gamma_mhz_over_2pi"] = p.cavity.gamma / (kTwoPi * 1e6);
  j["alpha_bar_rad"] = p.alpha_bar;
  j["tau_us"] = p.tau * 1e6;
  j["delta_t_ns"] = p.delta_t * 1e9;
  j["convention"] = p.convention == TransitionConvention::SingleTransition
                        ? "single_transition"
                        : "two_transition";
  j["lambda_nm"] = p.lambda * 1e9;
  j["loss_db_per_km"] = p.loss_db_per_km;
  j["eta_c"] = p.eta_c;
  j["eta_d"] = p.eta_d;
  j["source_rate_hz"] = p.source_rate;
  j["pair_probability"] = p.pair_probability;
  return j.dump(2);
}

const std::vector<PlatformProfile>& builtin_profiles() {
  static const std::vector<PlatformProfile> profiles = [] {
    std::vector<PlatformProfile> out;
    for (const json& j : json::parse(kBuiltinProfilesJson)) {
      out.push_back(profile_from_parsed(j));
    }
    return out;
  }();
  return profiles;
}

PlatformProfile load_profile(const std::string& name_or_path) {
  for (const PlatformProfile& p : builtin_profiles()) {
    if (p.name == name_or_path) return p;
  }
  if (!std::filesystem::exists(name_or_path)) {
    std::string names;
    for (const PlatformProfile& p : builtin_profiles()) {
      names += names.empty() ? p.name : ", " + p.name;
    }
    throw validation_error("unknown profile '" + name_or_path +
                           "' (bundled profiles: " + names + "; or pass a JSON file path)");
  }
  std::ifstream in(name_or_path);
  if (!in) throw validation_error("cannot open profile file '" + name_or_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return profile_from_json(buf.str());
}

double min_separation(double delta_t) {
  if (!(delta_t >= 0.0)) throw validation_error("min_separation: delta_t must be non-negative");
  return kSpeedOfLight * delta_t;
}

double measurement_delay(double d, double t_logic) {
  if (!(d >= 0.0)) throw validation_error("measurement_delay: distance must be non-negative");
  if (!(t_logic >= 0.0)) throw validation_error("measurement_delay: t_logic must be non-negative");
  return d / kSpeedOfLight + t_logic;
}

double channel_transmission(double d, double loss_db_per_km) {
  if (!(d >= 0.0)) throw validation_error("channel_transmission: distance must be non-negative");
  if (!(loss_db_per_km >= 0.0)) {
    throw validation_error("channel_transmission: loss must be non-negative");
  }
  return std::pow(10.0, -loss_db_per_km * (d / 1000.0) / 10.0);
}

double herald_probability(const PlatformProfile& profile, const InteractionParams& interaction,
                          double d) {
  const double n_eff = interaction.effective().herald_norm();
  if (n_eff <= 0.0) {
    throw computation_error("herald_probability: effective herald norm N is zero");
  }
  const double eta_t = channel_transmission(d, profile.loss_db_per_km);
  return eta_t * profile.eta_c * profile.eta_c * profile.eta_d * profile.eta_d * n_eff / 4.0;
}

bool FeasibilityReport::all_constraints_ok() const {
  for (const ConstraintCheck& c : constraints) {
    if (!c.ok) return false;
  }
  return true;
}

FeasibilityReport plan(const PlatformProfile& profile, const InteractionParams& interaction,
                       double d, double n_runs, const PlanOptions& options) {
  profile.validate();
  if (!(d >= 0.0)) throw validation_error("plan: distance must be non-negative");
  if (!(n_runs > 0.0)) throw validation_error("plan: n_runs must be positive");

  FeasibilityReport r;
  r.min_d = min_separation(profile.delta_t);
  r.d = d;
  r.t_delay = measurement_delay(d, options.t_logic);
  r.t_double_readout = 2.0 * profile.delta_t;
  r.t_used = std::max(r.t_delay, r.t_double_readout);
  r.t_over_tau = r.t_used / profile.tau;
  r.n_runs = n_runs;
  r.chsh_expected = std::numeric_limits<double>::quiet_NaN();

  try {
    const ReadoutModel readout{1.0, profile.alpha_bar, profile.cavity.cavity_lifetime(), 0.0,
                               CouplingRegime::StrongCoupling, 1.0};
    r.readout_bound = readout_time_min(readout);
  } catch (const std::exception& e) {
    r.readout_bound = std::numeric_limits<double>::quiet_NaN();
    r.errors.emplace_back(std::string("readout bound: ") + e.what());
  }

  try {
    const HeraldResult herald = evolve_and_herald(interaction);
    const DensityMatrix rho = decohere(herald.state, DecoherenceParams(r.t_over_tau, 1.0));
    r.chsh_expected = horodecki_max(rho).max_value;
    r.herald_prob = herald_probability(profile, interaction, d);
    r.herald_rate = profile.source_rate * profile.pair_probability * r.herald_prob;
    r.acquisition_time = r.herald_rate > 0.0 ? n_runs / r.herald_rate
                                             : std::numeric_limits<double>::infinity();
  } catch (const std::exception& e) {
    r.errors.emplace_back(std::string("heralding: ") + e.what());
    r.herald_prob = 0.0;
    r.herald_rate = 0.0;
    r.acquisition_time = std::numeric_limits<double>::infinity();
  }

  // The quoted interaction angle read under both conventions, since platform
  // tables do not always say whether halving was already applied.
  for (const TransitionConvention conv :
       {TransitionConvention::TwoTransition, TransitionConvention::SingleTransition}) {
    double p_conv = 0.0;
    try {
      const InteractionParams as_conv(interaction.alpha_a(), interaction.alpha_b(), conv);
      p_conv = herald_probability(profile, as_conv, d);
    } catch (const std::exception&) {
      p_conv = 0.0;
    }
    (conv == TransitionConvention::TwoTransition ? r.herald_prob_two_transition
                                                 : r.herald_prob_single_transition) = p_conv;
  }

  r.dark_count_warning = options.dark_count_rate > 0.0 &&
                         r.herald_rate < 1e4 * options.dark_count_rate;

  const double light_time = d / kSpeedOfLight;
  r.constraints.push_back({"delta_t_below_light_time", profile.delta_t < light_time});
  r.constraints.push_back({"delay_below_decoherence_threshold", r.t_over_tau < kLnSqrt2});
  r.constraints.push_back({"readout_time_within_bound",
                           std::isfinite(r.readout_bound) &&
                               profile.delta_t >= kReadoutGrace * r.readout_bound});
  return r;
}

}  // namespace spinbell

#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"

namespace shockprof {

inline const char* version_string() { return "0.1.0"; }

// bad or inconsistent run configuration; the CLI maps this to exit code 1
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One run, fully described. Parsed from a flat JSON object; flags override
// keys. All numeric inputs arrive at double precision by the config grammar.
struct RunConfig {
  Model model = Model::HB;
  Real gamma = 0;
  Real R = 1;
  Real M0sq = 0;
  bool gauge_q0 = false;  // upstream given as q0 instead of M0sq
  Real delta = 0;
  std::vector<Real> params;
  bool epsilon_input = false;  // params were given as epsilon and rescaled
  Branch branch = Branch::NearZero;
  int grid_n = 512;
  QuadratureSpec quad{};
  std::string out_dir;  // empty: artifact commands use the working directory
};

namespace detail {

inline std::string lower(std::string s) {
  for (char& c : s) c = (char)std::tolower((unsigned char)c);
  return s;
}

inline Real want_number(const nlohmann::json& j, const std::string& key) {
  if (!j.at(key).is_number()) throw ConfigError("config: key '" + key + "' must be a number");
  return (Real)j.at(key).get<double>();
}

}  // namespace detail

inline Model parse_model_name(const std::string& s) {
  std::string m = detail::lower(s);
  if (m == "hb") return Model::HB;
  if (m == "hp") return Model::HP;
  if (m == "vb") return Model::VB;
  if (m == "vp") return Model::VP;
  throw ConfigError("config: unknown model '" + s + "' (want hb, hp, vb, or vp)");
}

inline Branch parse_branch_name(const std::string& s) {
  std::string b = detail::lower(s);
  if (b == "near-zero") return Branch::NearZero;
  if (b == "divergent") return Branch::Divergent;
  throw ConfigError("config: unknown branch '" + s + "' (want near-zero or divergent)");
}

inline GasKind gas_kind_for(Model model) {
  return (model == Model::HB || model == Model::VB) ? GasKind::BarotropicIsentropic
                                                    : GasKind::PolytropicFull;
}

inline Jump jump_for(Model model) {
  switch (model) {
    case Model::HB: return Jump::MassBernoulli;
    case Model::VB: return Jump::MassMomentum;
    default: return Jump::FullEuler;
  }
}

inline RunConfig parse_run_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a flat object");
  static const std::vector<std::string> known = {
      "model", "gamma", "R",       "M0sq",    "q0",      "delta",     "param",
      "params", "param_start", "param_factor", "param_count", "epsilon", "branch",
      "grid_n", "rel_tol", "abs_tol", "max_depth", "out"};
  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("config: unknown key '" + key + "'");
    if (j.at(key).is_object() || (j.at(key).is_array() && key != "params"))
      throw ConfigError("config: key '" + key + "' breaks the flat grammar");
  }

  RunConfig cfg;
  if (!j.contains("model") || !j.at("model").is_string())
    throw ConfigError("config: 'model' (string) is required");
  cfg.model = parse_model_name(j.at("model").get<std::string>());

  if (!j.contains("gamma")) throw ConfigError("config: 'gamma' is required");
  cfg.gamma = detail::want_number(j, "gamma");
  if (!(cfg.gamma > 1)) throw ConfigError("config: gamma must exceed 1");
  if (j.contains("R")) {
    cfg.R = detail::want_number(j, "R");
    if (!(cfg.R > 0)) throw ConfigError("config: R must be positive");
  }

  bool barotropic = gas_kind_for(cfg.model) == GasKind::BarotropicIsentropic;
  if (j.contains("M0sq") == j.contains("q0"))
    throw ConfigError("config: give exactly one of 'M0sq' or 'q0'");
  if (j.contains("q0")) {
    if (!barotropic) throw ConfigError("config: the q0 gauge applies to barotropic models only");
    cfg.gauge_q0 = true;
    Real q0 = detail::want_number(j, "q0");
    if (!(q0 > 0)) throw ConfigError("config: q0 must be positive");
    cfg.M0sq = upstream_M0sq_from_q0(GasLaw{gas_kind_for(cfg.model), cfg.gamma, cfg.R}, q0);
  } else {
    cfg.M0sq = detail::want_number(j, "M0sq");
  }

  if (j.contains("delta")) {
    cfg.delta = detail::want_number(j, "delta");
    if (cfg.model == Model::HB || cfg.model == Model::HP)
      throw ConfigError("config: 'delta' applies to the temperature-viscous models only");
    if (cfg.delta < 0) throw ConfigError("config: delta must be nonnegative");
  }

  int styles = (int)j.contains("param") + (int)j.contains("params") +
               (int)j.contains("param_start") + (int)j.contains("epsilon");
  if (styles != 1)
    throw ConfigError(
        "config: give exactly one of 'param', 'params', 'epsilon', or the geometric spec");
  if (j.contains("param")) {
    cfg.params = {detail::want_number(j, "param")};
  } else if (j.contains("epsilon")) {
    if (cfg.model == Model::VB || cfg.model == Model::VP)
      throw ConfigError("config: 'epsilon' applies to the heat-conduction models only");
    cfg.epsilon_input = true;
    cfg.params = {detail::want_number(j, "epsilon") / (cfg.gamma - 1)};
  } else if (j.contains("params")) {
    if (!j.at("params").is_array() || j.at("params").empty())
      throw ConfigError("config: 'params' must be a non-empty array");
    for (const auto& v : j.at("params")) {
      if (!v.is_number()) throw ConfigError("config: 'params' entries must be numbers");
      cfg.params.push_back((Real)v.get<double>());
    }
  } else {
    if (!j.contains("param_factor") || !j.contains("param_count"))
      throw ConfigError("config: geometric spec needs param_start, param_factor, param_count");
    Real start = detail::want_number(j, "param_start");
    Real factor = detail::want_number(j, "param_factor");
    if (!j.at("param_count").is_number_integer())
      throw ConfigError("config: param_count must be an integer");
    int count = j.at("param_count").get<int>();
    if (count < 1 || count > 10000) throw ConfigError("config: param_count out of range");
    if (!(factor > 0)) throw ConfigError("config: param_factor must be positive");
    Real p = start;
    for (int i = 0; i < count; ++i, p *= factor) cfg.params.push_back(p);
  }
  for (Real p : cfg.params)
    if (!(p > 0) || !std::isfinite((double)p))
      throw ConfigError("config: every parameter value must be positive and finite");

  if (j.contains("branch")) {
    if (!j.at("branch").is_string()) throw ConfigError("config: 'branch' must be a string");
    cfg.branch = parse_branch_name(j.at("branch").get<std::string>());
  }
  if (cfg.branch == Branch::Divergent && !(cfg.model == Model::VP && cfg.delta > 1))
    throw ConfigError("config: the divergent branch exists only for model vp with delta > 1");

  if (j.contains("grid_n")) {
    if (!j.at("grid_n").is_number_integer()) throw ConfigError("config: grid_n must be an integer");
    cfg.grid_n = j.at("grid_n").get<int>();
    if (cfg.grid_n < 32 || cfg.grid_n > 100000)
      throw ConfigError("config: grid_n must lie in [32, 100000]");
  }
  if (j.contains("rel_tol")) cfg.quad.rel_tol = detail::want_number(j, "rel_tol");
  if (j.contains("abs_tol")) cfg.quad.abs_tol = detail::want_number(j, "abs_tol");
  if (j.contains("max_depth")) {
    if (!j.at("max_depth").is_number_integer())
      throw ConfigError("config: max_depth must be an integer");
    cfg.quad.max_depth = j.at("max_depth").get<int>();
  }
  try {
    cfg.quad.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw ConfigError("config: 'out' must be a string");
    cfg.out_dir = j.at("out").get<std::string>();
  }
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: parse failure: ") + e.what());
  }
  return parse_run_config(j);
}

// Builds the jump pair and reduction for a config. Throws SolverError
// (NotSupersonic and friends) on inadmissible input; the CLI maps those to
// exit code 2.
inline ReducedModel build_model(const RunConfig& cfg) {
  GasLaw law{gas_kind_for(cfg.model), cfg.gamma, cfg.R};
  ShockPair pair = make_pair(law, jump_for(cfg.model), cfg.M0sq);
  AdmissibilityReport rep = admissibility(pair, cfg.model);
  if (!rep.ok)
    fail(rep.mach_window && !rep.weight_positive ? Errc::DegenerateWeight : Errc::NotSupersonic,
         "inadmissible configuration: " + rep.detail);
  return make_reduced(pair, cfg.model, cfg.delta);
}

// Config echo with stable (alphabetical) key order, used by the manifest.
inline nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json e;
  e["model"] = detail::lower(model_name(cfg.model));
  e["gamma"] = (double)cfg.gamma;
  e["R"] = (double)cfg.R;
  e["M0sq"] = (double)cfg.M0sq;
  e["gauge"] = cfg.gauge_q0 ? "q0" : "M0sq";
  if (cfg.model == Model::VB || cfg.model == Model::VP) e["delta"] = (double)cfg.delta;
  nlohmann::json ps = nlohmann::json::array();
  for (Real p : cfg.params) ps.push_back((double)p);
  e["params"] = ps;
  e["param_input"] = cfg.epsilon_input ? "epsilon" : "native";
  e["branch"] = branch_name(cfg.branch);
  e["grid_n"] = cfg.grid_n;
  e["rel_tol"] = (double)cfg.quad.rel_tol;
  e["abs_tol"] = (double)cfg.quad.abs_tol;
  e["max_depth"] = cfg.quad.max_depth;
  return e;
}

}  // namespace shockprof

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <shockprof/shockprof.hpp>

using namespace shockprof;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
  f << content;
  if (!f) throw std::runtime_error("short write to " + p.string());
}

int report_solver_error(const SolverError& e, int code) {
  std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
  return code;
}

std::string model_key(Model m) { return detail::lower(model_name(m)); }

Branch effective_branch(const RunConfig& cfg) {
  return cfg.model == Model::HB ? Branch::NearFStar : cfg.branch;
}

const AlphaRoot* pick_branch(const std::vector<AlphaRoot>& roots, Branch want) {
  for (const AlphaRoot& r : roots)
    if (r.branch == want) return &r;
  return nullptr;
}

Real require_single_param(const RunConfig& cfg) {
  if (cfg.params.size() != 1)
    throw ConfigError("this command needs exactly one parameter value (use --param)");
  return cfg.params[0];
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
  fs::create_directories(dir);
  return dir;
}

Csv profile_table(const RunConfig& cfg, const Profile& pr) {
  Csv t;
  t.header = {"x", "w", "u", "rho", "p"};
  if (pr.has_T) t.header.push_back("T");
  for (size_t i = 0; i < pr.x.size(); ++i) {
    std::vector<std::string> row = {fmt_real(pr.x[i]), fmt_real(pr.w[i]), fmt_real(pr.u[i]),
                                    fmt_real(pr.rho[i]), fmt_real(pr.p[i])};
    if (pr.has_T) row.push_back(fmt_real(pr.T[i]));
    t.rows.push_back(std::move(row));
  }
  t.footers.push_back("model = " + model_key(cfg.model));
  if (cfg.model == Model::VB || cfg.model == Model::VP)
    t.footers.push_back("delta = " + fmt_real(cfg.delta));
  t.footers.push_back("param = " + fmt_real(pr.param));
  t.footers.push_back("branch = " + std::string(branch_name(effective_branch(cfg))));
  t.footers.push_back("alpha = " + fmt_real(pr.alpha));
  t.footers.push_back("midpoint_x = " + fmt_real(pr.midpoint_x));
  if (cfg.branch == Branch::Divergent) {
    Real pmax = 0;
    for (Real p : pr.p) pmax = std::max(pmax, p);
    t.footers.push_back("max_pressure = " + fmt_real(pmax));
  }
  if (pr.nonphysical_pressure) t.footers.push_back("nonphysical_pressure = true");
  return t;
}

std::string profile_svg(const RunConfig& cfg, const Profile& pr) {
  std::vector<Series> ss;
  ss.push_back({"w", pr.x, pr.w});
  ss.push_back({"u", pr.x, pr.u});
  ss.push_back({"rho", pr.x, pr.rho});
  ss.push_back({"p", pr.x, pr.p});
  if (pr.has_T) ss.push_back({"T", pr.x, pr.T});
  PlotOptions opt;
  opt.title = model_key(cfg.model) + " profile, param " + fmt_real(pr.param);
  return svg_plot(ss, opt);
}

// ---------------------------------------------------------------------------

int cmd_states(const RunConfig& cfg) {
  GasLaw law{gas_kind_for(cfg.model), cfg.gamma, cfg.R};
  ShockPair pair;
  try {
    pair = make_pair(law, jump_for(cfg.model), cfg.M0sq);
  } catch (const SolverError& e) {
    return report_solver_error(e, 2);
  }
  AdmissibilityReport rep = admissibility(pair, cfg.model);

  auto line = [](const char* name, const FlowState& s) {
    std::cout << name << "  u = " << fmt_real(s.u) << "  rho = " << fmt_real(s.rho)
              << "  p = " << fmt_real(s.p) << "  M = " << fmt_real(s.M) << "\n";
  };
  std::cout << "model " << model_key(cfg.model) << ", gamma = " << fmt_real(cfg.gamma)
            << ", M0sq = " << fmt_real(cfg.M0sq) << "\n";
  line("upstream  ", pair.U0);
  line("downstream", pair.U1);
  std::cout << "A = " << fmt_real(pair.A) << "  P0 = " << fmt_real(pair.P0)
            << "  Phi0 = " << fmt_real(pair.Phi0) << "\n";
  std::cout << "admissible = " << (rep.ok ? "yes" : "no");
  if (!rep.ok) std::cout << "  (" << rep.detail << ")";
  std::cout << "\n";

  nlohmann::json j;
  j["config"] = config_echo(cfg);
  j["upstream"] = {{"u", (double)pair.U0.u}, {"rho", (double)pair.U0.rho},
                   {"p", (double)pair.U0.p}, {"M", (double)pair.U0.M}};
  j["downstream"] = {{"u", (double)pair.U1.u}, {"rho", (double)pair.U1.rho},
                     {"p", (double)pair.U1.p}, {"M", (double)pair.U1.M}};
  j["A"] = (double)pair.A;
  j["P0"] = (double)pair.P0;
  j["Phi0"] = (double)pair.Phi0;
  j["admissible"] = rep.ok;
  j["flags"] = {{"pair_matches", rep.pair_matches},
                {"mach_window", rep.mach_window},
                {"weight_positive", rep.weight_positive}};
  if (!rep.ok) j["detail"] = rep.detail;

  if (rep.ok) {
    ReducedModel m = make_reduced(pair, cfg.model, cfg.delta);
    if (cfg.model == Model::HB) {
      std::cout << "sonic plateau w* = " << fmt_real(m.critical().w_star) << "\n";
      j["plateau_w"] = (double)m.critical().w_star;
    } else {
      Real X = limit_location(m);
      std::cout << "limit location X = " << fmt_real(X) << "\n";
      j["limit_location"] = (double)X;
    }
  }

  if (!cfg.out_dir.empty()) {
    fs::path dir = ensure_out_dir(cfg);
    write_file(dir / "states.json", j.dump(2) + "\n");
    std::cout << "wrote " << (dir / "states.json").string() << "\n";
  }
  return rep.ok ? 0 : 2;
}

int cmd_solve(const RunConfig& cfg) {
  Real param = require_single_param(cfg);
  ReducedModel m;
  try {
    m = build_model(cfg);
  } catch (const SolverError& e) {
    return report_solver_error(e, 2);
  }
  try {
    Branch want = effective_branch(cfg);
    std::vector<AlphaRoot> roots = solve_alpha(m, param, cfg.quad);
    const AlphaRoot* r = pick_branch(roots, want);
    if (!r)
      fail(Errc::NoRootInDomain,
           std::string("no ") + branch_name(want) + " root at this parameter");
    Profile pr = reconstruct(m, param, r->alpha, cfg.grid_n - 1, cfg.quad);

    fs::path dir = ensure_out_dir(cfg);
    write_file(dir / "profile.csv", csv_to_string(profile_table(cfg, pr)));
    write_file(dir / "profile.svg", profile_svg(cfg, pr));
    std::cout << "model " << model_key(cfg.model) << "  param " << fmt_real(param) << "  branch "
              << branch_name(want) << "\n";
    std::cout << "alpha = " << fmt_real(r->alpha) << "  residual = " << fmt_real(r->residual)
              << "  midpoint_x = " << fmt_real(pr.midpoint_x) << "\n";
    std::cout << "wrote " << (dir / "profile.csv").string() << " and "
              << (dir / "profile.svg").string() << "\n";
    return 0;
  } catch (const SolverError& e) {
    return report_solver_error(e, 3);
  }
}

int cmd_sweep(const RunConfig& cfg) {
  ReducedModel m;
  try {
    m = build_model(cfg);
  } catch (const SolverError& e) {
    return report_solver_error(e, 2);
  }
  Branch want = effective_branch(cfg);
  fs::path dir = ensure_out_dir(cfg);

  SweepResult sw;
  std::vector<Profile> profiles;
  std::vector<double> ms;
  for (Real p : cfg.params) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult one = run_sweep(m, {p}, want, cfg.grid_n - 1, cfg.quad, &profiles);
    auto t1 = std::chrono::steady_clock::now();
    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    if (sw.rows.empty()) sw = one;
    else sw.rows.push_back(one.rows[0]);
  }

  Csv conv;
  conv.header = {"param", "ok",         "error",       "branch",          "alpha",
                 "residual", "midpoint_x", "l1_to_limit", "plateau_measure", "max_pressure"};
  std::vector<std::string> paths;
  int n_ok = 0;
  for (size_t i = 0; i < sw.rows.size(); ++i) {
    const SweepRow& row = sw.rows[i];
    conv.rows.push_back({fmt_real(row.param), row.ok ? "1" : "0", row.error,
                         row.ok ? branch_name(row.branch) : "", fmt_real(row.alpha),
                         fmt_real(row.residual), fmt_real(row.midpoint_x),
                         fmt_real(row.l1_to_limit), fmt_real(row.plateau_measure),
                         fmt_real(row.max_pressure)});
    if (!row.ok) {
      paths.push_back("");
      std::cout << "param " << fmt_real(row.param) << ": " << row.error << "\n";
      continue;
    }
    ++n_ok;
    char name[32];
    std::snprintf(name, sizeof name, "profile_%03zu.csv", i);
    write_file(dir / name, csv_to_string(profile_table(cfg, profiles[i])));
    paths.push_back(name);
    std::cout << "param " << fmt_real(row.param) << ": alpha = " << fmt_real(row.alpha)
              << "  midpoint_x = " << fmt_real(row.midpoint_x) << "\n";
  }
  if (std::isfinite((double)sw.limit_location))
    conv.footers.push_back("limit_location = " + fmt_real(sw.limit_location));
  write_file(dir / "convergence.csv", csv_to_string(conv));

  Series l1{"l1_to_limit", {}, {}}, mid{"midpoint_x", {}, {}}, pl{"plateau_measure", {}, {}};
  for (const SweepRow& row : sw.rows) {
    if (!row.ok) continue;
    l1.x.push_back(row.param);
    l1.y.push_back(row.l1_to_limit);
    mid.x.push_back(row.param);
    mid.y.push_back(row.midpoint_x);
    pl.x.push_back(row.param);
    pl.y.push_back(row.plateau_measure);
  }
  std::vector<Series> ss = {l1, mid};
  if (cfg.model == Model::HB) ss.push_back(pl);
  PlotOptions opt;
  opt.log_x = true;
  opt.title = model_key(cfg.model) + " sweep toward the vanishing-dissipation limit";
  write_file(dir / "convergence.svg", n_ok > 0 ? svg_plot(ss, opt) : svg_plot({}, opt));

  nlohmann::json timings;
  timings["per_param_ms"] = ms;
  double total = 0;
  for (double v : ms) total += v;
  timings["total_ms"] = total;
  write_file(dir / "timings.json", timings.dump(2) + "\n");

  nlohmann::json man;
  man["command"] = "sweep";
  man["version"] = version_string();
  man["config"] = config_echo(cfg);
  man["branch_effective"] = branch_name(want);
  if (std::isfinite((double)sw.limit_alpha)) man["limit_alpha"] = (double)sw.limit_alpha;
  if (std::isfinite((double)sw.limit_location))
    man["limit_location"] = (double)sw.limit_location;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < sw.rows.size(); ++i) {
    const SweepRow& row = sw.rows[i];
    nlohmann::json rj;
    rj["param"] = (double)row.param;
    rj["ok"] = row.ok;
    if (!row.ok) rj["error"] = row.error;
    else {
      rj["alpha"] = (double)row.alpha;
      rj["branch"] = branch_name(row.branch);
      rj["midpoint_x"] = (double)row.midpoint_x;
      rj["profile_csv"] = paths[i];
    }
    rows.push_back(rj);
  }
  man["rows"] = rows;
  man["artifacts"] = {{"convergence_csv", "convergence.csv"},
                      {"convergence_svg", "convergence.svg"},
                      {"timings", "timings.json"}};
  write_file(dir / "manifest.json", man.dump(2) + "\n");  // manifest last

  std::cout << n_ok << "/" << sw.rows.size() << " parameters solved; manifest at "
            << (dir / "manifest.json").string() << "\n";
  return n_ok > 0 ? 0 : 3;
}

int cmd_oracle(const RunConfig& cfg) {
  Real param = require_single_param(cfg);
  ReducedModel m;
  try {
    m = build_model(cfg);
  } catch (const SolverError& e) {
    return report_solver_error(e, 2);
  }
  if (param < 1e-3L) {
    std::cout << "SKIPPED: param " << fmt_real(param)
              << " is below the shooting stiffness cutoff 0.001; the quadrature path is the "
                 "only practical one there\n";
    return 0;
  }
  try {
    Branch want = effective_branch(cfg);
    std::vector<AlphaRoot> roots = solve_alpha(m, param, cfg.quad);
    const AlphaRoot* r = pick_branch(roots, want);
    if (!r)
      fail(Errc::NoRootInDomain,
           std::string("no ") + branch_name(want) + " root at this parameter");
    Profile pq = reconstruct(m, param, r->alpha, cfg.grid_n - 1, cfg.quad);
    ShootResult sr = shoot_ivp_oracle(m, param, r->alpha, 1e-12L, cfg.grid_n - 1);

    Real s_q = std::log(std::fabs(r->alpha - m.alpha_edge));
    Real s_s = std::log(std::fabs(sr.alpha - m.alpha_edge));
    Real alpha_gap = std::fabs(std::expm1(s_s - s_q));
    Real linf = 0;
    for (size_t i = 0; i < pq.w.size(); ++i)
      linf = std::max(linf, std::fabs(pq.w[i] - sr.profile.w[i]));
    Real mid_gap = std::fabs(pq.midpoint_x - sr.profile.midpoint_x);

    bool ok_alpha = alpha_gap < 1e-6L;
    bool ok_linf = linf < 1e-5L;
    bool ok_mid = mid_gap < 1e-4L;
    auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    std::cout << "alpha: quadrature " << fmt_real(r->alpha) << " vs shooting "
              << fmt_real(sr.alpha) << "\n";
    std::cout << "alpha relative gap = " << fmt_real(alpha_gap) << " (threshold 1e-6) "
              << verdict(ok_alpha) << "\n";
    std::cout << "profile Linf gap = " << fmt_real(linf) << " (threshold 1e-5) "
              << verdict(ok_linf) << "\n";
    std::cout << "midpoint gap = " << fmt_real(mid_gap) << " (threshold 1e-4) "
              << verdict(ok_mid) << "\n";
    std::cout << "terminal gap = " << fmt_real(sr.terminal_gap) << ", " << sr.steps
              << " integrator steps\n";

    if (!cfg.out_dir.empty()) {
      nlohmann::json j;
      j["config"] = config_echo(cfg);
      j["param"] = (double)param;
      j["alpha_quadrature"] = (double)r->alpha;
      j["alpha_shooting"] = (double)sr.alpha;
      j["alpha_rel_gap"] = (double)alpha_gap;
      j["profile_linf_gap"] = (double)linf;
      j["midpoint_gap"] = (double)mid_gap;
      j["terminal_gap"] = (double)sr.terminal_gap;
      j["steps"] = sr.steps;
      j["pass"] = ok_alpha && ok_linf && ok_mid;
      fs::path dir = ensure_out_dir(cfg);
      write_file(dir / "oracle.json", j.dump(2) + "\n");
      std::cout << "wrote " << (dir / "oracle.json").string() << "\n";
    }
    return ok_alpha && ok_linf && ok_mid ? 0 : 4;
  } catch (const SolverError& e) {
    return report_solver_error(e, 3);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady shock profiles for dissipative gas models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  struct Flags {
    std::string config;
    std::optional<double> param;
    std::optional<std::string> branch;
    std::optional<std::string> out;
  };
  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "run configuration file (flat JSON)")->required();
    sub->add_option("--param", flags.param, "override: single dissipation parameter value");
    sub->add_option("--branch", flags.branch, "override: near-zero|divergent");
    sub->add_option("--out", flags.out, "override: output directory");
  };
  CLI::App* states = app.add_subcommand("states", "print the endpoint states and admissibility");
  CLI::App* solve = app.add_subcommand("solve", "solve one profile and write CSV + SVG");
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with manifest and plots");
  CLI::App* oracle = app.add_subcommand("oracle", "cross-check quadrature against shooting");
  for (CLI::App* sub : {states, solve, sweep, oracle}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg = load_run_config(flags.config);
    if (flags.param) cfg.params = {(Real)*flags.param};
    if (flags.branch) cfg.branch = parse_branch_name(*flags.branch);
    if (flags.out) cfg.out_dir = *flags.out;
    if (cfg.branch == Branch::Divergent && !(cfg.model == Model::VP && cfg.delta > 1))
      throw ConfigError("the divergent branch exists only for model vp with delta > 1");
    for (Real p : cfg.params)
      if (!(p > 0)) throw ConfigError("parameter values must be positive");

    if (states->parsed()) return cmd_states(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    return cmd_oracle(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

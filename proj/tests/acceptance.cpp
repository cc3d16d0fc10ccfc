// Acceptance suite: one line per criterion, exit 0 only if all pass.
// Runs against the library directly except the determinism check, which
// spawns the command line tool twice.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <shockprof/shockprof.hpp>

namespace fs = std::filesystem;
using namespace shockprof;

namespace {

int n_fail = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
  std::printf("criterion %2d: %-52s %s%s%s\n", idx, what, ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  ", detail.c_str());
  if (!ok) ++n_fail;
}

std::string fmt(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6Lg", v);
  return buf;
}

ReducedModel baro_model(Model model, Real delta) {
  GasLaw law{GasKind::BarotropicIsentropic, 1.4L};
  return make_reduced(make_pair(law, jump_for(model), upstream_M0sq_from_q0(law, 1.5L)),
                      model, delta);
}

ReducedModel poly_model(Model model, Real delta) {
  GasLaw law{GasKind::PolytropicFull, 1.4L};
  return make_reduced(make_pair(law, Jump::FullEuler, 1.2L), model, delta);
}

// --------------------------------------------------------------------------

void criterion_rh() {
  std::mt19937 rng(20260822);
  std::uniform_real_distribution<double> U(0, 1);
  Real worst_res = 0, worst_mach = 0;
  for (Jump jump : {Jump::MassMomentum, Jump::MassBernoulli, Jump::FullEuler}) {
    for (int k = 0; k < 100; ++k) {
      Real gamma = 1.05L + 1.9L * (Real)U(rng);
      GasLaw law{jump == Jump::FullEuler ? GasKind::PolytropicFull
                                         : GasKind::BarotropicIsentropic,
                 gamma};
      Real M0sq = 1.02L + 4.0L * (Real)U(rng);
      ShockPair pr = make_pair(law, jump, M0sq);
      Real mass = std::fabs(pr.U1.rho * pr.U1.u - pr.U0.rho * pr.U0.u);
      worst_res = std::max(worst_res, mass);
      if (jump != Jump::MassBernoulli) {
        Real mom = std::fabs((pr.U1.u + pr.U1.p) - (pr.U0.u + pr.U0.p));
        worst_res = std::max(worst_res, mom);
      }
      if (jump != Jump::MassMomentum) {
        Real phi1 = bernoulli(law, pr.U1.u, pr.U1.p);
        worst_res = std::max(worst_res, std::fabs(phi1 - pr.Phi0) / pr.Phi0);
      }
      if (jump == Jump::FullEuler) {
        Real M1sq_ref = ((gamma - 1) * M0sq + 2) / (2 * gamma * M0sq - (gamma - 1));
        Real got = pr.U1.M * pr.U1.M;
        worst_mach = std::max(worst_mach, std::fabs(got - M1sq_ref) / M1sq_ref);
      }
    }
  }
  bool ok = worst_res < 1e-12L && worst_mach < 1e-10L;
  report(1, "jump relations and Mach ratio closed form", ok,
         "residual " + fmt(worst_res) + ", mach " + fmt(worst_mach));
}

void criterion_hp_convergence() {
  ReducedModel m = poly_model(Model::HP, 0);
  SweepResult sw = run_sweep(m, {1e-1L, 3e-2L, 1e-2L, 3e-3L, 1e-3L});
  bool ok = true;
  for (size_t i = 0; i < sw.rows.size(); ++i) {
    ok = ok && sw.rows[i].ok;
    if (i) ok = ok && sw.rows[i].l1_to_limit < sw.rows[i - 1].l1_to_limit;
  }
  Real gap = std::fabs(sw.rows.back().midpoint_x - sw.limit_location);
  ok = ok && gap < 2e-2L;
  report(2, "conductive polytropic sweep converges to X", ok,
         "midpoint gap " + fmt(gap) + ", L1 " + fmt(sw.rows.back().l1_to_limit));
}

void criterion_hp_boundary() {
  GasLaw law{GasKind::PolytropicFull, 1.4L};
  Real bound = (3 * 1.4L - 1) / (1.4L * (3 - 1.4L));
  Real X = limit_location(make_reduced(make_pair(law, Jump::FullEuler, bound), Model::HP));
  bool at_one = std::fabs(X - 1) < 1e-12L;
  bool flagged = false;
  try {
    limit_location(make_reduced(make_pair(law, Jump::FullEuler, bound + 0.1L), Model::HP));
  } catch (const SolverError& e) {
    flagged = e.code() == Errc::XOutOfUnitInterval;
  }
  report(3, "conductive polytropic boundary location", at_one && flagged,
         "X(bound) = " + fmt(X));
}

void criterion_hb_plateau() {
  ReducedModel m = baro_model(Model::HB, 0);
  std::vector<Real> params = {1e-1L, 3e-2L, 1e-2L, 3e-3L, 1e-3L};
  SweepResult sw = run_sweep(m, params);
  Real T = m.range(), fstar = m.critical().f_star;
  bool ok = true;
  for (size_t i = 0; i < sw.rows.size(); ++i) {
    const SweepRow& r = sw.rows[i];
    ok = ok && r.ok;
    ok = ok && r.alpha > -fstar && r.alpha < params[i] * T - fstar;
  }
  Real plat = sw.rows.back().plateau_measure;
  Real l1 = sw.rows.back().l1_to_limit;
  Real wstar = m.critical().w_star;
  Real depth = std::min(wstar - m.w_in, m.w_out - wstar);
  ok = ok && plat > 0.8L && l1 > 0.5L * depth;
  report(4, "conductive barotropic plateau blocks the step limit", ok,
         "plateau " + fmt(plat) + ", min step distance " + fmt(l1));
}

void criterion_vb_location() {
  bool ok = true;
  Real worst = 0;
  for (Real delta : {0.5L, 1.0L, 2.0L}) {
    ReducedModel m = baro_model(Model::VB, delta);
    SweepResult sw = run_sweep(m, {1e-1L, 1e-2L, 1e-3L, 1e-4L}, Branch::NearZero, 64);
    for (const SweepRow& r : sw.rows) ok = ok && r.ok;
    Real gap = std::fabs(sw.rows.back().midpoint_x - sw.limit_location);
    worst = std::max(worst, gap);
    ok = ok && gap < 1e-2L;
  }
  // limit_location itself cross-checks the q-form against the Mach form to
  // 1e-12 on every call; delta = 0 must drop the power factor exactly
  ReducedModel m0 = baro_model(Model::VB, 0);
  Real X0 = limit_location(m0);
  Real gammav = 1.4L;
  Real q0 = 1.5L, q1 = m0.pair.U1.u;
  Real bare = 1 / (1 + std::pow(q0 / q1, -(gammav + 1)) *
                           (std::pow(q0, gammav + 1) - gammav) /
                           (gammav - std::pow(q1, gammav + 1)));
  ok = ok && std::fabs(X0 - bare) < 1e-15L;
  report(5, "viscous barotropic locations across delta", ok, "worst gap " + fmt(worst));
}

void criterion_vp_roots() {
  bool ok = true;
  for (Real delta : {0.5L, 1.0L}) {
    ReducedModel m = poly_model(Model::VP, delta);
    for (Real mu : {1e-2L, 1e-3L}) {
      std::vector<AlphaRoot> roots = solve_alpha(m, mu);
      ok = ok && roots.size() == 1 && roots[0].branch == Branch::NearZero;
    }
  }
  ReducedModel m2 = poly_model(Model::VP, 2);
  std::vector<Real> mus = {1e-2L, 5e-3L, 2.5e-3L};
  Real prev1 = 0, prev2 = 0;
  for (size_t i = 0; i < mus.size(); ++i) {
    std::vector<AlphaRoot> roots = solve_alpha(m2, mus[i]);
    ok = ok && roots.size() == 2;
    Real a1 = 0, a2 = 0;
    for (const AlphaRoot& r : roots) {
      if (r.branch == Branch::NearZero) a1 = std::fabs(r.alpha);
      if (r.branch == Branch::Divergent) a2 = std::fabs(r.alpha);
    }
    ok = ok && a1 > 0 && a2 > 0;
    if (i) ok = ok && a1 < prev1 && a2 > prev2;
    prev1 = a1;
    prev2 = a2;
  }
  SweepResult near = run_sweep(m2, mus, Branch::NearZero, 64);
  Real gap = std::fabs(near.rows.back().midpoint_x - near.limit_location);
  ok = ok && gap < 2e-2L;
  SweepResult div = run_sweep(m2, mus, Branch::Divergent, 64);
  for (size_t i = 1; i < div.rows.size(); ++i)
    ok = ok && div.rows[i].ok && div.rows[i].max_pressure > div.rows[i - 1].max_pressure;
  report(6, "temperature-viscosity root structure", ok, "midpoint gap " + fmt(gap));
}

void criterion_oracle() {
  struct Case {
    const char* name;
    ReducedModel m;
  };
  std::vector<Case> cases = {{"hb", baro_model(Model::HB, 0)},
                             {"hp", poly_model(Model::HP, 0)},
                             {"vb", baro_model(Model::VB, 1)},
                             {"vp d=0.5", poly_model(Model::VP, 0.5L)},
                             {"vp d=2", poly_model(Model::VP, 2)}};
  bool ok = true;
  Real worst_a = 0, worst_w = 0;
  std::string where;
  for (const Case& c : cases) {
    for (Real param : {1e-1L, 1e-2L, 1e-3L}) {
      try {
        std::vector<AlphaRoot> roots = solve_alpha(c.m, param);
        const AlphaRoot* r = nullptr;
        Branch want = c.m.model == Model::HB ? Branch::NearFStar : Branch::NearZero;
        for (const AlphaRoot& cand : roots)
          if (cand.branch == want) r = &cand;
        if (!r) throw std::runtime_error("missing root");
        Profile pq = reconstruct(c.m, param, r->alpha, 256);
        ShootResult sr = shoot_ivp_oracle(c.m, param, r->alpha, 1e-12L, 256);
        Real s_q = std::log(std::fabs(r->alpha - c.m.alpha_edge));
        Real s_s = std::log(std::fabs(sr.alpha - c.m.alpha_edge));
        Real agap = std::fabs(std::expm1(s_s - s_q));
        Real linf = 0;
        for (size_t i = 0; i < pq.w.size(); ++i)
          linf = std::max(linf, std::fabs(pq.w[i] - sr.profile.w[i]));
        if (agap > worst_a) worst_a = agap;
        if (linf > worst_w) {
          worst_w = linf;
          where = std::string(c.name) + " @ " + fmt(param);
        }
        if (!(agap < 1e-6L && linf < 1e-5L)) ok = false;
      } catch (const std::exception& e) {
        ok = false;
        where = std::string(c.name) + " @ " + fmt(param) + ": " + e.what();
      }
    }
  }
  report(7, "shooting oracle agrees with the quadrature path", ok,
         "worst alpha gap " + fmt(worst_a) + ", worst Linf " + fmt(worst_w) +
             (where.empty() ? "" : " (" + where + ")"));
}

void criterion_ratio_limits() {
  bool ok = true;
  ReducedModel hp = poly_model(Model::HP, 0);
  Real target_hp = (hp.pair.A - 2 * hp.pair.U0.p) / (hp.pair.A - 2 * hp.pair.U1.p);
  Real got_hp = 0;
  for (Real k : {1e-2L, 1e-3L, 1e-4L}) {
    AlphaRoot r = solve_alpha(hp, k)[0];
    got_hp = ratio_I(reconstruct(hp, k, r.alpha, 64));
  }
  ok = ok && std::fabs(got_hp - target_hp) / target_hp < 0.02L;

  ReducedModel vb = baro_model(Model::VB, 1);
  Real q0 = vb.pair.U0.u, q1 = vb.pair.U1.u;
  Real target_vb =
      -vb.f_deriv(q1) / vb.f_deriv(q0) * std::pow(q1 / q0, vb.delta);
  Real got_vb = 0;
  for (Real mu : {1e-2L, 1e-3L, 1e-4L}) {
    AlphaRoot r = solve_alpha(vb, mu)[0];
    got_vb = ratio_I(reconstruct(vb, mu, r.alpha, 64));
  }
  ok = ok && std::fabs(got_vb - target_vb) / target_vb < 0.02L;
  report(8, "midpoint odds ratios reach their closed forms", ok,
         "hp " + fmt(got_hp) + " vs " + fmt(target_hp) + ", vb " + fmt(got_vb) + " vs " +
             fmt(target_vb));
}

void criterion_monotone_random() {
  std::mt19937 rng(987654321);
  std::uniform_real_distribution<double> U(0, 1);
  int emitted = 0, violations = 0;
  int guard = 0;
  while (emitted < 50 && ++guard < 400) {
    int which = (int)(U(rng) * 4);
    Model model = which == 0 ? Model::HB : which == 1 ? Model::HP
                             : which == 2              ? Model::VB
                                                       : Model::VP;
    Real gamma = 1.1L + 1.2L * (Real)U(rng);
    Real delta = (model == Model::VB || model == Model::VP) ? (Real)(2.0 * U(rng)) : 0;
    Real param = std::pow((Real)10, -(Real)(3.0 * U(rng)));  // 1e-3 .. 1
    try {
      GasLaw law{gas_kind_for(model), gamma};
      Real M0sq;
      if (model == Model::HP) {
        Real bound = (3 * gamma - 1) / (gamma * (3 - gamma));
        M0sq = 1 + (bound - 1) * (0.05L + 0.9L * (Real)U(rng));
      } else {
        M0sq = 1.05L + 1.5L * (Real)U(rng);
      }
      ShockPair pair = make_pair(law, jump_for(model), M0sq);
      if (!admissibility(pair, model).ok) continue;
      ReducedModel m = make_reduced(pair, model, delta);
      std::vector<AlphaRoot> roots = solve_alpha(m, param);
      Branch want = m.model == Model::HB ? Branch::NearFStar : Branch::NearZero;
      const AlphaRoot* r = nullptr;
      for (const AlphaRoot& cand : roots)
        if (cand.branch == want) r = &cand;
      if (!r) continue;  // no root at this parameter is not a violation
      Profile pr = reconstruct(m, param, r->alpha, 128);
      ++emitted;
      Real dir = m.dir();
      for (size_t i = 1; i < pr.w.size(); ++i) {
        if ((pr.w[i] - pr.w[i - 1]) * dir < 0) ++violations;
        if (pr.u[i] > pr.u[i - 1]) ++violations;          // velocity falls
        if (pr.rho[i] < pr.rho[i - 1]) ++violations;      // density rises
        if (pr.p[i] < pr.p[i - 1] - 1e-18L) ++violations; // pressure rises
      }
    } catch (const SolverError&) {
      continue;  // inadmissible or rootless corners are not violations
    }
  }
  report(9, "randomized profiles stay monotone", emitted == 50 && violations == 0,
         std::to_string(emitted) + " profiles, " + std::to_string(violations) +
             " violations");
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void criterion_determinism() {
  fs::path root = fs::temp_directory_path() / "shockprof_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  fs::path cfg = root / "sweep.json";
  {
    std::ofstream f(cfg);
    f << "{\"model\": \"vb\", \"gamma\": 1.4, \"M0sq\": 1.8901270004860825, \"delta\": 1, "
         "\"params\": [0.1, 0.03], \"grid_n\": 128}\n";
  }
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    std::string cmd = std::string(SHOCKPROF_CLI_PATH) + " sweep --config " + cfg.string() +
                      " --out " + (root / ("run" + std::to_string(run))).string() +
                      " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) ok = false;
  }
  size_t checked = 0;
  if (ok)
    for (const char* name : {"convergence.csv", "convergence.svg", "manifest.json",
                             "profile_000.csv", "profile_001.csv"}) {
      std::string a = slurp(root / "run0" / name), b = slurp(root / "run1" / name);
      if (a.empty() || a != b) ok = false;
      ++checked;
    }
  report(10, "sweep artifacts are byte-identical across runs", ok,
         std::to_string(checked) + " files compared");
}

}  // namespace

int main() {
  criterion_rh();
  criterion_hp_convergence();
  criterion_hp_boundary();
  criterion_hb_plateau();
  criterion_vb_location();
  criterion_vp_roots();
  criterion_oracle();
  criterion_ratio_limits();
  criterion_monotone_random();
  criterion_determinism();
  if (n_fail) {
    std::printf("%d criterion(s) failed\n", n_fail);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

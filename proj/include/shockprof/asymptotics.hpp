#pragma once

#include <optional>
#include <string>
#include <vector>

#include "profile.hpp"

namespace shockprof {

// alpha in the vanishing-dissipation limit: the barotropic heat-conduction
// root pins to -f(v*), the near-zero branches collapse onto the domain edge,
// and the divergent branch runs away (negative infinity sentinel).
inline Real limit_alpha(const ReducedModel& m, Branch branch = Branch::NearZero) {
  if (m.model == Model::HB) return m.alpha_edge;
  if (branch == Branch::Divergent) return -std::numeric_limits<Real>::infinity();
  return 0;
}

// Closed-form limit shock location. Each model has two algebraic forms (one
// in the velocity ratios, one in Mach numbers); both are evaluated and must
// agree, which guards the formulas against transcription slips.
inline Real limit_location(const ReducedModel& m) {
  Real g = m.pair.law.gamma;
  Real q0 = m.pair.U0.u, q1 = m.pair.U1.u;
  Real M0sq = m.pair.M0 * m.pair.M0, M1sq = m.pair.M1 * m.pair.M1;
  Real X1 = 0, X2 = 0;
  switch (m.model) {
    case Model::HB:
      throw std::invalid_argument(
          "limit_location: the heat-conductive barotropic limit is a plateau, not a step");
    case Model::HP: {
      Real A = m.pair.A, p0 = m.pair.U0.p, p1 = m.pair.U1.p;
      X1 = (A - 2 * p0) / 2 / (A - p0 - p1);
      X2 = (g + 1) / (2 * (g - 1)) * (g * M0sq - 1) / (g * M0sq + 1);
      break;
    }
    case Model::VB: {
      Real d = m.delta;
      X1 = 1 / (1 + std::pow(q0 / q1, d - g - 1) * (std::pow(q0, g + 1) - g) /
                        (g - std::pow(q1, g + 1)));
      X2 = 1 / (1 + std::pow(M0sq / M1sq, d / (g + 1)) * (1 - 1 / M0sq) / (1 / M1sq - 1));
      break;
    }
    case Model::VP: {
      Real d = m.delta;
      Real Abar = (g + 1) / (g - 1);
      Real r = q1 / q0;
      X1 = 1 / (1 + std::pow((Abar - r) / (Abar - 1 / r), d) * r);
      X2 = 1 / (1 + std::pow(M0sq / M1sq, d) * std::pow(r, 1 + 2 * d));
      break;
    }
  }
  if (std::fabs(X1 - X2) > 1e-12L * std::max<Real>(1, std::fabs(X1)))
    throw std::logic_error("limit_location: algebraic forms disagree");
  if (X1 > 1 + 1e-12L)
    fail(Errc::XOutOfUnitInterval,
         "limit location beyond the right edge (outside the model's window)");
  return X1;
}

// L1 distance between the sampled profile and a step at x_step, trapezoid on
// the uniform grid, in the profile variable.
inline Real l1_to_step(const Profile& pr, Real x_step) {
  Real win = pr.w.front(), wout = pr.w.back();
  size_t n = pr.x.size();
  Real sum = 0;
  for (size_t i = 0; i < n; ++i) {
    Real step = pr.x[i] < x_step ? win : wout;
    Real d = std::fabs(pr.w[i] - step);
    sum += (i == 0 || i + 1 == n) ? d / 2 : d;
  }
  return sum / (Real)(n - 1);
}

// Fraction of samples sitting on the sonic plateau value.
inline Real plateau_measure(const Profile& pr, Real w_star, Real tol) {
  size_t hits = 0;
  for (Real w : pr.w)
    if (std::fabs(w - w_star) < tol) ++hits;
  return (Real)hits / (Real)pr.w.size();
}

struct SweepRow {
  Real param = 0;
  bool ok = false;
  std::string error;  // error name when not ok
  Real alpha = 0;
  Real residual = 0;
  Branch branch = Branch::NearZero;
  Real midpoint_x = 0;
  Real l1_to_limit = 0;       // min over the step family for the plateau model
  Real plateau_measure = 0;   // heat-conductive barotropic only
  Real max_pressure = 0;
  bool nonphysical_pressure = false;
};

struct SweepResult {
  Model model = Model::HB;
  Real delta = 0;
  Branch branch = Branch::NearZero;
  Real limit_alpha = 0;
  Real limit_location = 0;  // NaN when the limit is not a step
  std::vector<SweepRow> rows;
};

// Runs the solve + reconstruction for each parameter value and measures the
// distance to the vanishing-dissipation limit. Individual failures are
// recorded per row rather than aborting the sweep. When `profiles` is given
// it receives one entry per row (default-constructed on failure).
inline SweepResult run_sweep(const ReducedModel& m, const std::vector<Real>& params,
                             Branch want = Branch::NearZero, int n_samples = 512,
                             const QuadratureSpec& spec = {},
                             std::vector<Profile>* profiles = nullptr) {
  SweepResult out;
  out.model = m.model;
  out.delta = m.delta;
  out.branch = m.model == Model::HB ? Branch::NearFStar : want;
  out.limit_alpha = limit_alpha(m, out.branch);
  bool step_limit = m.model != Model::HB && out.branch != Branch::Divergent;
  out.limit_location =
      step_limit ? limit_location(m) : std::numeric_limits<Real>::quiet_NaN();

  for (Real param : params) {
    SweepRow row;
    row.param = param;
    Profile pr;
    try {
      std::vector<AlphaRoot> roots = solve_alpha(m, param, spec);
      const AlphaRoot* pick = nullptr;
      for (const AlphaRoot& r : roots)
        if (r.branch == out.branch) pick = &r;
      if (!pick)
        fail(Errc::NoRootInDomain, std::string("no ") + branch_name(out.branch) +
                                       " root at this parameter");
      row.alpha = pick->alpha;
      row.residual = pick->residual;
      row.branch = pick->branch;

      pr = reconstruct(m, param, row.alpha, n_samples, spec);
      row.midpoint_x = pr.midpoint_x;
      row.nonphysical_pressure = pr.nonphysical_pressure;
      for (Real p : pr.p) row.max_pressure = std::max(row.max_pressure, p);

      if (m.model == Model::HB) {
        Real tol_v = 0.01L * m.range();
        row.plateau_measure = plateau_measure(pr, m.critical().w_star, tol_v);
        Real best = std::numeric_limits<Real>::infinity();
        for (int k = 0; k <= 1000; ++k)
          best = std::min(best, l1_to_step(pr, (Real)k / 1000));
        row.l1_to_limit = best;
      } else if (step_limit) {
        row.l1_to_limit = l1_to_step(pr, out.limit_location);
      } else {
        row.l1_to_limit = std::numeric_limits<Real>::quiet_NaN();
      }
      row.ok = true;
    } catch (const SolverError& e) {
      row.error = errc_name(e.code());
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (profiles) profiles->push_back(row.ok ? std::move(pr) : Profile{});
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace shockprof

#pragma once

#include <cmath>
#include <string>

#include "core.hpp"
#include "rootfind.hpp"

namespace shockprof {

enum class GasKind { BarotropicIsentropic, PolytropicFull };
enum class Jump { FullEuler, MassBernoulli, MassMomentum };
enum class Model { HB, HP, VB, VP };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::HB: return "HB";
    case Model::HP: return "HP";
    case Model::VB: return "VB";
    case Model::VP: return "VP";
  }
  return "?";
}

struct GasLaw {
  GasKind kind;
  Real gamma;
  Real R = 1;  // enters only the VP x-scale and temperature output
};

// Everything is normalized to unit mass flux: rho*u = 1 on both sides.
struct FlowState {
  Real u;
  Real rho;
  Real p;
  Real M;
};

struct ShockPair {
  GasLaw law;
  Jump jump;
  FlowState U0;  // supersonic
  FlowState U1;  // subsonic
  Real A;        // rho0*q0^2 + p0 = q0 + p0
  Real P0;       // same constant under the Euler-system naming
  Real Phi0;     // Bernoulli constant
  Real M0;
  Real M1;
};

struct AdmissibilityReport {
  bool ok = false;
  bool pair_matches = false;   // jump/law combination is the one the model reduces
  bool mach_window = false;    // model-specific Mach-number condition
  bool weight_positive = true; // HP only: A - 2*p1 > 0
  std::string detail;
};

inline Real mach_sq(const GasLaw& law, Real u, Real rho, Real p) {
  return rho * u * u / (law.gamma * p);
}

// Bernoulli head at unit mass flux: p/rho = p*u.
inline Real bernoulli(const GasLaw& law, Real u, Real p) {
  return u * u / 2 + law.gamma / (law.gamma - 1) * p * u;
}

inline FlowState make_upstream(const GasLaw& law, Real M0sq) {
  if (!(M0sq > 1)) fail(Errc::NotSupersonic, "need M0^2 > 1, got " + std::to_string((double)M0sq));
  FlowState s{};
  if (law.kind == GasKind::BarotropicIsentropic) {
    // p = rho^gamma and rho = 1/u give M^2 = u^{gamma+1}/gamma.
    s.u = std::pow(law.gamma * M0sq, 1 / (law.gamma + 1));
    s.rho = 1 / s.u;
    s.p = std::pow(s.rho, law.gamma);
  } else {
    // Gauge choice: q0 = 1, rho0 = 1, so p0 alone carries the Mach number.
    s.u = 1;
    s.rho = 1;
    s.p = 1 / (law.gamma * M0sq);
  }
  s.M = std::sqrt(mach_sq(law, s.u, s.rho, s.p));
  return s;
}

// Barotropic sweeps are usually stated through q0; convert to the M0^2 gauge.
inline Real upstream_M0sq_from_q0(const GasLaw& law, Real q0) {
  return std::pow(q0, law.gamma + 1) / law.gamma;
}

namespace detail {

// Finds the subsonic root of a convex/concave scalar jump function on
// (0, w_crit) given jump(w_up) = 0 on the other side of the critical point.
template <class F, class DF>
Real subsonic_root(F&& f, DF&& df, Real w_crit, const char* what) {
  Real f_crit = f(w_crit);
  // Walk the left edge down until the jump function changes sign.
  Real lo = w_crit / 2;
  Real flo = f(lo);
  int guard = 0;
  while ((flo < 0) == (f_crit < 0) && guard++ < 200) {
    lo /= 2;
    flo = f(lo);
  }
  if ((flo < 0) == (f_crit < 0))
    fail(Errc::JumpRootNotFound, std::string(what) + ": no sign change below the critical point");
  RootResult r = bisect(f, lo, w_crit, flo, f_crit, (Real)1e-14L);
  // One Newton polish.
  Real x = r.x;
  Real d = df(x);
  if (d != 0) {
    Real step = f(x) / d;
    if (std::isfinite((double)step) && std::fabs(step) < w_crit) x -= step;
  }
  return x;
}

}  // namespace detail

inline ShockPair rh_downstream(const FlowState& U0, const GasLaw& law, Jump jump) {
  Real g = law.gamma;
  if (!(U0.M > 1)) fail(Errc::NotSupersonic, "upstream state is not supersonic");
  if ((jump == Jump::FullEuler) != (law.kind == GasKind::PolytropicFull))
    throw std::invalid_argument("rh_downstream: jump/law combination not supported");

  ShockPair pair{};
  pair.law = law;
  pair.jump = jump;
  pair.U0 = U0;
  Real q0 = U0.u;
  pair.A = q0 + U0.p;  // rho0*q0^2 + p0 with rho0*q0 = 1
  pair.P0 = pair.A;
  pair.Phi0 = bernoulli(law, q0, U0.p);

  Real q1 = 0;
  if (jump == Jump::MassBernoulli) {
    // Bernoulli head in u, barotropic: Phi(u) = u^2/2 + g/(g-1) u^{1-g}.
    auto f = [&](Real u) { return u * u / 2 + g / (g - 1) * std::pow(u, 1 - g) - pair.Phi0; };
    auto df = [&](Real u) { return u - g * std::pow(u, -g); };
    Real qstar = std::pow(g, 1 / (g + 1));
    q1 = detail::subsonic_root(f, df, qstar, "MassBernoulli");
  } else if (jump == Jump::MassMomentum) {
    auto f = [&](Real u) { return u + std::pow(u, -g) - (q0 + std::pow(q0, -g)); };
    auto df = [&](Real u) { return 1 - g * std::pow(u, -g - 1); };
    Real qstar = std::pow(g, 1 / (g + 1));
    q1 = detail::subsonic_root(f, df, qstar, "MassMomentum");
  } else {
    // f1(u) = (g+1)/2 u - g A + (g-1) Phi0 / u; roots q0 and q1, critical
    // point sqrt(q0 q1) in between.
    auto f = [&](Real u) { return (g + 1) / 2 * u - g * pair.A + (g - 1) * pair.Phi0 / u; };
    auto df = [&](Real u) { return (g + 1) / 2 - (g - 1) * pair.Phi0 / (u * u); };
    Real ustar = std::sqrt(2 * (g - 1) * pair.Phi0 / (g + 1));
    q1 = detail::subsonic_root(f, df, ustar, "FullEuler");
  }

  FlowState U1{};
  U1.u = q1;
  U1.rho = 1 / q1;
  U1.p = (law.kind == GasKind::BarotropicIsentropic) ? std::pow(U1.rho, g) : pair.A - q1;
  U1.M = std::sqrt(mach_sq(law, U1.u, U1.rho, U1.p));

  if (!(U1.p > U0.p) || !(q1 < q0))
    fail(Errc::EntropyViolation, "downstream state is not compressive");

  pair.U1 = U1;
  pair.M0 = U0.M;
  pair.M1 = U1.M;
  return pair;
}

inline ShockPair make_pair(const GasLaw& law, Jump jump, Real M0sq) {
  return rh_downstream(make_upstream(law, M0sq), law, jump);
}

inline AdmissibilityReport admissibility(const ShockPair& pair, Model model) {
  AdmissibilityReport rep;
  Real g = pair.law.gamma;
  Real M0sq = pair.M0 * pair.M0;
  switch (model) {
    case Model::HB:
      rep.pair_matches = pair.jump == Jump::MassBernoulli && pair.law.kind == GasKind::BarotropicIsentropic;
      rep.mach_window = pair.M0 > 1;
      if (!rep.mach_window) rep.detail = "need M0 > 1";
      break;
    case Model::VB:
      rep.pair_matches = pair.jump == Jump::MassMomentum && pair.law.kind == GasKind::BarotropicIsentropic;
      rep.mach_window = pair.M0 > 1;
      if (!rep.mach_window) rep.detail = "need M0 > 1";
      break;
    case Model::HP: {
      rep.pair_matches = pair.jump == Jump::FullEuler && pair.law.kind == GasKind::PolytropicFull;
      Real bound = (3 * g - 1) / (g * (3 - g));
      rep.mach_window = (g > 1 && g < 3 && M0sq > 1 && M0sq <= bound) || (g >= 3 && M0sq > 1);
      rep.weight_positive = pair.A - 2 * pair.U1.p > 0;
      if (!rep.mach_window)
        rep.detail = "need 1 < M0^2 <= (3g-1)/(g(3-g)) for 1<g<3, or M0 > 1 for g >= 3";
      else if (!rep.weight_positive)
        rep.detail = "degenerate weight: A - 2 p1 <= 0";
      break;
    }
    case Model::VP: {
      rep.pair_matches = pair.jump == Jump::FullEuler && pair.law.kind == GasKind::PolytropicFull;
      Real bound = 2 * g / (g - 1);
      rep.mach_window = M0sq > 1 && M0sq < bound;
      if (!rep.mach_window) rep.detail = "need 1 < M0^2 < 2g/(g-1)";
      break;
    }
  }
  if (!rep.pair_matches && rep.detail.empty()) rep.detail = "pair was built for a different jump/law";
  rep.ok = rep.pair_matches && rep.mach_window && rep.weight_positive;
  return rep;
}

}  // namespace shockprof

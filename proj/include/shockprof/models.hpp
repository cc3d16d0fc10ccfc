#pragma once

#include <algorithm>
#include <cmath>

#include "gas.hpp"

namespace shockprof {

enum class Orientation { Increasing, Decreasing };
enum class Branch { NearZero, NearFStar, Divergent };

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::NearZero: return "near-zero";
    case Branch::NearFStar: return "near-fstar";
    case Branch::Divergent: return "divergent";
  }
  return "?";
}

struct CriticalPoint {
  Real w_star;
  Real f_star;
};

// Open interval guaranteed to contain every solution of H(alpha) = 1.
struct AlphaBracket {
  Real lo;
  Real hi;
};

// Linearization of the integrand denominator at an endpoint: den ~ b + a*s
// where s is distance into the interval. C is the numerator frozen at the
// endpoint. The collar treatment applies only when `singular` (den has a
// sharp minimum at the endpoint).
struct EndpointLin {
  Real b;
  Real a;
  Real C;
  bool singular;
};

namespace detail {

// log(expm1(x)) without overflow for large x.
inline Real log_expm1(Real x) {
  return x > 45 ? x : std::log(std::expm1(x));
}

}  // namespace detail

// One of the four reductions as a scalar profile problem on [w_in, w_out]:
//   dX/dw = scale(param) * weight(w) / F(w, alpha).
// All evaluation paths keep full relative precision near the endpoints, where
// the alpha equation is decided.
struct ReducedModel {
  Model model = Model::HB;
  ShockPair pair{};
  Real delta = 0;
  Real w_in = 0;
  Real w_out = 0;
  Orientation orientation = Orientation::Increasing;
  Real alpha_edge = 0;  // finite edge of the alpha domain
  int alpha_side = 1;   // +1: domain (edge, +inf); -1: domain (-inf, edge)
  CriticalPoint cp{};

  Real range() const { return std::fabs(w_out - w_in); }
  int dir() const { return w_out > w_in ? 1 : -1; }

  bool alpha_in_domain(Real alpha) const {
    return alpha_side > 0 ? alpha > alpha_edge : alpha < alpha_edge;
  }

  void require_alpha(Real alpha) const {
    if (!alpha_in_domain(alpha))
      fail(Errc::AlphaOutOfDomain, std::string(model_name(model)) + ": alpha outside domain");
  }

  // --- model functions -----------------------------------------------------

  // f anchored at w_in (exactly zero there); HB f(v), HP f(p), VB f(u), VP f1(u).
  Real f_value(Real w) const {
    Real g = pair.law.gamma;
    switch (model) {
      case Model::HB: {
        Real c = 2 / (g - 1);
        return f_dev_hb(w_in, w - w_in, c, g);
      }
      case Model::HP: {
        Real c2 = (g + 1) / (2 * (g - 1));
        return -c2 * (w - w_in) * (w - w_out);
      }
      case Model::VB: {
        // switch anchors near the downstream endpoint to keep relative precision
        if (std::fabs(w - w_out) < range() / 4) return f_dev_vb(w_out, w - w_out, g);
        return f_dev_vb(w_in, w - w_in, g);
      }
      case Model::VP: {
        Real q0 = pair.U0.u, q1 = pair.U1.u;
        return (g + 1) * (w - q0) * (w - q1) / (2 * w);
      }
    }
    return 0;
  }

  Real f_deriv(Real w) const {
    Real g = pair.law.gamma;
    switch (model) {
      case Model::HB: {
        Real c = 2 / (g - 1);
        return -(c / 2) * std::pow(w, -c - 1) + g / (g - 1);
      }
      case Model::HP: {
        Real c2 = (g + 1) / (2 * (g - 1));
        return -c2 * (2 * w - w_in - w_out);
      }
      case Model::VB:
        return 1 - g * std::pow(w, -g - 1);
      case Model::VP: {
        Real q0 = pair.U0.u, q1 = pair.U1.u;
        return (g + 1) / 2 * (1 - q0 * q1 / (w * w));
      }
    }
    return 0;
  }

  // VP auxiliaries.
  Real g1(Real u) const { return pair.law.gamma - (pair.law.gamma - 1) * pair.U0.u / u; }
  Real g1_deriv(Real u) const { return (pair.law.gamma - 1) * pair.U0.u / (u * u); }
  Real f2(Real u) const { return u * u / 2 - pair.P0 * u + pair.Phi0; }
  Real g2(Real u) const { return u - pair.U0.u; }

  // Signed flux F(w, alpha): positive for HB/HP, negative for VB/VP.
  Real flux(Real w, Real alpha) const {
    require_alpha(alpha);
    if (model == Model::VP)
      return (f_value(w) + alpha * g1(w)) / std::pow(f2(w) + alpha * g2(w), delta);
    return f_value(w) + alpha;
  }

  Real weight(Real w) const {
    switch (model) {
      case Model::HB: return 1;
      case Model::HP: {
        Real v = pair.A - 2 * w;
        if (v < 0) fail(Errc::DegenerateWeight, "A - 2p < 0 inside the profile range");
        return v;
      }
      case Model::VB: return std::pow(w, -delta);
      case Model::VP: return 1;
    }
    return 1;
  }

  Real scale(Real param) const {
    if (model == Model::VP)
      return param * std::pow((pair.law.gamma - 1) / pair.law.R, delta);
    return param;
  }

  CriticalPoint critical() const { return cp; }

  Real vp_pressure(Real u, Real alpha) const {
    Real g = pair.law.gamma;
    return (g - 1) * (u / 2 - pair.P0 + pair.Phi0 / u + alpha * (1 - pair.U0.u / u));
  }

  // --- integrand decomposition --------------------------------------------
  // h(w) = num(w, param, alpha) / den(w, alpha), h = scale*weight/|F|.

  Real num(Real w, Real param, Real alpha) const {
    if (model == Model::VP)
      return scale(param) * std::pow(f2(w) + alpha * g2(w), delta);
    return scale(param) * weight(w);
  }

  Real den(Real w, Real alpha) const {
    if (model == Model::VP) return -(f_value(w) + alpha * g1(w));
    Real F = f_value(w) + alpha;
    return alpha_side > 0 ? F : -F;
  }

  // den with w measured as inward distance s from one endpoint. Works in s
  // throughout: forming w_e + s would erase s below one ulp of w_e, and the
  // alpha equation lives exactly at those scales.
  Real den_near(bool at_in, Real s, Real alpha) const {
    Real g = pair.law.gamma;
    Real we = at_in ? w_in : w_out;
    Real sigma = at_in ? (Real)dir() : (Real)-dir();
    switch (model) {
      case Model::HB: {
        Real c = 2 / (g - 1);
        return f_dev_hb(we, sigma * s, c, g) + alpha;  // alpha_side > 0
      }
      case Model::HP: {
        // same expression seen from either end of the factored quadratic
        Real c2 = (g + 1) / (2 * (g - 1));
        return c2 * s * (w_out - w_in - s) + alpha;
      }
      case Model::VB: {
        Real F = f_dev_vb(we, sigma * s, g) + alpha;
        return -F;
      }
      case Model::VP: {
        Real q0 = pair.U0.u, q1 = pair.U1.u;
        Real dq = q0 - q1;
        Real u = we + sigma * s;  // only enters smooth factors
        Real f1 = -(g + 1) * s * (dq - s) / (2 * u);
        Real g1n = at_in ? (q0 - g * s) : (g * q1 - (g - 1) * q0 + g * s);
        return -(f1 + alpha * g1n / u);
      }
    }
    return 0;
  }

  EndpointLin endpoint_lin(bool at_in, Real param, Real alpha) const {
    Real we = at_in ? w_in : w_out;
    EndpointLin lin{};
    if (model == Model::VP) {
      Real Np = f_deriv(we) + alpha * g1_deriv(we);
      lin.b = -alpha * g1(we);
      lin.a = at_in ? (dir() < 0 ? Np : -Np) : (dir() < 0 ? -Np : Np);
      lin.C = num(we, param, alpha);
    } else {
      lin.b = alpha_side > 0 ? alpha : -alpha;  // |F| at the endpoint (f vanishes there)
      Real fp = f_deriv(we);
      Real inward = at_in ? (Real)dir() : (Real)-dir();
      Real dAbsF = (alpha_side > 0 ? fp : -fp) * inward;
      lin.a = dAbsF;
      lin.C = num(we, param, alpha);
    }
    lin.singular = lin.a > 0 && lin.b < lin.a * range() / 2;
    return lin;
  }

  // Signed flux at inward distance s from an endpoint (shooting path).
  Real flux_near(bool at_in, Real s, Real alpha) const {
    Real d = den_near(at_in, s, alpha);
    if (model == Model::VP) {
      Real we = at_in ? w_in : w_out;
      Real sigma = at_in ? (Real)dir() : (Real)-dir();
      Real u = we + sigma * s;
      Real g2v = at_in ? -s : -(pair.U0.u - pair.U1.u - s);
      return -d / std::pow(f2(u) + alpha * g2v, delta);
    }
    return alpha_side > 0 ? d : -d;
  }

  // --- analytic alpha bracket ---------------------------------------------

  AlphaBracket analytic_alpha_bracket(Real param) const {
    Real inf = std::numeric_limits<Real>::infinity();
    switch (model) {
      case Model::HB: {
        // lower: piecewise-linear majorant; upper: kappa*(v1-v0) - f(v*)
        Real s2 = cp.f_star / (cp.w_star - w_out);  // both factors negative
        Real lo = alpha_edge + (-cp.f_star) / std::expm1(s2 / param);
        Real hi = param * (w_out - w_in) - cp.f_star;
        return {lo, hi};
      }
      case Model::HP: {
        Real phat = (w_in + w_out) / 2;
        Real s = f_value(phat) / (phat - w_in);
        Real X = s / (2 * param * pair.A);
        Real hi = s * (w_out - w_in) / 2 / safe_expm1(X);
        return {0, hi};
      }
      case Model::VB: {
        Real uhat = (w_in + w_out) / 2;
        Real s = f_value(uhat) / (uhat - w_in);  // > 0
        Real X = s * std::pow(w_out, delta) / (2 * param);
        Real lo = -s * (w_in - w_out) / 2 / safe_expm1(X);
        return {lo, 0};
      }
      case Model::VP:
        return {-inf, 0};
    }
    return {0, 0};
  }

private:
  static Real safe_expm1(Real x) {
    // expm1 overflows near x = 11357 for 80-bit doubles; beyond that the
    // bracket endpoint collapses onto the domain edge anyway.
    if (x > 11000) return std::numeric_limits<Real>::infinity();
    return std::expm1(x);
  }

  static Real f_dev_hb(Real anchor, Real dw, Real c, Real g) {
    return std::pow(anchor, -c) / 2 * std::expm1(-c * std::log1p(dw / anchor)) +
           g / (g - 1) * dw;
  }

  static Real f_dev_vb(Real anchor, Real dw, Real g) {
    return dw + std::pow(anchor, -g) * std::expm1(-g * std::log1p(dw / anchor));
  }
};

inline ReducedModel make_reduced(const ShockPair& pair, Model model, Real delta = 0) {
  Jump expect = model == Model::HB   ? Jump::MassBernoulli
                : model == Model::VB ? Jump::MassMomentum
                                     : Jump::FullEuler;
  if (pair.jump != expect)
    throw std::invalid_argument("make_reduced: pair was built for a different jump condition");

  ReducedModel m;
  m.model = model;
  m.pair = pair;
  m.delta = delta;
  Real g = pair.law.gamma;
  switch (model) {
    case Model::HB:
      m.w_in = std::pow(pair.U0.u, 1 - g);
      m.w_out = std::pow(pair.U1.u, 1 - g);
      m.orientation = Orientation::Increasing;
      m.cp.w_star = std::pow(g, (1 - g) / (1 + g));
      m.cp.f_star = m.f_value(m.cp.w_star);
      m.alpha_edge = -m.cp.f_star;
      m.alpha_side = 1;
      break;
    case Model::HP:
      m.w_in = pair.U0.p;
      m.w_out = pair.U1.p;
      m.orientation = Orientation::Increasing;
      m.cp.w_star = (m.w_in + m.w_out) / 2;
      m.cp.f_star = m.f_value(m.cp.w_star);
      m.alpha_edge = 0;
      m.alpha_side = 1;
      break;
    case Model::VB:
      m.w_in = pair.U0.u;
      m.w_out = pair.U1.u;
      m.orientation = Orientation::Decreasing;
      m.cp.w_star = std::pow(g, 1 / (1 + g));
      m.cp.f_star = m.f_value(m.cp.w_star);
      m.alpha_edge = 0;
      m.alpha_side = -1;
      break;
    case Model::VP:
      m.w_in = pair.U0.u;
      m.w_out = pair.U1.u;
      m.orientation = Orientation::Decreasing;
      m.cp.w_star = std::sqrt(pair.U0.u * pair.U1.u);
      m.cp.f_star = m.f_value(m.cp.w_star);
      m.alpha_edge = 0;
      m.alpha_side = -1;
      break;
  }
  return m;
}

}  // namespace shockprof

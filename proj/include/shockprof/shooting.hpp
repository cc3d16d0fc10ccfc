#pragma once

#include "profile.hpp"

namespace shockprof {

// Independent cross-check path: treats the profile equation as an initial
// value problem in x and matches the far boundary by adjusting alpha. Shares
// no quadrature with the H-based solver.
struct ShootResult {
  Real alpha = 0;
  Real terminal_gap = 0;  // |w(1) - w_out| on the final pass
  long steps = 0;
  Profile profile;
};

namespace detail {

struct Traverse {
  Real miss = 0;     // > 0: fell short (w units); < 0: landed early (x units)
  Real end_gap = 0;  // |w(1) - w_out|, zero when the profile landed early
  Real x_mid = -1;   // x where w crossed mid-range, < 0 if it never did
  long steps = 0;
};

// Cash-Karp 4(5) coefficients
inline constexpr Real ck_a[6] = {0, 0.2L, 0.3L, 0.6L, 1.0L, 0.875L};
inline constexpr Real ck_b2[] = {0.2L};
inline constexpr Real ck_b3[] = {3.0L / 40, 9.0L / 40};
inline constexpr Real ck_b4[] = {0.3L, -0.9L, 1.2L};
inline constexpr Real ck_b5[] = {-11.0L / 54, 2.5L, -70.0L / 27, 35.0L / 27};
inline constexpr Real ck_b6[] = {1631.0L / 55296, 175.0L / 512, 575.0L / 13824,
                                 44275.0L / 110592, 253.0L / 4096};
inline constexpr Real ck_c5[6] = {37.0L / 378, 0, 250.0L / 621, 125.0L / 594, 0, 512.0L / 1771};
inline constexpr Real ck_c4[6] = {2825.0L / 27648, 0,           18575.0L / 48384,
                                  13525.0L / 55296, 277.0L / 14336, 0.25L};

// One adaptive pass across x in [0,1]. The state is the distance to the
// nearer endpoint, integrated through the deviation-form flux so the tail
// stays meaningful at scales far below one ulp of w itself. Optionally
// samples w on the uniform n-point grid.
inline Traverse shoot_once(const ReducedModel& m, Real param, Real alpha, Real tol,
                           std::vector<Real>* samples, int n_samples) {
  const Real T = m.range();
  const Real sc = m.scale(param);
  const Real floor_y = 1e-4900L;

  bool near_in = true;
  Real x = 0, y = 0;  // inward distance while near_in, outward distance after
  auto w_now = [&]() {
    return near_in ? m.w_in + m.dir() * y : m.w_out - m.dir() * y;
  };
  auto rhs = [&](Real yv) {
    Real w = near_in ? m.w_in + m.dir() * yv : m.w_out - m.dir() * yv;
    Real sp = std::fabs(m.flux_near(near_in, yv, alpha)) / (sc * m.weight(w));
    return near_in ? sp : -sp;
  };

  Traverse tr;
  int isample = 0;
  auto record_to = [&](Real upto) {
    if (!samples) return;
    while (isample <= n_samples && (Real)isample / n_samples <= upto + 1e-17L) {
      (*samples)[isample] = w_now();
      ++isample;
    }
  };
  record_to(0);

  Real h = 1e-4L;
  while (1 - x > 1e-15L) {
    h = std::min(h, 1 - x);
    if (samples && isample <= n_samples) {
      Real next = (Real)isample / n_samples;
      if (next - x < 1e-15L) {
        (*samples)[isample] = w_now();
        ++isample;
        continue;
      }
      if (x + h > next) h = next - x;
    }
    if (h < 1e-15L) fail(Errc::StepSizeUnderflow, "step size below resolution at x=" +
                                                      std::to_string((double)x));
    Real k1 = rhs(y);
    Real k2 = rhs(y + h * ck_b2[0] * k1);
    Real k3 = rhs(y + h * (ck_b3[0] * k1 + ck_b3[1] * k2));
    Real k4 = rhs(y + h * (ck_b4[0] * k1 + ck_b4[1] * k2 + ck_b4[2] * k3));
    Real k5 = rhs(y + h * (ck_b5[0] * k1 + ck_b5[1] * k2 + ck_b5[2] * k3 + ck_b5[3] * k4));
    Real k6 = rhs(y + h * (ck_b6[0] * k1 + ck_b6[1] * k2 + ck_b6[2] * k3 + ck_b6[3] * k4 +
                           ck_b6[4] * k5));
    Real d5 = ck_c5[0] * k1 + ck_c5[2] * k3 + ck_c5[3] * k4 + ck_c5[5] * k6;
    Real d4 = ck_c4[0] * k1 + ck_c4[2] * k3 + ck_c4[3] * k4 + ck_c4[4] * k5 + ck_c4[5] * k6;
    Real y5 = y + h * d5;
    Real err = std::fabs(h * (d5 - d4));
    // scale against the larger of departure and arrival so the first step
    // away from an endpoint (y = 0) still has a reference magnitude
    Real need = tol * (std::max(std::fabs(y), std::fabs(y5)) + floor_y);
    if (!std::isfinite((double)(y5 + err)))
      fail(Errc::ShootingDiverged, "non-finite state during integration");
    if (err > need) {
      h *= std::max((Real)0.1L, 0.9L * std::pow(need / err, 0.25L));
      continue;
    }
    ++tr.steps;
    if (tr.steps > 20000000L) fail(Errc::ShootingDiverged, "step budget exhausted");

    if (!near_in && y5 <= 0) {
      Real x_hit = x + h * (y / (y - y5));
      if (samples)
        while (isample <= n_samples) {
          Real xs = (Real)isample / n_samples;
          Real yl = xs < x_hit ? y * (x_hit - xs) / (x_hit - x) : 0;
          (*samples)[isample] = m.w_out - m.dir() * yl;
          ++isample;
        }
      tr.miss = x_hit - 1;  // landed early (or exactly, when this is 0)
      tr.end_gap = 0;
      return tr;
    }
    Real y_pre = y;
    x += h;
    y = y5;
    if (near_in && y >= T / 2) {
      // the crossing step itself locates the mid-range point far better
      // than interpolating the uniform samples afterwards
      tr.x_mid = x - h + h * (T / 2 - y_pre) / (y5 - y_pre);
      y = T - y;
      near_in = false;
      if (y <= 0) {
        if (samples)
          while (isample <= n_samples) (*samples)[isample++] = m.w_out;
        tr.miss = x - 1;
        tr.end_gap = 0;
        return tr;
      }
    }
    record_to(x);
    if (err > 0) h *= std::min((Real)5.0L, 0.9L * std::pow(need / err, 0.2L));
    else h *= 5;
  }
  record_to(1);
  tr.miss = near_in ? T - y : y;  // distance still to travel, in w units
  tr.end_gap = tr.miss;
  return tr;
}

}  // namespace detail

// Refines alpha by shooting and returns the refined value with the profile
// sampled on the uniform grid. alpha_guess seeds the search bracket.
inline ShootResult shoot_ivp_oracle(const ReducedModel& m, Real param, Real alpha_guess,
                                    Real tol = 1e-12L, int n_samples = 512) {
  m.require_alpha(alpha_guess);
  auto alpha_of = [&](Real s) { return m.alpha_edge + m.alpha_side * std::exp(s); };
  long total_steps = 0;
  auto G = [&](Real s) {
    detail::Traverse t = detail::shoot_once(m, param, alpha_of(s), tol, nullptr, 0);
    total_steps += t.steps;
    return t.miss;
  };

  Real s0 = std::log(std::fabs(alpha_guess - m.alpha_edge));
  Real ds = 1e-7L;
  Real sa = s0 - ds, sb = s0 + ds;
  Real ga = G(sa), gb = G(sb);
  while ((ga > 0) == (gb > 0) && ds < 0.6L) {
    ds *= 10;
    sa = s0 - ds;
    sb = s0 + ds;
    ga = G(sa);
    gb = G(sb);
  }
  if ((ga > 0) == (gb > 0)) {
    // walk outward; the guess was poor
    bool found = false;
    for (int k = 1; k <= 120 && !found; ++k) {
      Real s = s0 + (k % 2 ? 1 : -1) * ((k + 1) / 2) * 1.0L;
      Real g = G(s);
      if ((g > 0) != (gb > 0)) {
        sa = std::min(s, sb);
        sb = std::max(s, sb);
        ga = sa == s ? g : gb;
        gb = sb == s ? g : gb;
        found = true;
      }
    }
    if (!found)
      fail(Errc::ShootingDiverged, "no sign change in the matching function near the guess");
  }
  if (sa > sb) {
    std::swap(sa, sb);
    std::swap(ga, gb);
  }
  for (int it = 0; it < 300; ++it) {
    if (sb - sa <= 1e-14L * (1 + std::fabs(sa) + std::fabs(sb))) break;
    Real sm = sa + (sb - sa) / 2;
    if (!(sm > sa && sm < sb)) break;
    Real gm = G(sm);
    if ((gm > 0) == (ga > 0)) {
      sa = sm;
      ga = gm;
    } else {
      sb = sm;
      gb = gm;
    }
  }

  ShootResult out;
  Real s_final = std::fabs(ga) <= std::fabs(gb) ? sa : sb;
  out.alpha = alpha_of(s_final);
  out.profile.model = m.model;
  out.profile.delta = m.delta;
  out.profile.param = param;
  out.profile.alpha = out.alpha;
  out.profile.has_T = m.model == Model::VP;
  out.profile.x.resize(n_samples + 1);
  out.profile.w.assign(n_samples + 1, m.w_out);
  for (int i = 0; i <= n_samples; ++i) out.profile.x[i] = (Real)i / n_samples;
  detail::Traverse fin =
      detail::shoot_once(m, param, out.alpha, tol, &out.profile.w, n_samples);
  total_steps += fin.steps;
  out.terminal_gap = fin.end_gap;
  out.steps = total_steps;
  detail::lift_physical(m, out.profile);

  if (fin.x_mid >= 0) {
    out.profile.midpoint_x = fin.x_mid;
    return out;
  }
  // fallback: crossing by linear interpolation on the samples
  Real w_mid = (m.w_in + m.w_out) / 2;
  for (int i = 1; i <= n_samples; ++i) {
    Real w0 = out.profile.w[i - 1], w1 = out.profile.w[i];
    if ((w0 - w_mid) * (w1 - w_mid) <= 0 && w0 != w1) {
      out.profile.midpoint_x =
          out.profile.x[i - 1] + (w_mid - w0) / (w1 - w0) * (out.profile.x[i] - out.profile.x[i - 1]);
      break;
    }
  }
  return out;
}

}  // namespace shockprof

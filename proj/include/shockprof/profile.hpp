#pragma once

#include <vector>

#include "alpha_solve.hpp"

namespace shockprof {

// Shock profile on a uniform x grid over [0, 1]. w is the model's profile
// variable; the physical columns are lifted from it. T is filled for the
// temperature-viscous polytropic model only (has_T).
struct Profile {
  Model model = Model::HB;
  Real delta = 0;
  Real param = 0;
  Real alpha = 0;
  std::vector<Real> x;
  std::vector<Real> w;
  std::vector<Real> u;
  std::vector<Real> rho;
  std::vector<Real> p;
  std::vector<Real> T;
  bool has_T = false;
  Real midpoint_x = 0;  // x where w crosses the arithmetic middle of its range
  bool nonphysical_pressure = false;
};

namespace detail {

// Monotone cubic interpolant (Fritsch-Carlson slopes), evaluated at xq.
class Pchip {
public:
  Pchip(std::vector<Real> xs, std::vector<Real> ys) : x_(std::move(xs)), y_(std::move(ys)) {
    size_t n = x_.size();
    d_.assign(n, 0);
    if (n < 2) return;
    std::vector<Real> h(n - 1), s(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      s[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_[0] = s[0];
    d_[n - 1] = s[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
      if (s[i - 1] * s[i] <= 0) {
        d_[i] = 0;
      } else {
        Real w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
      }
    }
  }

  // Same interpolant with analytically known node slopes, clamped into the
  // monotone region so the cubic cannot overshoot between nodes. Exact slopes
  // buy an order of accuracy over the estimated ones where the grid is coarse
  // relative to the local decay rate.
  Pchip(std::vector<Real> xs, std::vector<Real> ys, std::vector<Real> ds)
      : x_(std::move(xs)), y_(std::move(ys)), d_(std::move(ds)) {
    size_t n = x_.size();
    if (n < 2) return;
    for (size_t i = 0; i + 1 < n; ++i) {
      Real s = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
      if (s == 0) {
        d_[i] = 0;
        d_[i + 1] = 0;
        continue;
      }
      for (size_t j : {i, i + 1}) {
        if (d_[j] * s < 0)
          d_[j] = 0;
        else if (std::fabs(d_[j]) > 3 * std::fabs(s))
          d_[j] = 3 * s;
      }
    }
  }

  Real operator()(Real xq) const {
    size_t n = x_.size();
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (x_[mid] <= xq ? lo : hi) = mid;
    }
    Real h = x_[lo + 1] - x_[lo], t = (xq - x_[lo]) / h;
    Real y0 = y_[lo], y1 = y_[lo + 1], m0 = d_[lo] * h, m1 = d_[lo + 1] * h;
    Real t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  }

private:
  std::vector<Real> x_, y_, d_;
};

// Nodes roughly uniform in the accumulated measure through a singular
// endpoint collar: geometric in the linearized denominator b + a*s, so the
// inversion resolves the bend even when b is exponentially small.
inline void append_collar_ladder(const ReducedModel& m, Real param, Real alpha, bool at_in,
                                 int per_end, std::vector<Real>& t) {
  EndpointLin lin = m.endpoint_lin(at_in, param, alpha);
  if (!lin.singular || !(lin.b > 0)) return;
  Real T = m.range();
  Real smax = T / 8;
  Real lo = std::max(lin.b / lin.a / 4, T * 1e-17L);
  if (!(lo < smax)) return;
  Real rho = std::pow((lin.b + lin.a * smax) / (lin.b + lin.a * lo), 1.0L / per_end);
  Real den = lin.b + lin.a * lo;
  for (int j = 0; j <= per_end; ++j, den *= rho) {
    Real s = (den - lin.b) / lin.a;
    if (s > 0 && s < T) t.push_back(at_in ? s : T - s);
  }
}

// The plateau-forming model concentrates its measure around the interior
// sonic point instead, where the denominator bottoms out quadratically;
// arctan spacing is measure-uniform for that shape.
inline void append_star_ladder(const ReducedModel& m, Real alpha, int per_side,
                               std::vector<Real>& t) {
  if (m.model != Model::HB) return;
  Real T = m.range();
  Real tstar = std::fabs(m.critical().w_star - m.w_in);
  Real y = alpha - m.alpha_edge;
  Real h = T * 1e-5L;
  Real a2 =
      (m.f_deriv(m.critical().w_star + h) - m.f_deriv(m.critical().w_star - h)) / (4 * h);
  if (!(y > 0) || !(a2 > 0)) return;
  Real kw = std::sqrt(y / a2);
  const Real pi = 3.14159265358979323846L;
  for (int j = 1; j <= per_side; ++j) {
    Real s = kw * std::tan(pi / 2 * j / (per_side + 1));
    if (s >= T) break;
    if (tstar + s < T) t.push_back(tstar + s);
    if (tstar - s > 0) t.push_back(tstar - s);
  }
}

// node set in t (arc position from w_in): Chebyshev-clustered base grid,
// log-spaced collar points off both ends, measure-graded ladders, the
// critical point, the middle
inline std::vector<Real> profile_nodes(const ReducedModel& m, Real param, Real alpha, int base,
                                       int collar_kmax, int ladder_n) {
  Real T = m.range();
  std::vector<Real> t;
  t.reserve(base + 2 * collar_kmax + 4 * ladder_n + 8);
  const Real pi = 3.14159265358979323846L;
  for (int j = 0; j <= base; ++j) t.push_back(T / 2 * (1 - std::cos(pi * j / base)));
  for (int k = 2; k <= collar_kmax; ++k) {
    Real d = T * std::pow((Real)10, (Real)-k);
    t.push_back(d);
    t.push_back(T - d);
  }
  append_collar_ladder(m, param, alpha, true, ladder_n, t);
  append_collar_ladder(m, param, alpha, false, ladder_n, t);
  append_star_ladder(m, alpha, ladder_n, t);
  Real tstar = std::fabs(m.critical().w_star - m.w_in);
  if (tstar > 0 && tstar < T) t.push_back(tstar);
  t.push_back(T / 2);
  std::sort(t.begin(), t.end());
  std::vector<Real> out;
  for (Real v : t)
    if (out.empty() || v - out.back() > T * 1e-14L) out.push_back(v);
  if (out.back() != T) out.push_back(T);
  out.front() = 0;
  return out;
}

inline void lift_physical(const ReducedModel& m, Profile& pr) {
  size_t N = pr.w.size();
  pr.u.resize(N);
  pr.rho.resize(N);
  pr.p.resize(N);
  if (pr.has_T) pr.T.resize(N);
  Real g = m.pair.law.gamma;
  for (size_t i = 0; i < N; ++i) {
    Real w = pr.w[i];
    switch (m.model) {
      case Model::HB:
        pr.u[i] = std::pow(w, -1 / (g - 1));
        pr.rho[i] = 1 / pr.u[i];
        pr.p[i] = std::pow(pr.rho[i], g);
        break;
      case Model::HP:
        pr.p[i] = w;
        pr.u[i] = m.pair.A - w;
        pr.rho[i] = 1 / pr.u[i];
        break;
      case Model::VB:
        pr.u[i] = w;
        pr.rho[i] = 1 / w;
        pr.p[i] = std::pow(pr.rho[i], g);
        break;
      case Model::VP:
        pr.u[i] = w;
        pr.rho[i] = 1 / w;
        pr.p[i] = m.vp_pressure(w, pr.alpha);
        pr.T[i] = pr.p[i] * pr.u[i] / m.pair.law.R;
        if (pr.p[i] <= 0) pr.nonphysical_pressure = true;
        break;
    }
  }
}

}  // namespace detail

// Builds the profile by accumulating X(w) over a graded w grid and inverting
// with a monotone interpolant. The collar pieces of X go through the same
// closed-form log treatment as H itself, so the steep corners survive even
// when alpha is exponentially small.
inline Profile reconstruct(const ReducedModel& m, Real param, Real alpha, int n_samples = 512,
                           const QuadratureSpec& spec = {}) {
  if (n_samples < 16) throw std::invalid_argument("reconstruct: need at least 16 samples");
  m.require_alpha(alpha);
  HEval He(m, param, spec);
  Real T = m.range();

  Profile pr;
  pr.model = m.model;
  pr.delta = m.delta;
  pr.param = param;
  pr.alpha = alpha;
  pr.has_T = m.model == Model::VP;

  for (int attempt = 0;; ++attempt) {
    int base = attempt == 0 ? 128 : 256;
    int kmax = attempt == 0 ? 8 : 10;
    int ladder = attempt == 0 ? 96 : 192;
    std::vector<Real> t = detail::profile_nodes(m, param, alpha, base, kmax, ladder);
    size_t n = t.size();
    std::vector<Real> X(n, 0);
    bool x_monotone = true;
    for (size_t i = 1; i < n; ++i) {
      Real piece = He.integrate(t[i - 1], t[i], alpha);
      if (!(piece >= 0)) x_monotone = false;
      X[i] = X[i - 1] + piece;
    }

    // X at the half-range node is the midpoint location
    size_t imid = 0;
    for (size_t i = 1; i < n; ++i)
      if (std::fabs(t[i] - T / 2) < std::fabs(t[imid] - T / 2)) imid = i;
    pr.midpoint_x = X[imid];

    std::vector<Real> w(n), dwdX(n);
    for (size_t i = 0; i < n; ++i) {
      w[i] = m.w_in + m.dir() * t[i];
      // slope straight from the reduced equation: dw/dX = dir * den / num
      dwdX[i] = m.dir() * m.den(w[i], alpha) / m.num(w[i], param, alpha);
    }

    detail::Pchip interp(X, w, dwdX);
    Real Xend = X.back();

    pr.x.assign(n_samples + 1, 0);
    pr.w.assign(n_samples + 1, 0);
    bool monotone = true;
    for (int i = 0; i <= n_samples; ++i) {
      Real xq = (Real)i / n_samples;
      pr.x[i] = xq;
      Real wi = i == 0 ? m.w_in : (xq >= Xend ? m.w_out : interp(xq));
      if (i > 0) {
        Real back = (wi - pr.w[i - 1]) * m.dir();
        // flatten last-bit jitter in the dead tails, fail anything real
        if (back < 0) {
          if (back > m.range() * -1e-15L)
            wi = pr.w[i - 1];
          else
            monotone = false;
        }
      }
      pr.w[i] = wi;
    }
    if (x_monotone && monotone) break;
    if (attempt >= 1)
      fail(Errc::NonMonotoneSamples, "profile samples not monotone after grid refinement");
    pr.x.clear();
    pr.w.clear();
  }

  detail::lift_physical(m, pr);
  return pr;
}

// midpoint-location odds ratio; diverges as the midpoint reaches the right edge
inline Real ratio_I(const Profile& pr) {
  if (pr.midpoint_x >= 1 - 1e-14L)
    fail(Errc::RatioOverflow, "midpoint location too close to 1");
  return pr.midpoint_x / (1 - pr.midpoint_x);
}

}  // namespace shockprof

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "core.hpp"

namespace shockprof {

struct QuadratureSpec {
  Real rel_tol = 1e-12L;
  Real abs_tol = 1e-15L;
  int max_depth = 48;
  enum class Endpoint { LogSubstitution, RawAdaptive };
  Endpoint endpoint_strategy = Endpoint::LogSubstitution;

  void validate() const {
    if (!(rel_tol > 0) || rel_tol > 1e-3L)
      throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1e-3]");
    if (max_depth < 30)
      throw std::invalid_argument("QuadratureSpec: max_depth must be at least 30");
  }
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (positive half, QUADPACK values).
inline constexpr Real gk_x[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144838258730L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
inline constexpr Real gk_wk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr Real gk_wg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class F>
Real gk15(F&& f, Real a, Real b, Real& err, long* evals) {
  Real h = (b - a) / 2, c = (a + b) / 2;
  Real ik = 0, ig = 0;
  for (int i = 0; i < 8; ++i) {
    Real fv;
    if (i == 7) {
      fv = f(c);
      ik += gk_wk[7] * fv;
      ig += gk_wg[3] * fv;
    } else {
      Real f1 = f(c - h * gk_x[i]);
      Real f2 = f(c + h * gk_x[i]);
      ik += gk_wk[i] * (f1 + f2);
      if (i % 2 == 1) ig += gk_wg[i / 2] * (f1 + f2);
    }
  }
  if (evals) *evals += 15;
  ik *= h;
  ig *= h;
  Real diff = std::fabs(ik - ig);
  // QUADPACK-style sharpening of the error estimate
  err = diff;
  if (diff > 0) {
    Real scale = std::pow((Real)(200 * diff) / std::max<Real>(std::fabs(ik), 1e-300L), 1.5L);
    if (scale < 1) err = diff * scale;
  }
  return ik;
}

template <class F>
Real adapt(F&& f, Real a, Real b, Real abs_budget, const QuadratureSpec& spec, int depth,
           long* evals) {
  Real err;
  Real I = gk15(f, a, b, err, evals);
  if (!std::isfinite((double)I))
    fail(Errc::QuadratureFailure, "non-finite integrand on [" + std::to_string((double)a) +
                                      ", " + std::to_string((double)b) + "]");
  if (err <= abs_budget || err <= spec.rel_tol * std::fabs(I)) return I;
  if (depth >= spec.max_depth)
    fail(Errc::QuadratureFailure,
         "max depth reached on [" + std::to_string((double)a) + ", " +
             std::to_string((double)b) + "], err=" + std::to_string((double)err));
  Real m = a + (b - a) / 2;
  if (!(m > a && m < b)) return I;  // interval at representation limit
  return adapt(f, a, m, abs_budget / 2, spec, depth + 1, evals) +
         adapt(f, m, b, abs_budget / 2, spec, depth + 1, evals);
}

}  // namespace detail

// Adaptive Gauss-Kronrod; throws QuadratureFailure when the tolerance is
// unreachable within max_depth bisections.
template <class F>
Real integrate_adaptive(F&& f, Real a, Real b, const QuadratureSpec& spec, long* evals = nullptr) {
  if (a == b) return 0;
  return detail::adapt(f, a, b, spec.abs_tol, spec, 0, evals);
}

}  // namespace shockprof

#pragma once

#include <cmath>
#include <utility>

#include "core.hpp"

namespace shockprof {

struct RootResult {
  Real x;
  int iters;
  bool converged;
};

// Plain bisection on a bracketing interval [lo, hi] with f(lo), f(hi) of
// opposite (non-strict) sign. Stops when the interval width drops below xtol.
template <class F>
RootResult bisect(F&& f, Real lo, Real hi, Real flo, Real fhi, Real xtol, int maxit = 400) {
  if (flo == 0) return {lo, 0, true};
  if (fhi == 0) return {hi, 0, true};
  int it = 0;
  while (hi - lo > xtol && it < maxit) {
    Real mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;  // interval at representation limit
    Real fm = f(mid);
    ++it;
    if (fm == 0) return {mid, it, true};
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return {lo + (hi - lo) / 2, it, hi - lo <= xtol || it < maxit};
}

template <class F>
RootResult bisect(F&& f, Real lo, Real hi, Real xtol, int maxit = 400) {
  return bisect(f, lo, hi, f(lo), f(hi), xtol, maxit);
}

}  // namespace shockprof

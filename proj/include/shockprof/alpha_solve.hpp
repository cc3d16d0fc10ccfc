#pragma once

#include <array>
#include <utility>
#include <vector>

#include "models.hpp"
#include "quadrature.hpp"

namespace shockprof {

// Evaluates H(alpha) = \int scale*weight/|F| dw and partial X-integrals.
// Endpoint collars: where the denominator bottoms out at an endpoint with
// value b and inward slope a, the collar integral of C/(b+a s) is taken in
// closed form (this carries all the sensitivity to tiny alpha) and only the
// bounded remainder h - C/(b+a s) goes to the adaptive rule. The interior
// critical point always gets a split so the peak sits on a panel boundary.
class HEval {
public:
  HEval(const ReducedModel& m, Real param, QuadratureSpec spec = {})
      : m_(m), param_(param), spec_(spec) {
    spec_.validate();
  }

  Real operator()(Real alpha) const { return integrate(0, m_.range(), alpha); }

  // t is arc position measured from w_in, in [0, range]
  Real w_of(Real t) const { return m_.w_in + m_.dir() * t; }

  Real integrate(Real t0, Real t1, Real alpha) const {
    m_.require_alpha(alpha);
    const Real T = m_.range();
    t0 = std::clamp(t0, (Real)0, T);
    t1 = std::clamp(t1, (Real)0, T);
    if (t1 <= t0) return 0;

    bool collars = spec_.endpoint_strategy == QuadratureSpec::Endpoint::LogSubstitution;
    EndpointLin lin_in = m_.endpoint_lin(true, param_, alpha);
    EndpointLin lin_out = m_.endpoint_lin(false, param_, alpha);
    Real tstar = std::fabs(m_.critical().w_star - m_.w_in);
    bool star_inside = tstar > 0 && tstar < T;
    Real ci = (collars && lin_in.singular)
                  ? std::min(T / 10, star_inside ? tstar / 2 : T / 4)
                  : 0;
    Real co = (collars && lin_out.singular)
                  ? std::min(T / 10, star_inside ? (T - tstar) / 2 : T / 4)
                  : 0;

    std::array<Real, 5> bp = {0, ci, star_inside ? tstar : ci, T - co, T};
    Real sum = 0;
    for (int k = 0; k + 1 < (int)bp.size(); ++k) {
      Real a = std::max(bp[k], t0), b = std::min(bp[k + 1], t1);
      if (b <= a) continue;
      if (ci > 0 && b <= ci)
        sum += collar_piece(true, a, b, alpha, lin_in);
      else if (co > 0 && a >= T - co)
        sum += collar_piece(false, T - b, T - a, alpha, lin_out);
      else
        sum += plain_piece(a, b, alpha);
    }
    return sum;
  }

  long evaluations() const { return evals_; }

private:
  Real plain_piece(Real ta, Real tb, Real alpha) const {
    auto f = [&](Real t) {
      Real w = w_of(t);
      return m_.num(w, param_, alpha) / m_.den(w, alpha);
    };
    return integrate_adaptive(f, ta, tb, spec_, &evals_);
  }

  // s0 < s1 are inward distances from the endpoint
  Real collar_piece(bool at_in, Real s0, Real s1, Real alpha, const EndpointLin& lin) const {
    Real analytic =
        lin.C / lin.a * (std::log(lin.b + lin.a * s1) - std::log(lin.b + lin.a * s0));
    Real sigma = at_in ? (Real)m_.dir() : (Real)-m_.dir();
    Real we = at_in ? m_.w_in : m_.w_out;
    auto f = [&](Real s) {
      Real w = we + sigma * s;
      return m_.num(w, param_, alpha) / m_.den_near(at_in, s, alpha) -
             lin.C / (lin.b + lin.a * s);
    };
    // The correction is bounded but turns over at s ~ b/a. When alpha is
    // exponentially close to the edge that scale cannot be bisected down to;
    // the piece below it contributes O(L*b/a) and is dropped instead.
    Real kink = lin.b / lin.a;
    Real floor = s1 * std::ldexp((Real)1, -(spec_.max_depth - 8));
    Real sa = (kink < floor) ? std::max(s0, floor) : s0;
    Real corr = sa < s1 ? integrate_adaptive(f, sa, s1, spec_, &evals_) : 0;
    return analytic + corr;
  }

  const ReducedModel& m_;
  Real param_;
  QuadratureSpec spec_;
  mutable long evals_ = 0;
};

inline Real eval_H(const ReducedModel& m, Real param, Real alpha,
                   const QuadratureSpec& spec = {}, long* evals = nullptr) {
  HEval h(m, param, spec);
  Real v = h(alpha);
  if (evals) *evals += h.evaluations();
  if (!std::isfinite((double)v) || v < 0)
    fail(Errc::QuadratureFailure, "H(alpha) evaluated non-finite or negative");
  return v;
}

struct AlphaRoot {
  Real alpha = 0;
  Real residual = 0;
  Real bracket_lo = 0;  // final bracket, alpha units
  Real bracket_hi = 0;
  Branch branch = Branch::NearZero;
  long evaluations = 0;
};

namespace detail {

// Bisection + two secant steps on a sign-changing bracket, in s space.
template <class D, class A>
AlphaRoot refine_root(D&& Dfun, Real sa, Real fa, Real sb, Real fb, A&& alpha_of,
                      Branch branch) {
  if (sa > sb) {
    std::swap(sa, sb);
    std::swap(fa, fb);
  }
  Real s_best = std::fabs(fa) < std::fabs(fb) ? sa : sb;
  Real f_best = std::fabs(fa) < std::fabs(fb) ? fa : fb;
  auto take = [&](Real s, Real f) {
    if (std::fabs(f) < std::fabs(f_best)) {
      s_best = s;
      f_best = f;
    }
  };
  for (int it = 0; it < 400; ++it) {
    Real tol = 1e-13L * (1 + std::fabs(sa) + std::fabs(sb));
    if (sb - sa <= tol) break;
    Real sm = sa + (sb - sa) / 2;
    if (!(sm > sa && sm < sb)) break;
    Real fm = Dfun(sm);
    take(sm, fm);
    if ((fm > 0) == (fa > 0)) {
      sa = sm;
      fa = fm;
    } else {
      sb = sm;
      fb = fm;
    }
  }
  Real s0 = sa, f0 = fa, s1 = sb, f1 = fb;
  for (int k = 0; k < 2; ++k) {
    if (f1 == f0) break;
    Real s2 = s1 - f1 * (s1 - s0) / (f1 - f0);
    if (!(s2 >= sa && s2 <= sb)) s2 = sa + (sb - sa) / 2;
    Real f2 = Dfun(s2);
    take(s2, f2);
    if ((f2 > 0) == (fa > 0)) {
      sa = s2;
      fa = f2;
    } else {
      sb = s2;
      fb = f2;
    }
    s0 = s1;
    f0 = f1;
    s1 = s2;
    f1 = f2;
  }
  AlphaRoot r;
  r.alpha = alpha_of(s_best);
  r.residual = std::fabs(f_best);
  Real a1 = alpha_of(sa), a2 = alpha_of(sb);
  r.bracket_lo = std::min(a1, a2);
  r.bracket_hi = std::max(a1, a2);
  r.branch = branch;
  return r;
}

}  // namespace detail

// Solves H(alpha) = 1. Root finding runs in s = log(distance of alpha from
// the domain edge): the roots sit exponentially close to the edge as the
// dissipation parameter vanishes, and s is the natural variable there.
inline std::vector<AlphaRoot> solve_alpha(const ReducedModel& m, Real param,
                                          const QuadratureSpec& spec = {}) {
  if (!(param > 0)) throw std::invalid_argument("solve_alpha: param must be positive");
  HEval H(m, param, spec);
  long evals = 0;
  auto alpha_of = [&m](Real s) { return m.alpha_edge + m.alpha_side * std::exp(s); };
  auto D = [&](Real s) {
    ++evals;
    return H(alpha_of(s)) - 1;
  };

  const Real S_MIN = -11300.0L;  // below this, alpha is not representable off the edge
  const Real S_CAP = std::log((Real)1e12);
  std::vector<AlphaRoot> roots;

  if (m.model != Model::VP) {
    // Single root, H (hence D) decreasing in s. Start from the analytic
    // bracket's far end, which the chord construction guarantees has H <= 1,
    // then walk down toward the edge for the H > 1 side.
    AlphaBracket br = m.analytic_alpha_bracket(param);
    Real d_hi = m.model == Model::VB ? -br.lo : br.hi - m.alpha_edge;
    if (!(d_hi > 0) || !std::isfinite((double)d_hi)) d_hi = 1;
    Real s_neg = std::log(d_hi);
    Real f_neg = D(s_neg);
    int guard = 0;
    while (f_neg > 0 && guard++ < 300) {
      s_neg += 2;
      f_neg = D(s_neg);
    }
    if (f_neg > 0)
      fail(Errc::BracketExpansionExhausted, "H stayed above 1 far beyond the analytic bracket");
    Real s_pos = 0, f_pos = 0;
    bool found = false;
    Real s_try = s_neg;
    for (guard = 0; guard < 4000; ++guard) {
      s_try -= 4;
      if (s_try < S_MIN)
        fail(Errc::NoRootInDomain, "H stays below 1 down to the representable domain edge");
      Real f_try = D(s_try);
      if (f_try > 0) {
        s_pos = s_try;
        f_pos = f_try;
        found = true;
        break;
      }
      s_neg = s_try;
      f_neg = f_try;
    }
    if (!found) fail(Errc::NoRootInDomain, "no sign change while walking toward the edge");
    Branch branch = m.model == Model::HB ? Branch::NearFStar : Branch::NearZero;
    AlphaRoot r = detail::refine_root(D, s_pos, f_pos, s_neg, f_neg, alpha_of, branch);
    r.evaluations = evals;
    roots.push_back(r);
    return roots;
  }

  // VP: scan D on a log grid. delta <= 1 gives one sign change; delta > 1
  // can give a near-zero root, a dip, and a divergent root, or no root at
  // all once the dip no longer reaches H = 1.
  std::vector<std::pair<Real, Real>> grid;
  Real s_lo_grid = -40;
  {
    Real f =  D(s_lo_grid);
    int guard = 0;
    while (f < 0 && guard++ < 2000) {
      s_lo_grid -= 8;
      if (s_lo_grid < S_MIN)
        fail(Errc::NoRootInDomain, "H stays below 1 down to the representable domain edge");
      f = D(s_lo_grid);
    }
    grid.emplace_back(s_lo_grid, f);
  }
  for (Real s = -40; s <= S_CAP + 0.5L; s += 1) {
    Real sc = std::min(s, S_CAP);
    if (sc <= grid.back().first) continue;
    grid.emplace_back(sc, D(sc));
  }

  std::vector<std::pair<int, int>> changes;  // index pairs with a sign change
  for (int i = 0; i + 1 < (int)grid.size(); ++i)
    if ((grid[i].second > 0) != (grid[i + 1].second > 0)) changes.emplace_back(i, i + 1);

  if (changes.empty()) {
    int imin = 0;
    for (int i = 1; i < (int)grid.size(); ++i)
      if (grid[i].second < grid[imin].second) imin = i;
    if (imin == (int)grid.size() - 1)
      fail(Errc::BracketExpansionExhausted,
           "no sign change in H - 1 up to |alpha| = 1e12");
    fail(Errc::NoRootInDomain,
         "H - 1 has an interior minimum above 0: no root for this parameter");
  }

  {
    auto [i, j] = changes.front();
    AlphaRoot r = detail::refine_root(D, grid[i].first, grid[i].second, grid[j].first,
                                      grid[j].second, alpha_of, Branch::NearZero);
    r.evaluations = evals;
    roots.push_back(r);
  }
  if (m.delta > 1 && changes.size() >= 2) {
    auto [i, j] = changes[1];
    AlphaRoot r = detail::refine_root(D, grid[i].first, grid[i].second, grid[j].first,
                                      grid[j].second, alpha_of, Branch::Divergent);
    r.evaluations = evals;
    roots.push_back(r);
  }
  return roots;
}

// J(alpha) for the temperature-viscous polytropic reduction, H with the
// dissipation scale divided out. Useful for reports and for seeing the
// two-root structure at delta > 1.
inline std::vector<std::pair<Real, Real>> scan_J(const ReducedModel& m,
                                                 const std::vector<Real>& alphas,
                                                 const QuadratureSpec& spec = {}) {
  std::vector<std::pair<Real, Real>> out;
  out.reserve(alphas.size());
  Real s1 = m.scale(1);
  for (Real a : alphas) out.emplace_back(a, eval_H(m, 1, a, spec) / s1);
  return out;
}

}  // namespace shockprof

#include "test_util.hpp"

#include <random>

#include <shockprof/asymptotics.hpp>

using namespace shockprof;

static GasLaw baro{GasKind::BarotropicIsentropic, 1.4L};
static GasLaw poly{GasKind::PolytropicFull, 1.4L};

static ReducedModel hb() {
  return make_reduced(make_pair(baro, Jump::MassBernoulli, ref::baro_M0sq), Model::HB);
}
static ReducedModel hp(Real M0sq = 1.2L) {
  return make_reduced(make_pair(poly, Jump::FullEuler, M0sq), Model::HP);
}
static ReducedModel vb(Real delta) {
  return make_reduced(make_pair(baro, Jump::MassMomentum, ref::baro_M0sq), Model::VB, delta);
}
static ReducedModel vp(Real delta) {
  return make_reduced(make_pair(poly, Jump::FullEuler, 1.2L), Model::VP, delta);
}

TEST_CASE("limit locations against frozen references") {
  REQUIRE(rel_err(limit_location(hp()), 0.7611940298507462687L) < 1e-15L);

  REQUIRE(rel_err(limit_location(vb(0)), 0.6434053887919922343L) < 1e-15L);
  REQUIRE(rel_err(limit_location(vb(0.5L)), 0.5816158555433032995L) < 1e-15L);
  REQUIRE(rel_err(limit_location(vb(1)), 0.5171545009163111849L) < 1e-15L);
  REQUIRE(rel_err(limit_location(vb(2)), 0.3886749310592434798L) < 1e-15L);

  REQUIRE(rel_err(limit_location(vp(0)), 0.5373134328358208955L) < 1e-15L);
  REQUIRE(rel_err(limit_location(vp(0.5L)), 0.5298238884567102016L) < 1e-15L);
  REQUIRE(rel_err(limit_location(vp(1)), 0.5223208888052984403L) < 1e-15L);
  REQUIRE(rel_err(limit_location(vp(2)), 0.5072880187817764018L) < 1e-15L);
}

TEST_CASE("limit location is inside the unit interval across the windows") {
  std::mt19937 rng(20250822);
  std::uniform_real_distribution<double> ug(1.08, 2.6), um(0.02, 0.98);
  for (int k = 0; k < 100; ++k) {
    Real g = (Real)ug(rng);
    // heat-conductive polytropic window
    {
      Real bound = (3 * g - 1) / (g * (3 - g));
      Real M0sq = 1 + (bound - 1) * (Real)um(rng);
      GasLaw law{GasKind::PolytropicFull, g};
      ReducedModel m = make_reduced(make_pair(law, Jump::FullEuler, M0sq), Model::HP);
      Real X = limit_location(m);  // both algebraic forms agree or this throws
      REQUIRE(X > 0.5L);
      REQUIRE(X < 1.0L);
    }
    // temperature-viscous polytropic window
    {
      Real bound = 2 * g / (g - 1);
      Real M0sq = 1 + (bound - 1) * (Real)um(rng);
      GasLaw law{GasKind::PolytropicFull, g};
      ReducedModel m = make_reduced(make_pair(law, Jump::FullEuler, M0sq), Model::VP,
                                    (Real)(2.0 * um(rng)));
      Real X = limit_location(m);
      REQUIRE(X > 0.0L);
      REQUIRE(X < 1.0L);
    }
    // temperature-viscous barotropic (any supersonic upstream)
    {
      GasLaw law{GasKind::BarotropicIsentropic, g};
      Real M0sq = 1 + 4 * (Real)um(rng);
      ReducedModel m = make_reduced(make_pair(law, Jump::MassMomentum, M0sq), Model::VB,
                                    (Real)(2.0 * um(rng)));
      Real X = limit_location(m);
      REQUIRE(X > 0.0L);
      REQUIRE(X < 1.0L);
    }
  }
}

TEST_CASE("limit location hits the right edge exactly at the boundary Mach number") {
  Real g = 1.4L;
  Real bound = (3 * g - 1) / (g * (3 - g));
  REQUIRE(rel_err(limit_location(hp(bound)), 1.0L) < 1e-12L);

  // beyond the window the formula leaves the unit interval
  GasLaw law{GasKind::PolytropicFull, g};
  ReducedModel m = make_reduced(make_pair(law, Jump::FullEuler, bound + 0.1L), Model::HP);
  try {
    limit_location(m);
    FAIL("expected XOutOfUnitInterval");
  } catch (const SolverError& e) {
    REQUIRE(e.code() == Errc::XOutOfUnitInterval);
  }
}

TEST_CASE("limit alpha per model and branch") {
  ReducedModel m = hb();
  REQUIRE(limit_alpha(m) == m.alpha_edge);
  REQUIRE(limit_alpha(hp()) == 0.0L);
  REQUIRE(limit_alpha(vb(1)) == 0.0L);
  REQUIRE(limit_alpha(vp(2), Branch::NearZero) == 0.0L);
  REQUIRE(limit_alpha(vp(2), Branch::Divergent) ==
          -std::numeric_limits<Real>::infinity());
  REQUIRE_THROWS_AS(limit_location(hb()), std::invalid_argument);
}

TEST_CASE("step distance and plateau measure on synthetic profiles") {
  Profile pr;
  int n = 200;
  for (int i = 0; i <= n; ++i) {
    Real x = (Real)i / n;
    pr.x.push_back(x);
    pr.w.push_back(x < 0.25L ? 1.0L : 3.0L);
  }
  REQUIRE(l1_to_step(pr, 0.25L) < 1e-18L);
  // moving the step by dx costs |jump| * dx
  REQUIRE(rel_err(l1_to_step(pr, 0.35L), 2.0L * 0.1L) < 2e-2L);

  Profile flat;
  for (int i = 0; i <= n; ++i) {
    flat.x.push_back((Real)i / n);
    flat.w.push_back(i < 50 ? 5.0L : 2.0L);
  }
  REQUIRE(rel_err(plateau_measure(flat, 2.0L, 0.5L), (Real)151 / 201) < 1e-18L);
}

TEST_CASE("sweep rows approach the closed-form limit") {
  ReducedModel m = vb(1);
  SweepResult sw = run_sweep(m, {0.1L, 0.03L, 0.01L, 0.003L}, Branch::NearZero, 256);
  REQUIRE(sw.rows.size() == 4);
  REQUIRE(rel_err(sw.limit_location, 0.5171545009163111849L) < 1e-15L);
  Real prev_l1 = std::numeric_limits<Real>::infinity();
  Real prev_gap = std::numeric_limits<Real>::infinity();
  for (const SweepRow& row : sw.rows) {
    CAPTURE((double)row.param, row.error);
    REQUIRE(row.ok);
    REQUIRE(row.branch == Branch::NearZero);
    REQUIRE(row.l1_to_limit < prev_l1);
    Real gap = std::fabs(row.midpoint_x - sw.limit_location);
    REQUIRE(gap < prev_gap);
    prev_l1 = row.l1_to_limit;
    prev_gap = gap;
  }
  REQUIRE(std::fabs(sw.rows.back().midpoint_x - sw.limit_location) < 2e-3L);
}

TEST_CASE("sweep on the plateau-forming model measures the plateau") {
  ReducedModel m = hb();
  SweepResult sw = run_sweep(m, {0.1L, 0.01L, 0.001L}, Branch::NearFStar, 256);
  REQUIRE(std::isnan((double)sw.limit_location));
  Real prev_pl = -1;
  for (const SweepRow& row : sw.rows) {
    CAPTURE((double)row.param, row.error);
    REQUIRE(row.ok);
    REQUIRE(row.branch == Branch::NearFStar);
    REQUIRE(row.plateau_measure > prev_pl);
    prev_pl = row.plateau_measure;
  }
  REQUIRE(sw.rows.back().plateau_measure > 0.8L);
}

TEST_CASE("sweep records failures per parameter instead of aborting") {
  ReducedModel m = vp(2);
  SweepResult sw = run_sweep(m, {200.0L, 0.01L}, Branch::NearZero, 64);
  REQUIRE(!sw.rows[0].ok);
  REQUIRE(sw.rows[0].error == "NoRootInDomain");
  REQUIRE(sw.rows[1].ok);
}

TEST_CASE("divergent-branch sweep tracks the pressure blowup") {
  ReducedModel m = vp(2);
  SweepResult sw = run_sweep(m, {0.01L, 0.005L}, Branch::Divergent, 128);
  REQUIRE(sw.limit_alpha == -std::numeric_limits<Real>::infinity());
  Real prev = 0;
  for (const SweepRow& row : sw.rows) {
    CAPTURE((double)row.param, row.error);
    REQUIRE(row.ok);
    REQUIRE(row.branch == Branch::Divergent);
    REQUIRE(row.max_pressure > prev);
    prev = row.max_pressure;
  }
}

// Sweeps the conduction coefficient for the polytropic model and prints how
// the profile midpoint homes in on the predicted limit location.

#include <cstdio>

#include <shockprof/shockprof.hpp>

using namespace shockprof;

int main() {
  GasLaw law{GasKind::PolytropicFull, 1.4L};
  ReducedModel m = make_reduced(make_pair(law, Jump::FullEuler, 1.2L), Model::HP);

  std::vector<Real> kappas;
  for (Real k = 0.1L; k > 0.8e-4L; k /= 2) kappas.push_back(k);
  SweepResult sw = run_sweep(m, kappas);

  std::printf("limit location X = %.12Lf\n\n", sw.limit_location);
  std::printf("%12s %22s %12s %12s %12s\n", "kappa", "alpha", "midpoint", "|mid - X|",
              "L1 to step");
  for (const SweepRow& r : sw.rows) {
    if (!r.ok) {
      std::printf("%12.4Lg  failed: %s\n", r.param, r.error.c_str());
      continue;
    }
    std::printf("%12.4Lg %22.14Lg %12.8Lf %12.4Lg %12.4Lg\n", r.param, r.alpha,
                r.midpoint_x, std::fabs(r.midpoint_x - sw.limit_location),
                r.l1_to_limit);
  }
  return 0;
}

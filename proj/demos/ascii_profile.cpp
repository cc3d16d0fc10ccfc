// Draws shock profiles as ASCII curves for a few viscosity strengths so the
// sharpening toward the limiting step is visible at a glance.

#include <cstdio>
#include <cstring>

#include <shockprof/shockprof.hpp>

using namespace shockprof;

int main() {
  GasLaw law{GasKind::BarotropicIsentropic, 1.4L};
  Real M0sq = upstream_M0sq_from_q0(law, 1.5L);
  ReducedModel m = make_reduced(make_pair(law, jump_for(Model::VB), M0sq), Model::VB, 1);

  const int W = 72, H = 21;
  char grid[H][W + 1];
  for (auto& row : grid) {
    std::memset(row, ' ', W);
    row[W] = 0;
  }

  const Real mus[] = {0.1L, 0.02L, 0.002L};
  const char marks[] = {'.', '+', '#'};
  for (int c = 0; c < 3; ++c) {
    AlphaRoot root = solve_alpha(m, mus[c]).front();
    Profile pr = reconstruct(m, mus[c], root.alpha, W);
    for (int i = 0; i < W; ++i) {
      Real frac = (pr.w[i] - m.w_in) / (m.w_out - m.w_in);  // 0 upstream, 1 downstream
      int r = (int)(frac * (H - 1) + 0.5L);                 // u falls, so the curve steps down

      grid[r][i] = marks[c];
    }
  }

  std::printf("gas speed u(x), q0 = 1.5, gamma = 1.4, delta = 1\n");
  std::printf("  '%c' mu = %Lg   '%c' mu = %Lg   '%c' mu = %Lg\n\n", marks[0], mus[0],
              marks[1], mus[1], marks[2], mus[2]);
  for (int r = 0; r < H; ++r) std::printf("  |%s\n", grid[r]);
  std::printf("  +");
  for (int i = 0; i < W; ++i) std::putchar('-');
  std::printf("\n   x = 0%*s\n", W - 5, "x = 1");
  std::printf("\nlimit step location X = %.6Lf\n", limit_location(m));
  return 0;
}

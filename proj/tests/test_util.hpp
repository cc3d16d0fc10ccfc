#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include <shockprof/gas.hpp>

using shockprof::Real;

inline Real rel_err(Real got, Real want) {
  return std::fabs(got - want) / std::max(std::fabs(want), (Real)1e-300L);
}

// frozen reference values, cross-checked against a 60-digit computation
namespace ref {

// barotropic gamma = 1.4, q0 = 1.5
inline constexpr Real baro_M0sq = 1.8901270004860825274L;
inline constexpr Real hb_q1 = 0.8449263097139455678L;
inline constexpr Real vb_q1 = 0.8904170396426714015L;
inline constexpr Real hb_v0 = 0.8502830004171938886L;
inline constexpr Real hb_v1 = 1.0697257905819329931L;
inline constexpr Real hb_vstar = 0.9454647191178355394L;
inline constexpr Real hb_fstar = -0.1300386811652693446L;
inline constexpr Real vb_qstar = 1.1505001550477817103L;
inline constexpr Real vb_fstar = -0.0945693535295510891L;

// polytropic gamma = 1.4, M0^2 = 1.2
inline constexpr Real poly_p0 = 0.5952380952380952381L;
inline constexpr Real poly_q1 = 0.8611111111111111111L;
inline constexpr Real poly_p1 = 0.7341269841269841270L;
inline constexpr Real poly_A = 1.5952380952380952381L;
inline constexpr Real poly_Phi0 = 2.5833333333333333333L;
inline constexpr Real poly_M1sq = 0.8378378378378378378L;

}  // namespace ref

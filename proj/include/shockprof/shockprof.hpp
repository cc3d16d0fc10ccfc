#pragma once

// umbrella header: steady shock-profile solvers for dissipative gas models

#include "alpha_solve.hpp"
#include "asymptotics.hpp"
#include "config.hpp"
#include "core.hpp"
#include "gas.hpp"
#include "models.hpp"
#include "profile.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "shooting.hpp"

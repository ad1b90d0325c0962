#pragma once

#include "casimir/config.hpp"
#include "casimir/core.hpp"
#include "casimir/equilibrium.hpp"
#include "casimir/materials.hpp"
#include "casimir/nonequilibrium.hpp"
#include "casimir/numerics/matsubara.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/special_functions.hpp"
#include "casimir/scan.hpp"
#include "casimir/shift.hpp"
#include "casimir/units.hpp"
#include "casimir/validation.hpp"

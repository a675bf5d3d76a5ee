#pragma once

#include "wavepkt/decoherence.hpp"
#include "wavepkt/errors.hpp"
#include "wavepkt/gaussian.hpp"
#include "wavepkt/monte_carlo.hpp"
#include "wavepkt/propagator.hpp"
#include "wavepkt/squeeze_sql.hpp"
#include "wavepkt/thermal.hpp"
#include "wavepkt/units.hpp"

// catnoise.hpp
// Umbrella header.

#pragma once

#include "catnoise/config.hpp"
#include "catnoise/qstate.hpp"
#include "catnoise/cat_states.hpp"
#include "catnoise/noise.hpp"
#include "catnoise/entanglement.hpp"
#include "catnoise/analytic_wcat.hpp"
#include "catnoise/experiments.hpp"
#include "catnoise/validation.hpp"

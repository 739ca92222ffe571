#pragma once

#include "spinsqueeze/closed_forms.hpp"
#include "spinsqueeze/coherent_states.hpp"
#include "spinsqueeze/errors.hpp"
#include "spinsqueeze/nonlinear_function.hpp"
#include "spinsqueeze/numeric.hpp"
#include "spinsqueeze/spin_algebra.hpp"
#include "spinsqueeze/squeezing.hpp"
#include "spinsqueeze/sweep.hpp"
#include "spinsqueeze/verification.hpp"

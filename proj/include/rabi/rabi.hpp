// rabi.hpp — Umbrella header

#pragma once

#include "rabi/adiabatic.hpp"
#include "rabi/bloch_siegert.hpp"
#include "rabi/dynamics.hpp"
#include "rabi/eigensolve.hpp"
#include "rabi/errors.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/observables.hpp"
#include "rabi/params.hpp"
#include "rabi/peaks.hpp"
#include "rabi/regimes.hpp"
#include "rabi/special_functions.hpp"
#include "rabi/state.hpp"

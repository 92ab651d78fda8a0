#pragma once

// Umbrella header.

#include "solitonlab/analysis.hpp"
#include "solitonlab/dynamics.hpp"
#include "solitonlab/io.hpp"
#include "solitonlab/ode.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/shooting.hpp"
#include "solitonlab/systems.hpp"
#include "solitonlab/version.hpp"

#pragma once

// Scenario-conditioned expected credit loss engine: PD term-structure
// conversions, logit overlays, Frye-Jacobs LGD proxying, sectoral
// calibration via OLS on logit PD differences, and portfolio ECL runs.

#include "secl/calibration.hpp"
#include "secl/csv.hpp"
#include "secl/ecl.hpp"
#include "secl/errors.hpp"
#include "secl/io.hpp"
#include "secl/lgd.hpp"
#include "secl/normal.hpp"
#include "secl/overlay.hpp"
#include "secl/pd_term.hpp"
#include "secl/prob.hpp"
#include "secl/regression.hpp"
#include "secl/scheme.hpp"
#include "secl/stats.hpp"
#include "secl/synth.hpp"

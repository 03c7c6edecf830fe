#pragma once

// Umbrella header for the gridmtd library.

#include "gridmtd/attack.hpp"
#include "gridmtd/campaign.hpp"
#include "gridmtd/cases.hpp"
#include "gridmtd/chi2.hpp"
#include "gridmtd/design.hpp"
#include "gridmtd/grid.hpp"
#include "gridmtd/optimize.hpp"
#include "gridmtd/placement.hpp"
#include "gridmtd/powerflow.hpp"
#include "gridmtd/random.hpp"
#include "gridmtd/subspace.hpp"

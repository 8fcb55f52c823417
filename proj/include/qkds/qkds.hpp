#pragma once

// Umbrella header.

#include "qkds/error.hpp"
#include "qkds/io/file.hpp"
#include "qkds/io/format.hpp"
#include "qkds/io/report.hpp"
#include "qkds/io/scenario.hpp"
#include "qkds/math.hpp"
#include "qkds/models/acbs.hpp"
#include "qkds/models/cbs.hpp"
#include "qkds/models/cbsf.hpp"
#include "qkds/models/evaluate.hpp"
#include "qkds/models/lossy.hpp"
#include "qkds/models/mixed.hpp"
#include "qkds/models/pns.hpp"
#include "qkds/parallel.hpp"
#include "qkds/sim/estimate.hpp"
#include "qkds/sim/exact.hpp"
#include "qkds/sim/rng.hpp"
#include "qkds/sim/trajectory.hpp"
#include "qkds/solvers/calibrate.hpp"
#include "qkds/solvers/root.hpp"
#include "qkds/sweep/grid.hpp"
#include "qkds/sweep/regions.hpp"
#include "qkds/sweep/sweep.hpp"
#include "qkds/types.hpp"

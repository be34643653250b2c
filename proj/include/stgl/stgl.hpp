#pragma once

// Umbrella header.

#include "stgl/cli.hpp"
#include "stgl/errors.hpp"
#include "stgl/graph_ops.hpp"
#include "stgl/io.hpp"
#include "stgl/metrics.hpp"
#include "stgl/objective.hpp"
#include "stgl/rng.hpp"
#include "stgl/solver.hpp"
#include "stgl/sweep.hpp"
#include "stgl/synth.hpp"
#include "stgl/temporal_ops.hpp"

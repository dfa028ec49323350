#pragma once

// Umbrella header: the whole library in one include.

#include "citeproj/graph.hpp"
#include "citeproj/impact.hpp"
#include "citeproj/io.hpp"
#include "citeproj/metrics.hpp"
#include "citeproj/nullmodel.hpp"
#include "citeproj/parallel.hpp"
#include "citeproj/pipeline.hpp"
#include "citeproj/projection.hpp"
#include "citeproj/rng.hpp"
#include "citeproj/stats.hpp"
#include "citeproj/synth.hpp"

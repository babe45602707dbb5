#pragma once

// Umbrella header for the learning-augmented k-clustering library.

#include "lakc/baselines.hpp"
#include "lakc/cost.hpp"
#include "lakc/errors.hpp"
#include "lakc/geomedian.hpp"
#include "lakc/harness.hpp"
#include "lakc/io.hpp"
#include "lakc/la_kmeans.hpp"
#include "lakc/la_kmedians.hpp"
#include "lakc/oracles.hpp"
#include "lakc/rng.hpp"
#include "lakc/types.hpp"
#include "lakc/window.hpp"

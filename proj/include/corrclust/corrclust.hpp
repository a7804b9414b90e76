#pragma once

// Umbrella header for the correlation clustering local-search toolkit.

#include "corrclust/baselines.hpp"
#include "corrclust/clustering.hpp"
#include "corrclust/cost.hpp"
#include "corrclust/flip_pipeline.hpp"
#include "corrclust/generators.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/local_search.hpp"
#include "corrclust/pivot.hpp"
#include "corrclust/preclustering.hpp"
#include "corrclust/rational.hpp"
#include "corrclust/report.hpp"
#include "corrclust/rng.hpp"
#include "corrclust/sampling.hpp"
#include "corrclust/verify.hpp"
#include "corrclust/weights.hpp"

#pragma once

// Umbrella header: least squares ranking on graphs via the Hodge
// decomposition of edge flows on clique complexes.

#include "hodge/bench.hpp"
#include "hodge/complex.hpp"
#include "hodge/errors.hpp"
#include "hodge/generators.hpp"
#include "hodge/io.hpp"
#include "hodge/ranking.hpp"
#include "hodge/reorder.hpp"
#include "hodge/rng.hpp"
#include "hodge/solvers.hpp"
#include "hodge/sparse.hpp"
#include "hodge/spectral.hpp"
#include "hodge/topology.hpp"

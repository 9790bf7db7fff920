#pragma once

// Seeded random instances for the CLI, the tests and the benchmarks.

#include <random>

#include "hardy/dual.hpp"
#include "hardy/fock.hpp"
#include "hardy/graph.hpp"
#include "hardy/mobius.hpp"

namespace hardy {

// Standard complex Gaussian scalar.
cplx random_complex(std::mt19937_64& rng);

// Random direction rescaled to a norm drawn uniformly from [0, max_norm).
DualPoint random_point(const GraphPtr& g, std::mt19937_64& rng, double max_norm);

// Every path of length <= degree gets a coefficient uniform in the unit square.
HardyPoly random_poly(const GraphPtr& g, std::size_t degree, std::mt19937_64& rng);

// Random loop weights with norm drawn uniformly from [0, max_norm).
CentralPoint random_central_point(const GraphPtr& g, std::mt19937_64& rng, double max_norm);

// Random graph on n vertices with at most max_edges edges; every vertex is
// the range of some edge. When want_loop is set at least one edge is a loop.
GraphPtr random_graph(std::size_t n, std::size_t max_edges, std::mt19937_64& rng, bool want_loop = false);

}  // namespace hardy

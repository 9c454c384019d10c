#pragma once

#include "kpart/graph.hpp"

#include <random>

namespace kpart {

using Rng = std::mt19937_64;

/// G(n, p): each pair independently with probability p.
Graph erdos_renyi(int n, double p, Rng & rng);

/// Uniform-ish d-regular graph by the pairing model with restarts.
/// Throws InvalidInput when n * d is odd or d >= n.
Graph random_regular(int n, int d, Rng & rng);

/// Copy of g with independent weights drawn from [min_weight, max_weight].
Graph with_random_weights(const Graph & g, Weight min_weight, Weight max_weight, Rng & rng);

}

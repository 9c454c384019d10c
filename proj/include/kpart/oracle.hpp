#pragma once

#include "kpart/engine.hpp"
#include "kpart/graph.hpp"

#include <optional>

namespace kpart::oracle {

struct BruteAnswer
{
    bool feasible = false;
    Natural count = 0;
    std::optional<Weight> min_weight;
};

/// Exhaustive scan over ordered k-tuples of provider sets. n <= 14 and at most
/// 10^4 sets in total, otherwise InvalidInput.
BruteAnswer brute_partition(const PartitionInstance & inst);

/// Smallest k admitting a proper k-coloring, by backtracking; n <= 12.
int brute_chromatic(const Graph & g);

/// Whether V splits into k dominating sets, over all k^n assignments; n <= 12.
bool brute_domatic(const Graph & g, int k);

/// Held-Karp over (subset, endpoint); n <= 16.
bool brute_hamcycle(const Graph & g);
std::optional<Weight> brute_tsp(const Graph & g);

/// Perfect matchings by recursion on the lowest unmatched vertex; n <= 20.
Natural brute_count_pm(const Graph & g);

}

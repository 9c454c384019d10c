#pragma once

#include "kpart/engine.hpp"
#include "kpart/graph.hpp"
#include "kpart/graphcore.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kpart {

enum class InfantStrategy
{
    /// Plain encoding for every solve.
    None,
    /// Core pair with the constants of the corresponding construction; falls
    /// back to the plain encoding when the graph is too small for it or the
    /// system would not shrink the code axis below 2^n.
    CoreConstruction,
    /// Greedy scattered set as A with Y empty. Its systems are used whenever
    /// they validate, savings or not, so small graphs exercise the infant
    /// encoding; polyspace solves with them get slow quickly.
    Scattered,
};

struct DriverOptions
{
    EngineConfig engine;
    InfantStrategy infants = InfantStrategy::CoreConstruction;
    /// Replaces the construction's own (nu, mu, a, c).
    std::optional<CoreParams> core_override;
    /// Receives one line per guess-loop milestone.
    std::function<void(const std::string &)> progress;
};

struct DriverStats
{
    std::size_t guesses = 0;
    std::size_t engine_calls = 0;
    std::size_t infant_solves = 0;
    /// Solves where a system was requested but unavailable or invalid.
    std::size_t fallbacks = 0;
    std::uint64_t max_packed_domain = 0;
    std::map<std::string, std::size_t> engine_paths;

    void record(const SolveAnswer & answer, bool with_system);
};

/// List coloring with preferences on `graph`: lists[v - 1] holds the allowed
/// colors of v (ascending, within 1..k) and preferred[v - 1] one of them.
struct ColoringInstance
{
    Graph graph;
    int k = 0;
    std::vector<std::vector<int>> lists;
    std::vector<int> preferred;
};

/// Color classes as a partition problem: part c ranges over independent sets I
/// with c allowed on I and N[v] meeting I for every v preferring c.
PartitionInstance coloring_partition_instance(const ColoringInstance & inst);

/// True iff a proper list coloring exists. Throws InvalidInput when some
/// preferred color is missing from its list. An invalid system is ignored.
bool decide_coloring_with_preferences(const ColoringInstance & inst, const std::optional<InfantSystem> & sys,
    const DriverOptions & options = {}, DriverStats * stats = nullptr);

/// The list-coloring instance left on G \ Y by a coloring of Y, with the
/// preferred colors and infant system built from the core pair.
struct ColoringReduction
{
    ColoringInstance instance;
    /// instance vertex i is original[i - 1] of the input graph
    std::vector<Vertex> original;
    std::optional<InfantSystem> system;
    /// false when some vertex has no color left
    bool lists_nonempty = true;
};

/// `y_colors[v - 1]` is the color of v for v in core.Y and 0 elsewhere.
/// When `bucket_truncation` is set, C is cut to floor(|A| / 2^k) first.
ColoringReduction build_coloring_infants(const Graph & g, int k, const std::vector<int> & y_colors,
    const CorePair & core, bool bucket_truncation = true);

bool k_colorable(const Graph & g, int k, const DriverOptions & options = {}, DriverStats * stats = nullptr);
int chromatic_number(const Graph & g, const DriverOptions & options = {}, DriverStats * stats = nullptr);

/// A proper coloring with colors 1..k found by fixing one vertex at a time.
std::optional<std::vector<int>> find_coloring(const Graph & g, int k, const DriverOptions & options = {});

/// Families N[c] plus one spare vertex as the infant, for centers c of a
/// greedy independent set of G^2 cut to floor(n / (Delta^2 + 2)); q = Delta + 2.
std::optional<InfantSystem> domatic_infant_system(const Graph & g);

bool domatic_decision(const Graph & g, int k, const DriverOptions & options = {}, DriverStats * stats = nullptr);
/// Largest k with a domatic partition into k dominating sets.
int domatic_number(const Graph & g, const DriverOptions & options = {}, DriverStats * stats = nullptr);

bool hamiltonian_cycle(const Graph & g, const DriverOptions & options = {}, DriverStats * stats = nullptr);

/// Minimum weight of a Hamiltonian cycle. Unweighted graphs count 1 per edge.
std::optional<Weight> tsp(const Graph & g, const DriverOptions & options = {}, DriverStats * stats = nullptr);

/// Number of perfect matchings; throws InvalidInput on an odd vertex count.
Natural count_perfect_matchings(const Graph & g, const DriverOptions & options = {}, DriverStats * stats = nullptr);

/// Segment sizes for splitting n into k parts: difference at most 1, larger first.
std::vector<int> segment_sizes(int n, int k);

}

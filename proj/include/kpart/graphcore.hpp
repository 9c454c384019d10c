#pragma once

#include "kpart/graph.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace kpart {

/// 2|E| / n, or 0 for the empty graph.
Rational average_degree(const Graph & g);

/// G^2: u ~ v iff their distance in G is 1 or 2.
Graph square(const Graph & g);

/// Smallest-index-first maximal independent set; size >= ceil(n / (Delta + 1)).
std::vector<Vertex> greedy_independent_set(const Graph & g);

/// First D in [m, floor(m e^(alpha+1) + 1)] with |V_{>D}| <= n d / (alpha D).
///
/// d defaults to the average degree of g. Throws std::logic_error if the scan
/// runs out of range, which the averaging argument rules out.
long long find_degree_threshold(const Graph & g, long long m, double alpha);
long long find_degree_threshold(const Graph & g, long long m, double alpha, double d_bound);

/// Greedy set B, independent in G^2, of vertices with degree <= 2 d_bound.
/// |B| >= ceil(n / (6 Delta d_bound)) whenever the average degree is <= d_bound
/// and Delta d_bound >= 1.
std::vector<Vertex> find_scattered_set(const Graph & g, double d_bound);

struct CoreParams
{
    double nu = 1.0;
    double mu = 0.5;
    double a = 0.0;
    double c = 0.5;
};

/// The sets (A, Y) of the high-degree core decomposition together with the
/// constants that were used to build them.
struct CorePair
{
    std::vector<Vertex> A;
    std::vector<Vertex> Y;
    CoreParams params;
    double d_eff = 1.0;
    long long m = 1;
    long long alpha = 1;
    long long D = 1;
    /// -log2 of the per-(n/D) savings base; beta = beta_prime * e^-alpha.
    double beta_prime = 0.0;

    long double beta() const;

    /// log2( binom(|A|,|Y|)^a * nu^|Y| * mu^|A| ).
    long double log2_savings() const;
};

/// Builds (A, Y) with A cap Y empty, A independent in (G \ Y)^2, 2|Y| <= |A| <= cn
/// and every A-vertex of degree <= 2 d_eff in G \ Y.
///
/// Returns nothing when the graph is too small for a nonempty A with
/// 2|Y| <= |A| after truncation, or when no alpha below 2^20 works. Throws InvalidInput on nu < 1, mu outside
/// (0,1), a < 0 or c outside (0,1).
std::optional<CorePair> find_core_pair(const Graph & g, const CoreParams & params);

/// Maximum matching of the complement graph, pairs (u, v) with u < v sorted by u.
/// Requires an even vertex count and n <= 30.
std::vector<std::pair<Vertex, Vertex>> complement_matching(const Graph & g);

}

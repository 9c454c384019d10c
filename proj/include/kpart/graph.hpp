#pragma once

#include "kpart/types.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace kpart {

using Rational = boost::rational<long long>;

struct Edge
{
    Vertex u;
    Vertex v;
    Weight weight = 1;

    auto operator<=> (const Edge &) const = default;
};

/// Simple undirected graph on vertices 1..n, optionally edge-weighted.
///
/// A graph is either unweighted (every edge reports weight 1) or weighted, in
/// which case every edge carries an explicit nonnegative weight.
class Graph
{
public:
    explicit Graph(int n = 0);
    Graph(int n, const std::vector<std::pair<Vertex, Vertex>> & edges);
    static Graph with_weights(int n, const std::vector<Edge> & weighted_edges);

    void add_edge(Vertex u, Vertex v);
    void add_edge(Vertex u, Vertex v, Weight w);

    int n() const { return static_cast<int>(adjacency_.size()) - 1; }
    std::size_t edge_count() const { return edge_count_; }
    bool is_weighted() const { return weighted_; }

    const std::vector<Vertex> & neighbors(Vertex v) const { return adjacency_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
    int max_degree() const;
    int min_degree() const;
    bool has_edge(Vertex u, Vertex v) const;
    Weight weight(Vertex u, Vertex v) const;

    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    /// Open neighborhood as a bitmask; requires n <= 64.
    SetMask neighbor_mask(Vertex v) const;
    SetMask closed_neighbor_mask(Vertex v) const { return neighbor_mask(v) | element_bit(v); }

private:
    void check_endpoints(Vertex u, Vertex v) const;
    void insert(Vertex u, Vertex v);

    std::vector<std::vector<Vertex>> adjacency_;
    std::map<std::pair<Vertex, Vertex>, Weight> weights_;
    std::size_t edge_count_ = 0;
    bool weighted_ = false;
};

/// G[S] with the new vertex i corresponding to original[i - 1].
struct InducedSubgraph
{
    Graph graph;
    std::vector<Vertex> original;
};

InducedSubgraph induced_subgraph(const Graph & g, const std::vector<bool> & keep);

/// G \ S for a vertex list S.
InducedSubgraph remove_vertices(const Graph & g, const std::vector<Vertex> & removed);

/// V_{>threshold}: vertices of degree strictly greater than threshold, ascending.
std::vector<Vertex> vertices_above(const Graph & g, long long threshold);

std::vector<Vertex> closed_neighborhood(const Graph & g, Vertex v);

Graph complement(const Graph & g);

/// Apply old -> new vertex relabeling perm (perm[v - 1] is the new id of v).
Graph relabel(const Graph & g, const std::vector<Vertex> & perm);

struct LabeledEdge
{
    Vertex u;
    Vertex v;
    std::array<Vertex, 2> label;
};

/// Multigraph with two-element edge labels; self-loops allowed, at most four
/// parallel edges per vertex pair.
class LabeledMultigraph
{
public:
    explicit LabeledMultigraph(int n = 0) : n_(n) {}

    void add_edge(Vertex u, Vertex v, std::array<Vertex, 2> label);

    int n() const { return n_; }
    const std::vector<LabeledEdge> & edges() const { return edges_; }
    std::size_t self_loop_count() const;

private:
    int n_;
    std::vector<LabeledEdge> edges_;
    std::map<std::pair<Vertex, Vertex>, int> multiplicity_;
};

}

#include "kpart/graph.hpp"

#include <algorithm>
#include <string>

namespace kpart {

Graph::Graph(int n)
{
    if (n < 0)
        throw InvalidInput("negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(n) + 1);
}

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>> & edges) : Graph(n)
{
    for (auto [u, v] : edges)
        add_edge(u, v);
}

Graph Graph::with_weights(int n, const std::vector<Edge> & weighted_edges)
{
    Graph g(n);
    for (const auto & e : weighted_edges)
        g.add_edge(e.u, e.v, e.weight);
    return g;
}

void Graph::check_endpoints(Vertex u, Vertex v) const
{
    if (u < 1 || v < 1 || u > n() || v > n())
        throw InvalidInput("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v)
        throw InvalidInput("self-loop at vertex " + std::to_string(u));
    if (has_edge(u, v))
        throw InvalidInput("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
}

void Graph::insert(Vertex u, Vertex v)
{
    auto & nu = adjacency_[u];
    nu.insert(std::lower_bound(nu.begin(), nu.end(), v), v);
    auto & nv = adjacency_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++edge_count_;
}

void Graph::add_edge(Vertex u, Vertex v)
{
    if (weighted_)
        throw InvalidInput("unweighted edge added to a weighted graph");
    check_endpoints(u, v);
    insert(u, v);
}

void Graph::add_edge(Vertex u, Vertex v, Weight w)
{
    if (! weighted_ && edge_count_ > 0)
        throw InvalidInput("weighted edge added to an unweighted graph");
    if (w < 0)
        throw InvalidInput("negative edge weight");
    check_endpoints(u, v);
    weighted_ = true;
    insert(u, v);
    weights_[{std::min(u, v), std::max(u, v)}] = w;
}

int Graph::max_degree() const
{
    int best = 0;
    for (Vertex v = 1; v <= n(); ++v)
        best = std::max(best, degree(v));
    return best;
}

int Graph::min_degree() const
{
    if (n() == 0)
        return 0;
    int best = degree(1);
    for (Vertex v = 2; v <= n(); ++v)
        best = std::min(best, degree(v));
    return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const
{
    if (u < 1 || u > n())
        return false;
    const auto & nu = adjacency_[u];
    return std::binary_search(nu.begin(), nu.end(), v);
}

Weight Graph::weight(Vertex u, Vertex v) const
{
    if (! has_edge(u, v))
        throw InvalidInput("no edge " + std::to_string(u) + " " + std::to_string(v));
    if (! weighted_)
        return 1;
    return weights_.at({std::min(u, v), std::max(u, v)});
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 1; u <= n(); ++u)
        for (Vertex v : adjacency_[u])
            if (u < v)
                out.push_back({u, v, weight(u, v)});
    return out;
}

SetMask Graph::neighbor_mask(Vertex v) const
{
    if (n() > kMaxMaskElements)
        throw InvalidInput("bitmask view needs n <= 64");
    SetMask s = 0;
    for (Vertex u : adjacency_.at(v))
        s |= element_bit(u);
    return s;
}

InducedSubgraph induced_subgraph(const Graph & g, const std::vector<bool> & keep)
{
    std::vector<Vertex> new_id(static_cast<std::size_t>(g.n()) + 1, 0);
    InducedSubgraph out;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (keep.at(v - 1)) {
            out.original.push_back(v);
            new_id[v] = static_cast<Vertex>(out.original.size());
        }
    out.graph = Graph(static_cast<int>(out.original.size()));
    for (const auto & e : g.edges())
        if (new_id[e.u] && new_id[e.v]) {
            if (g.is_weighted())
                out.graph.add_edge(new_id[e.u], new_id[e.v], e.weight);
            else
                out.graph.add_edge(new_id[e.u], new_id[e.v]);
        }
    return out;
}

InducedSubgraph remove_vertices(const Graph & g, const std::vector<Vertex> & removed)
{
    std::vector<bool> keep(g.n(), true);
    for (Vertex v : removed)
        keep.at(v - 1) = false;
    return induced_subgraph(g, keep);
}

std::vector<Vertex> vertices_above(const Graph & g, long long threshold)
{
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= g.n(); ++v)
        if (g.degree(v) > threshold)
            out.push_back(v);
    return out;
}

std::vector<Vertex> closed_neighborhood(const Graph & g, Vertex v)
{
    auto out = g.neighbors(v);
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

Graph complement(const Graph & g)
{
    Graph out(g.n());
    for (Vertex u = 1; u <= g.n(); ++u)
        for (Vertex v = u + 1; v <= g.n(); ++v)
            if (! g.has_edge(u, v))
                out.add_edge(u, v);
    return out;
}

Graph relabel(const Graph & g, const std::vector<Vertex> & perm)
{
    Graph out(g.n());
    for (const auto & e : g.edges()) {
        if (g.is_weighted())
            out.add_edge(perm.at(e.u - 1), perm.at(e.v - 1), e.weight);
        else
            out.add_edge(perm.at(e.u - 1), perm.at(e.v - 1));
    }
    return out;
}

void LabeledMultigraph::add_edge(Vertex u, Vertex v, std::array<Vertex, 2> label)
{
    if (u < 1 || v < 1 || u > n_ || v > n_)
        throw InvalidInput("multigraph endpoint out of range");
    if (label[0] == label[1])
        throw InvalidInput("edge label must have two distinct elements");
    auto & count = multiplicity_[{std::min(u, v), std::max(u, v)}];
    if (count == 4)
        throw InvalidInput("more than 4 parallel edges between a vertex pair");
    ++count;
    if (label[0] > label[1])
        std::swap(label[0], label[1]);
    edges_.push_back({u, v, label});
}

std::size_t LabeledMultigraph::self_loop_count() const
{
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(),
        [](const LabeledEdge & e) { return e.u == e.v; }));
}

}

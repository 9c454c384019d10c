#include "kpart/random_graphs.hpp"

#include <algorithm>
#include <set>

namespace kpart {

Graph erdos_renyi(int n, double p, Rng & rng)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

Graph random_regular(int n, int d, Rng & rng)
{
    if ((static_cast<long long>(n) * d) % 2 != 0 || (n > 0 && d >= n) || d < 0)
        throw InvalidInput("no simple d-regular graph on n vertices");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Vertex> points;
        for (Vertex v = 1; v <= n; ++v)
            for (int i = 0; i < d; ++i)
                points.push_back(v);
        std::shuffle(points.begin(), points.end(), rng);
        std::set<std::pair<Vertex, Vertex>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < points.size() && ok; i += 2) {
            auto [a, b] = std::minmax(points[i], points[i + 1]);
            ok = a != b && edges.emplace(a, b).second;
        }
        if (ok)
            return Graph(n, std::vector<std::pair<Vertex, Vertex>>(edges.begin(), edges.end()));
    }
    throw InvalidInput("pairing model kept producing multigraphs");
}

Graph with_random_weights(const Graph & g, Weight min_weight, Weight max_weight, Rng & rng)
{
    std::uniform_int_distribution<Weight> pick(min_weight, max_weight);
    std::vector<Edge> edges;
    for (const auto & e : g.edges())
        edges.push_back({e.u, e.v, pick(rng)});
    return Graph::with_weights(g.n(), edges);
}

}

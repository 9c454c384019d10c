#include "kpart/graphcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace kpart {

Rational average_degree(const Graph & g)
{
    if (g.n() == 0)
        return Rational(0);
    return Rational(2 * static_cast<long long>(g.edge_count()), g.n());
}

Graph square(const Graph & g)
{
    Graph out(g.n());
    std::vector<char> seen(static_cast<std::size_t>(g.n()) + 1, 0);
    for (Vertex u = 1; u <= g.n(); ++u) {
        std::vector<Vertex> reach;
        for (Vertex w : g.neighbors(u)) {
            reach.push_back(w);
            for (Vertex x : g.neighbors(w))
                reach.push_back(x);
        }
        for (Vertex v : reach)
            if (v > u && ! seen[v]) {
                seen[v] = 1;
                out.add_edge(u, v);
            }
        for (Vertex v : reach)
            seen[v] = 0;
    }
    return out;
}

std::vector<Vertex> greedy_independent_set(const Graph & g)
{
    std::vector<char> blocked(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (blocked[v])
            continue;
        out.push_back(v);
        for (Vertex u : g.neighbors(v))
            blocked[u] = 1;
    }
    return out;
}

long long find_degree_threshold(const Graph & g, long long m, double alpha)
{
    double d = g.n() == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count()) / g.n();
    return find_degree_threshold(g, m, alpha, d);
}

long long find_degree_threshold(const Graph & g, long long m, double alpha, double d_bound)
{
    if (m < 1 || alpha < 1.0)
        throw InvalidInput("find_degree_threshold needs m >= 1 and alpha >= 1");

    long double upper = static_cast<long double>(m) * std::exp(static_cast<long double>(alpha) + 1.0L) + 1.0L;
    long long M = upper >= static_cast<long double>(std::numeric_limits<long long>::max() / 2)
        ? std::numeric_limits<long long>::max() / 2
        : static_cast<long long>(std::floor(upper));

    // count[t] = number of vertices of degree exactly t
    int delta = g.max_degree();
    std::vector<long long> count(static_cast<std::size_t>(delta) + 2, 0);
    for (Vertex v = 1; v <= g.n(); ++v)
        ++count[g.degree(v)];
    std::vector<long long> above(static_cast<std::size_t>(delta) + 2, 0);
    for (int t = delta - 1; t >= 0; --t)
        above[t] = above[t + 1] + count[t + 1];

    long double budget = static_cast<long double>(g.n()) * d_bound;
    for (long long D = m; D <= M; ++D) {
        long long big = D >= delta ? 0 : above[D];
        if (static_cast<long double>(big) * alpha * D <= budget)
            return D;
    }
    throw std::logic_error("no degree threshold in range; average degree bound violated");
}

std::vector<Vertex> find_scattered_set(const Graph & g, double d_bound)
{
    std::vector<char> removed(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (removed[v] || g.degree(v) > 2.0 * d_bound)
            continue;
        out.push_back(v);
        removed[v] = 1;
        for (Vertex u : g.neighbors(v)) {
            removed[u] = 1;
            for (Vertex w : g.neighbors(u))
                removed[w] = 1;
        }
    }
    return out;
}

long double CorePair::beta() const
{
    return static_cast<long double>(beta_prime) * std::exp(-static_cast<long double>(alpha));
}

long double CorePair::log2_savings() const
{
    long double a_size = static_cast<long double>(A.size());
    long double y_size = static_cast<long double>(Y.size());
    long double log_binom = std::lgamma(a_size + 1) - std::lgamma(y_size + 1) - std::lgamma(a_size - y_size + 1);
    return params.a * log_binom / std::numbers::ln2_v<long double>
        + y_size * std::log2(static_cast<long double>(params.nu))
        + a_size * std::log2(static_cast<long double>(params.mu));
}

namespace {

    // natural log of (gamma alpha)^(d a / alpha) * nu^(d / alpha) * mu^(1 / (12 d))
    long double savings_log(const CoreParams & p, long double d, long double alpha)
    {
        long double gamma = std::numbers::e_v<long double> / (12.0L * d * d);
        return d * p.a / alpha * std::log(gamma * alpha)
            + d / alpha * std::log(static_cast<long double>(p.nu))
            + std::log(static_cast<long double>(p.mu)) / (12.0L * d);
    }

    std::optional<long long> choose_alpha(const CoreParams & p, long double d)
    {
        constexpr long long cap = 1LL << 20;
        long long start = static_cast<long long>(std::ceil(std::max({2.0L * d, 24.0L * d * d, 1.0L})));
        auto ok = [&](long long alpha) { return savings_log(p, d, static_cast<long double>(alpha)) < 0; };
        if (ok(start))
            return start;
        long long lo = start, hi = start;
        while (! ok(hi)) {
            lo = hi;
            hi *= 2;
            if (hi > cap)
                return std::nullopt;
        }
        // ok is monotone on [start, inf) since gamma * start >= 2e
        while (hi - lo > 1) {
            long long mid = lo + (hi - lo) / 2;
            (ok(mid) ? hi : lo) = mid;
        }
        return hi;
    }

}

std::optional<CorePair> find_core_pair(const Graph & g, const CoreParams & params)
{
    if (params.nu < 1.0)
        throw InvalidInput("core pair needs nu >= 1");
    if (! (params.mu > 0.0 && params.mu < 1.0))
        throw InvalidInput("core pair needs 0 < mu < 1");
    if (params.a < 0.0)
        throw InvalidInput("core pair needs a >= 0");
    if (! (params.c > 0.0 && params.c < 1.0))
        throw InvalidInput("core pair needs 0 < c < 1");

    CorePair core;
    core.params = params;
    int n = g.n();
    double d = n == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count()) / n;
    core.d_eff = std::max(d, 1.0);
    core.m = static_cast<long long>(std::ceil(1.0 / (12.0 * core.d_eff * params.c)));
    auto alpha = choose_alpha(params, core.d_eff);
    if (! alpha)
        return std::nullopt;
    core.alpha = *alpha;
    core.beta_prime = static_cast<double>(-savings_log(params, core.d_eff, core.alpha) / std::numbers::ln2_v<long double>);
    core.D = find_degree_threshold(g, core.m, static_cast<double>(core.alpha), core.d_eff);
    core.Y = vertices_above(g, core.D);

    auto rest = remove_vertices(g, core.Y);
    auto scattered = find_scattered_set(rest.graph, core.d_eff);
    long long by_degree = static_cast<long long>(std::floor(n / (12.0 * core.d_eff * static_cast<double>(core.D))));
    long long by_fraction = static_cast<long long>(std::floor(params.c * n));
    auto target = static_cast<std::size_t>(std::max(0LL, std::min(by_degree, by_fraction)));
    for (std::size_t i = 0; i < scattered.size() && i < target; ++i)
        core.A.push_back(rest.original[scattered[i] - 1]);

    if (core.A.empty() || 2 * core.Y.size() > core.A.size())
        return std::nullopt;
    return core;
}

std::vector<std::pair<Vertex, Vertex>> complement_matching(const Graph & g)
{
    int n = g.n();
    if (n % 2 != 0)
        throw InvalidInput("complement matching needs an even vertex count");
    if (n > 30)
        throw InvalidInput("complement matching is exact only up to 30 vertices");

    std::vector<std::uint32_t> free_adj(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && ! g.has_edge(u + 1, v + 1))
                free_adj[u] |= std::uint32_t{1} << v;

    std::unordered_map<std::uint32_t, int> memo;
    auto best = [&](auto && self, std::uint32_t mask) -> int {
        if (std::popcount(mask) < 2)
            return 0;
        if (auto it = memo.find(mask); it != memo.end())
            return it->second;
        int bound = std::popcount(mask) / 2;
        int v = std::countr_zero(mask);
        std::uint32_t rest = mask & ~(std::uint32_t{1} << v);
        int result = 0;
        for (std::uint32_t cand = free_adj[v] & rest; cand && result < bound; cand &= cand - 1) {
            int u = std::countr_zero(cand);
            result = std::max(result, 1 + self(self, rest & ~(std::uint32_t{1} << u)));
        }
        if (result < bound)
            result = std::max(result, self(self, rest));
        memo[mask] = result;
        return result;
    };

    std::vector<std::pair<Vertex, Vertex>> out;
    std::uint32_t mask = n == 32 ? ~0u : (std::uint32_t{1} << n) - 1;
    int remaining = best(best, mask);
    while (remaining > 0) {
        int v = std::countr_zero(mask);
        std::uint32_t rest = mask & ~(std::uint32_t{1} << v);
        bool matched = false;
        for (std::uint32_t cand = free_adj[v] & rest; cand; cand &= cand - 1) {
            int u = std::countr_zero(cand);
            std::uint32_t next = rest & ~(std::uint32_t{1} << u);
            if (1 + best(best, next) == remaining) {
                out.emplace_back(v + 1, u + 1);
                mask = next;
                --remaining;
                matched = true;
                break;
            }
        }
        if (! matched)
            mask = rest;
    }
    return out;
}

}

#include "kpart/oracle.hpp"

#include <algorithm>
#include <limits>

namespace kpart::oracle {

BruteAnswer brute_partition(const PartitionInstance & inst)
{
    if (inst.n < 0 || inst.n > 14)
        throw InvalidInput("brute_partition handles n <= 14");
    if (static_cast<int>(inst.providers.size()) != inst.k)
        throw InvalidInput("instance needs exactly k providers");
    std::vector<std::vector<FamilyMember>> families;
    std::size_t total = 0;
    for (const auto & p : inst.providers) {
        families.push_back(p.materialize());
        total += families.back().size();
    }
    if (total > 10000)
        throw InvalidInput("brute_partition handles at most 10^4 sets");

    const SetMask all = inst.n == 0 ? 0 : (SetMask{1} << inst.n) - 1;
    const bool cover = inst.structure == Structure::Cover;
    BruteAnswer out;

    auto visit = [&](auto && self, std::size_t i, SetMask covered, Natural ways, Weight w) -> void {
        if (i == families.size()) {
            if (covered != all)
                return;
            out.feasible = true;
            out.count += ways;
            if (! out.min_weight || w < *out.min_weight)
                out.min_weight = w;
            return;
        }
        for (const auto & m : families[i]) {
            if (m.set & ~all)
                throw InvalidInput("set outside the ground set");
            if (! cover && (m.set & covered))
                continue;
            self(self, i + 1, covered | m.set, ways * m.multiplicity, w + m.weight);
        }
    };
    visit(visit, 0, 0, Natural(1), 0);
    if (inst.objective != Objective::MinWeight)
        out.min_weight.reset();
    return out;
}

namespace {

    bool colorable(const Graph & g, int k)
    {
        int n = g.n();
        std::vector<int> color(n + 1, 0);
        auto place = [&](auto && self, int v) -> bool {
            if (v > n)
                return true;
            for (int c = 1; c <= k; ++c) {
                bool clash = false;
                for (Vertex u : g.neighbors(v))
                    if (u < v && color[u] == c)
                        clash = true;
                if (clash)
                    continue;
                color[v] = c;
                if (self(self, v + 1))
                    return true;
            }
            color[v] = 0;
            return false;
        };
        return place(place, 1);
    }

}

int brute_chromatic(const Graph & g)
{
    if (g.n() > 12)
        throw InvalidInput("brute_chromatic handles n <= 12");
    for (int k = 0;; ++k)
        if (colorable(g, k))
            return k;
}

bool brute_domatic(const Graph & g, int k)
{
    int n = g.n();
    if (n > 12)
        throw InvalidInput("brute_domatic handles n <= 12");
    if (k < 1)
        throw InvalidInput("domatic decision needs k >= 1");
    std::vector<int> part(n + 1, 0);
    auto dominating = [&](int c) {
        for (Vertex v = 1; v <= n; ++v) {
            bool hit = part[v] == c;
            for (Vertex u : g.neighbors(v))
                hit = hit || part[u] == c;
            if (! hit)
                return false;
        }
        return true;
    };
    auto assign = [&](auto && self, int v) -> bool {
        if (v > n) {
            for (int c = 1; c <= k; ++c)
                if (! dominating(c))
                    return false;
            return true;
        }
        for (int c = 1; c <= k; ++c) {
            part[v] = c;
            if (self(self, v + 1))
                return true;
        }
        return false;
    };
    return assign(assign, 1);
}

std::optional<Weight> brute_tsp(const Graph & g)
{
    int n = g.n();
    if (n > 16)
        throw InvalidInput("brute_tsp handles n <= 16");
    if (n < 3)
        return std::nullopt;
    constexpr Weight inf = std::numeric_limits<Weight>::max() / 4;
    // best[mask][v]: cheapest path from vertex 0 through mask ending at v
    std::size_t full = std::size_t{1} << n;
    std::vector<std::vector<Weight>> best(full, std::vector<Weight>(n, inf));
    best[1][0] = 0;
    for (std::size_t mask = 1; mask < full; ++mask) {
        if (! (mask & 1))
            continue;
        for (int v = 0; v < n; ++v) {
            if (best[mask][v] >= inf)
                continue;
            for (Vertex u1 : g.neighbors(v + 1)) {
                int u = u1 - 1;
                if (mask >> u & 1)
                    continue;
                Weight cand = best[mask][v] + g.weight(v + 1, u1);
                auto & slot = best[mask | (std::size_t{1} << u)][u];
                slot = std::min(slot, cand);
            }
        }
    }
    Weight answer = inf;
    for (int v = 1; v < n; ++v)
        if (best[full - 1][v] < inf && g.has_edge(v + 1, 1))
            answer = std::min(answer, best[full - 1][v] + g.weight(v + 1, 1));
    if (answer >= inf)
        return std::nullopt;
    return answer;
}

bool brute_hamcycle(const Graph & g)
{
    if (g.n() < 3)
        return false;
    Graph unit(g.n());
    for (const auto & e : g.edges())
        unit.add_edge(e.u, e.v);
    return brute_tsp(unit).has_value();
}

Natural brute_count_pm(const Graph & g)
{
    int n = g.n();
    if (n > 20)
        throw InvalidInput("brute_count_pm handles n <= 20");
    if (n % 2)
        return 0;
    std::vector<Natural> memo(std::size_t{1} << n, -1);
    auto count = [&](auto && self, std::uint32_t mask) -> Natural {
        if (mask == 0)
            return 1;
        auto & slot = memo[mask];
        if (slot >= 0)
            return slot;
        int v = std::countr_zero(mask);
        Natural total = 0;
        for (Vertex u1 : g.neighbors(v + 1)) {
            int u = u1 - 1;
            if (mask >> u & 1)
                total += self(self, mask & ~(1u << v) & ~(1u << u));
        }
        slot = total;
        return total;
    };
    return count(count, n == 0 ? 0u : (1u << n) - 1);
}

}

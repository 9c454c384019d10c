#include "kpart/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace kpart {

void DriverStats::record(const SolveAnswer & answer, bool with_system)
{
    ++engine_calls;
    if (with_system)
        ++infant_solves;
    max_packed_domain = std::max(max_packed_domain, answer.stats.packed_domain);
    ++engine_paths[answer.stats.path];
}

std::vector<int> segment_sizes(int n, int k)
{
    if (k < 1 || n < k)
        throw InvalidInput("need 1 <= k <= n segments");
    std::vector<int> sizes(k, n / k);
    for (int i = 0; i < n % k; ++i)
        ++sizes[i];
    return sizes;
}

namespace {

    constexpr int kMaxDriverVertices = 24;

    void require_desk_scale(const Graph & g, const char * what)
    {
        if (g.n() > kMaxDriverVertices)
            throw InvalidInput(std::string(what) + " enumerates vertex subsets; n <= 24 supported");
    }

    void note(const DriverOptions & options, const std::string & line)
    {
        if (options.progress)
            options.progress(line);
    }

    double effective_degree(const Graph & g)
    {
        double d = g.n() == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count()) / g.n();
        return std::max(d, 1.0);
    }

    /// Solve with the system when it validates (and, for the core-pair
    /// strategy, shrinks the code axis below 2^n), plainly otherwise.
    SolveAnswer solve_guarded(const PartitionInstance & inst, const std::optional<InfantSystem> & sys,
        const DriverOptions & options, DriverStats * stats)
    {
        bool use = sys && sys->p() > 0;
        if (use && options.infants == InfantStrategy::CoreConstruction
            && search_space_size(inst, *sys).code_axis >= (Natural(1) << inst.n)) {
            use = false;
            if (stats)
                ++stats->fallbacks;
        }
        if (use && ! validate_infant_system(inst, *sys).valid()) {
            use = false;
            if (stats)
                ++stats->fallbacks;
        }
        auto answer = use ? solve_with_infants(inst, *sys, options.engine) : solve_simple(inst, options.engine);
        if (stats)
            stats->record(answer, use);
        return answer;
    }

    /// Scattered-set core: A independent in G^2 of low-degree vertices, Y empty.
    CorePair scattered_core(const Graph & g)
    {
        CorePair core;
        core.d_eff = effective_degree(g);
        core.A = find_scattered_set(g, core.d_eff);
        return core;
    }

    /// Keeps the first families while p * q <= n; q is the largest kept family.
    std::optional<InfantSystem> fit_system(std::vector<InfantFamily> families, int n)
    {
        InfantSystem sys;
        sys.q = 2;
        for (auto & fam : families) {
            int q = std::max<int>(sys.q, static_cast<int>(fam.members.size()));
            if (static_cast<long long>(sys.p() + 1) * q > n)
                break;
            sys.q = q;
            sys.families.push_back(std::move(fam));
        }
        if (sys.families.empty())
            return std::nullopt;
        return sys;
    }

}

PartitionInstance coloring_partition_instance(const ColoringInstance & inst)
{
    const Graph & g = inst.graph;
    int n = g.n();
    require_desk_scale(g, "coloring");
    if (static_cast<int>(inst.lists.size()) != n || static_cast<int>(inst.preferred.size()) != n)
        throw InvalidInput("coloring instance needs one list and one preference per vertex");
    for (int v = 0; v < n; ++v) {
        const auto & list = inst.lists[v];
        if (std::find(list.begin(), list.end(), inst.preferred[v]) == list.end())
            throw InvalidInput("preferred color of vertex " + std::to_string(v + 1) + " is not in its list");
        for (int c : list)
            if (c < 1 || c > inst.k)
                throw InvalidInput("list color out of range");
    }

    PartitionInstance out;
    out.n = n;
    out.k = inst.k;
    out.objective = Objective::Decision;
    for (int c = 1; c <= inst.k; ++c) {
        SetMask allowed = 0, preferring = 0;
        for (Vertex v = 1; v <= n; ++v) {
            const auto & list = inst.lists[v - 1];
            if (std::find(list.begin(), list.end(), c) != list.end())
                allowed |= element_bit(v);
            if (inst.preferred[v - 1] == c)
                preferring |= element_bit(v);
        }
        std::vector<FamilyMember> members;
        SetMask sub = 0;
        do {
            bool ok = true;
            for (SetMask rest = sub; rest && ok; rest &= rest - 1)
                ok = (g.neighbor_mask(std::countr_zero(rest) + 1) & sub) == 0;
            for (SetMask rest = preferring; rest && ok; rest &= rest - 1)
                ok = (g.closed_neighbor_mask(std::countr_zero(rest) + 1) & sub) != 0;
            if (ok)
                members.push_back({sub, 0, 1});
            sub = (sub - allowed) & allowed;
        } while (sub != 0);
        out.providers.push_back(FamilyProvider::explicit_sets(std::move(members)));
    }
    return out;
}

bool decide_coloring_with_preferences(const ColoringInstance & inst, const std::optional<InfantSystem> & sys,
    const DriverOptions & options, DriverStats * stats)
{
    auto partition = coloring_partition_instance(inst);
    for (const auto & list : inst.lists)
        if (list.empty())
            return false;
    return solve_guarded(partition, sys, options, stats).feasible;
}

ColoringReduction build_coloring_infants(const Graph & g, int k, const std::vector<int> & y_colors,
    const CorePair & core, bool bucket_truncation)
{
    if (static_cast<int>(y_colors.size()) != g.n())
        throw InvalidInput("y_colors needs one entry per vertex");
    auto rest = remove_vertices(g, core.Y);
    const Graph & h = rest.graph;
    int n = h.n();

    ColoringReduction out;
    out.original = rest.original;
    out.instance.graph = h;
    out.instance.k = k;
    out.instance.lists.resize(n);
    out.instance.preferred.assign(n, 0);
    std::vector<Vertex> new_id(static_cast<std::size_t>(g.n()) + 1, 0);
    for (int i = 0; i < n; ++i)
        new_id[rest.original[i]] = i + 1;

    std::vector<unsigned> list_mask(n, 0);
    for (int i = 0; i < n; ++i) {
        Vertex v = rest.original[i];
        std::vector<char> taken(static_cast<std::size_t>(k) + 1, 0);
        for (Vertex u : g.neighbors(v))
            if (int c = y_colors[u - 1]; c > 0 && c <= k)
                taken[c] = 1;
        for (int c = 1; c <= k; ++c)
            if (! taken[c]) {
                out.instance.lists[i].push_back(c);
                list_mask[i] |= 1u << c;
            }
        if (out.instance.lists[i].empty())
            out.lists_nonempty = false;
        else
            out.instance.preferred[i] = out.instance.lists[i].front();
    }
    if (! out.lists_nonempty)
        return out;

    // most frequent list among A, ties to the smallest color mask
    std::map<unsigned, std::vector<Vertex>> buckets;
    for (Vertex a : core.A)
        if (new_id[a] != 0)
            buckets[list_mask[new_id[a] - 1]].push_back(new_id[a]);
    if (buckets.empty())
        return out;
    auto best = buckets.begin();
    for (auto it = buckets.begin(); it != buckets.end(); ++it)
        if (it->second.size() > best->second.size())
            best = it;
    std::vector<Vertex> chosen = best->second;
    std::sort(chosen.begin(), chosen.end());
    const auto list = out.instance.lists[chosen.front() - 1];
    const std::size_t l = list.size();

    if (bucket_truncation) {
        std::size_t cap = core.A.size() >> std::min(k, 63);
        if (chosen.size() > cap)
            chosen.resize(cap);
    }
    std::size_t block = chosen.size() / (l + 1);
    if (block == 0)
        return out;
    chosen.resize(block * (l + 1));

    auto member = [&](std::size_t i, std::size_t j) { return chosen[i * block + j]; };
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < block; ++j)
            out.instance.preferred[member(i, j) - 1] = list[i];

    std::vector<InfantFamily> families;
    for (std::size_t j = 0; j < block; ++j) {
        std::set<Vertex> r;
        for (std::size_t i = 0; i <= l; ++i)
            for (Vertex v : closed_neighborhood(h, member(i, j)))
                r.insert(v);
        families.push_back({{r.begin(), r.end()}, member(l, j)});
    }
    out.system = fit_system(std::move(families), n);
    return out;
}

namespace {

    /// All proper colorings of G[Y] with colors 1..k, as full-length color vectors.
    void for_each_y_coloring(const Graph & g, const std::vector<Vertex> & y, int k,
        const std::function<bool(const std::vector<int> &)> & visit)
    {
        std::vector<int> colors(g.n(), 0);
        auto place = [&](auto && self, std::size_t i) -> bool {
            if (i == y.size())
                return visit(colors);
            Vertex v = y[i];
            for (int c = 1; c <= k; ++c) {
                bool clash = false;
                for (Vertex u : g.neighbors(v))
                    clash = clash || colors[u - 1] == c;
                if (clash)
                    continue;
                colors[v - 1] = c;
                if (self(self, i + 1))
                    return true;
            }
            colors[v - 1] = 0;
            return false;
        };
        place(place, 0);
    }

    std::optional<CorePair> coloring_core(const Graph & g, int k, const DriverOptions & options)
    {
        switch (options.infants) {
        case InfantStrategy::None:
            return std::nullopt;
        case InfantStrategy::Scattered:
            return scattered_core(g);
        case InfantStrategy::CoreConstruction:
            break;
        }
        double d = effective_degree(g);
        CoreParams params;
        if (options.core_override) {
            params = *options.core_override;
        } else {
            int q = (static_cast<int>(std::floor(2 * d)) + 1) * (k + 1);
            params.nu = std::max(1, k);
            params.a = 0;
            params.c = 1.0 / (2.0 * (2.0 * d + 1.0));
            double exponent = 1.0 / (std::ldexp(1.0, std::min(k, 60)) * (k + 1));
            params.mu = std::pow(-std::expm1(-q * std::log(2.0)), exponent);
            if (! (params.mu < 1.0))
                return std::nullopt;
        }
        return find_core_pair(g, params);
    }

}

bool k_colorable(const Graph & g, int k, const DriverOptions & options, DriverStats * stats)
{
    int n = g.n();
    if (n == 0)
        return true;
    if (k <= 0)
        return false;
    if (static_cast<long long>(k) * n >= 4LL * static_cast<long long>(g.edge_count())) {
        // vertices of degree < k always find a free color afterwards
        std::vector<bool> keep(n);
        bool any = false;
        for (Vertex v = 1; v <= n; ++v)
            any |= (keep[v - 1] = g.degree(v) >= k);
        if (! any)
            return true;
        return k_colorable(induced_subgraph(g, keep).graph, k, options, stats);
    }
    require_desk_scale(g, "chromatic number");

    auto core = coloring_core(g, k, options);
    CorePair empty;
    const CorePair & used = core ? *core : empty;
    bool found = false;
    for_each_y_coloring(g, used.Y, k, [&](const std::vector<int> & colors) {
        if (stats)
            ++stats->guesses;
        auto reduction = build_coloring_infants(g, k, colors, used, options.infants == InfantStrategy::CoreConstruction);
        if (! reduction.lists_nonempty)
            return false;
        if (options.infants != InfantStrategy::None && ! reduction.system && stats)
            ++stats->fallbacks;
        found = decide_coloring_with_preferences(reduction.instance, reduction.system, options, stats);
        return found;
    });
    return found;
}

int chromatic_number(const Graph & g, const DriverOptions & options, DriverStats * stats)
{
    for (int k = 0;; ++k) {
        note(options, "chromatic: trying k = " + std::to_string(k));
        if (k_colorable(g, k, options, stats))
            return k;
    }
}

std::optional<std::vector<int>> find_coloring(const Graph & g, int k, const DriverOptions & options)
{
    int n = g.n();
    require_desk_scale(g, "coloring");
    ColoringInstance inst;
    inst.graph = g;
    inst.k = k;
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 1);
    inst.lists.assign(n, all);
    auto decide = [&](const ColoringInstance & ci) {
        ColoringInstance with_pref = ci;
        with_pref.preferred.resize(n);
        for (int v = 0; v < n; ++v) {
            if (ci.lists[v].empty())
                return false;
            with_pref.preferred[v] = ci.lists[v].front();
        }
        return decide_coloring_with_preferences(with_pref, std::nullopt, options);
    };
    if (n > 0 && k <= 0)
        return std::nullopt;
    if (! decide(inst))
        return std::nullopt;
    for (int v = 0; v < n; ++v) {
        bool fixed = false;
        for (int c : std::vector<int>(inst.lists[v])) {
            auto trial = inst;
            trial.lists[v] = {c};
            if (decide(trial)) {
                inst = std::move(trial);
                fixed = true;
                break;
            }
        }
        if (! fixed)
            throw std::logic_error("self-reduction lost feasibility");
    }
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v)
        colors[v] = inst.lists[v].front();
    return colors;
}

std::optional<InfantSystem> domatic_infant_system(const Graph & g)
{
    int n = g.n();
    long long delta = g.max_degree();
    auto p = static_cast<std::size_t>(n / (delta * delta + 2));
    auto centers = greedy_independent_set(square(g));
    if (centers.size() > p)
        centers.resize(p);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex c : centers)
        for (Vertex v : closed_neighborhood(g, c))
            used[v] = 1;
    InfantSystem sys;
    sys.q = static_cast<int>(delta) + 2;
    Vertex spare = 1;
    for (Vertex c : centers) {
        while (spare <= n && used[spare])
            ++spare;
        if (spare > n)
            break;
        used[spare] = 1;
        auto members = closed_neighborhood(g, c);
        members.push_back(spare);
        sys.families.push_back({members, spare});
    }
    if (sys.p() == 0)
        return std::nullopt;
    return sys;
}

bool domatic_decision(const Graph & g, int k, const DriverOptions & options, DriverStats * stats)
{
    if (k < 1)
        throw InvalidInput("domatic decision needs k >= 1");
    int n = g.n();
    if (n == 0)
        return true;
    if (k > g.min_degree() + 1)
        return false;
    require_desk_scale(g, "domatic number");

    std::vector<FamilyMember> dominating;
    SetMask all = full_mask(n);
    for (SetMask s = 1; s <= all; ++s) {
        bool ok = true;
        for (Vertex v = 1; v <= n && ok; ++v)
            ok = (g.closed_neighbor_mask(v) & s) != 0;
        if (ok)
            dominating.push_back({s, 0, 1});
        if (s == all)
            break;
    }
    auto provider = FamilyProvider::explicit_sets(std::move(dominating));
    PartitionInstance inst;
    inst.n = n;
    inst.k = k;
    inst.providers.assign(k, provider);

    std::optional<InfantSystem> sys;
    if (options.infants != InfantStrategy::None) {
        sys = domatic_infant_system(g);
        if (! sys && stats)
            ++stats->fallbacks;
    }
    if (stats)
        ++stats->guesses;
    return solve_guarded(inst, sys, options, stats).feasible;
}

int domatic_number(const Graph & g, const DriverOptions & options, DriverStats * stats)
{
    if (g.n() == 0)
        return 0;
    int best = 1;
    for (int k = 2; k <= g.min_degree() + 1; ++k) {
        if (! domatic_decision(g, k, options, stats))
            break;
        best = k;
    }
    return best;
}

namespace {

    /// Path tables from every start vertex: weight[start][mask][end] is the
    /// cheapest path from start visiting exactly mask and ending at end.
    /// Extending a path into a vertex of `guarded` from a vertex of `blocked`
    /// is not allowed.
    class PathTable
    {
    public:
        static constexpr Weight kNone = std::numeric_limits<Weight>::max() / 4;

        PathTable(const Graph & g, SetMask guarded = 0, SetMask blocked = 0) : g_(g), n_(g.n())
        {
            std::size_t full = std::size_t{1} << n_;
            best_.assign(static_cast<std::size_t>(n_), std::vector<Weight>(full * n_, kNone));
            for (int s = 0; s < n_; ++s) {
                auto & t = best_[s];
                t[(std::size_t{1} << s) * n_ + s] = 0;
                for (std::size_t mask = 1; mask < full; ++mask) {
                    if (! (mask >> s & 1))
                        continue;
                    for (int end = 0; end < n_; ++end) {
                        Weight w = t[mask * n_ + end];
                        if (w >= kNone)
                            continue;
                        for (Vertex u1 : g.neighbors(end + 1)) {
                            int u = u1 - 1;
                            if (mask >> u & 1)
                                continue;
                            if ((guarded >> u & 1) && (blocked >> end & 1))
                                continue;
                            auto & slot = t[(mask | (std::size_t{1} << u)) * n_ + u];
                            slot = std::min(slot, w + g.weight(end + 1, u1));
                        }
                    }
                }
            }
        }

        /// Cheapest path from start through exactly mask, closed by an edge
        /// into next; kNone if there is none.
        Weight closing(Vertex start, SetMask mask, Vertex next) const
        {
            Weight out = kNone;
            const auto & t = best_[start - 1];
            for (Vertex u1 : g_.neighbors(next)) {
                if (! contains(mask, u1))
                    continue;
                Weight w = t[static_cast<std::size_t>(mask) * n_ + (u1 - 1)];
                if (w < kNone)
                    out = std::min(out, w + g_.weight(u1, next));
            }
            return out;
        }

    private:
        const Graph & g_;
        int n_;
        std::vector<std::vector<Weight>> best_;
    };

    /// Sets of the given size through which a path runs from pivots[i] to a
    /// vertex adjacent to the next pivot, avoiding all other pivots.
    std::vector<FamilyProvider> segment_providers(const Graph & g, const std::vector<Vertex> & pivots,
        const std::vector<int> & sizes, const PathTable & paths, bool weighted, bool & empty_family)
    {
        int n = g.n();
        std::size_t k = pivots.size();
        SetMask pivot_mask = 0;
        for (Vertex v : pivots)
            pivot_mask |= element_bit(v);
        std::vector<FamilyProvider> out;
        empty_family = false;
        for (std::size_t i = 0; i < k; ++i) {
            Vertex start = pivots[i];
            Vertex next = pivots[(i + 1) % k];
            SetMask free = full_mask(n) & ~pivot_mask;
            int extra = sizes[i] - 1;
            std::vector<FamilyMember> members;
            // subsets of the non-pivot vertices of size extra
            auto choose = [&](auto && self, SetMask chosen, int from, int left) -> void {
                if (left == 0) {
                    SetMask s = chosen | element_bit(start);
                    Weight w = paths.closing(start, s, next);
                    if (w < PathTable::kNone)
                        members.push_back({s, weighted ? w : 0, 1});
                    return;
                }
                for (Vertex v = from; v <= n; ++v)
                    if (contains(free, v))
                        self(self, chosen | element_bit(v), v + 1, left - 1);
            };
            choose(choose, 0, 1, extra);
            if (members.empty())
                empty_family = true;
            out.push_back(FamilyProvider::explicit_sets(std::move(members)));
        }
        return out;
    }

    /// R_i = N_H[i], r_i = i for the given centers (ids of g), with H = g minus `removed`.
    std::optional<InfantSystem> neighborhood_system(const Graph & g, const std::vector<Vertex> & centers,
        SetMask removed)
    {
        std::vector<InfantFamily> families;
        for (Vertex c : centers) {
            if (contains(removed, c))
                continue;
            std::vector<Vertex> members{c};
            for (Vertex u : g.neighbors(c))
                if (! contains(removed, u))
                    members.push_back(u);
            std::sort(members.begin(), members.end());
            families.push_back({members, c});
        }
        return fit_system(std::move(families), g.n());
    }

    void for_each_pivot_tuple(int n, int k, const std::function<bool(const std::vector<Vertex> &)> & visit)
    {
        std::vector<Vertex> tuple{1};
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        used[1] = 1;
        auto extend = [&](auto && self) -> bool {
            if (static_cast<int>(tuple.size()) == k)
                return visit(tuple);
            for (Vertex v = 2; v <= n; ++v) {
                if (used[v])
                    continue;
                used[v] = 1;
                tuple.push_back(v);
                bool stop = self(self);
                tuple.pop_back();
                used[v] = 0;
                if (stop)
                    return true;
            }
            return false;
        };
        extend(extend);
    }

}

bool hamiltonian_cycle(const Graph & g, const DriverOptions & options, DriverStats * stats)
{
    int n = g.n();
    if (n < 3)
        return false;
    require_desk_scale(g, "hamiltonian cycle");
    if (n > 16)
        throw InvalidInput("hamiltonian cycle path tables support n <= 16");
    Graph unit(n);
    for (const auto & e : g.edges())
        unit.add_edge(e.u, e.v);
    PathTable paths(unit);
    auto sizes = segment_sizes(n, 3);

    std::vector<Vertex> centers;
    if (options.infants != InfantStrategy::None)
        centers = greedy_independent_set(square(unit));

    bool found = false;
    for_each_pivot_tuple(n, 3, [&](const std::vector<Vertex> & pivots) {
        if (stats)
            ++stats->guesses;
        bool empty = false;
        PartitionInstance inst;
        inst.n = n;
        inst.k = 3;
        inst.providers = segment_providers(unit, pivots, sizes, paths, false, empty);
        if (empty)
            return false;
        std::optional<InfantSystem> sys;
        if (! centers.empty())
            sys = neighborhood_system(unit, centers, 0);
        found = solve_guarded(inst, sys, options, stats).feasible;
        if (found)
            note(options, "hamcycle: feasible pivots found");
        return found;
    });
    return found;
}

std::optional<Weight> tsp(const Graph & g, const DriverOptions & options, DriverStats * stats)
{
    int n = g.n();
    if (n < 3)
        return std::nullopt;
    require_desk_scale(g, "tsp");
    if (n > 16)
        throw InvalidInput("tsp path tables support n <= 16");
    for (const auto & e : g.edges())
        if (e.weight < 0)
            throw InvalidInput("tsp needs nonnegative weights");

    int k = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
    auto sizes = segment_sizes(n, k);

    std::optional<CorePair> core;
    if (options.infants == InfantStrategy::Scattered) {
        core = scattered_core(g);
    } else if (options.infants == InfantStrategy::CoreConstruction) {
        double d = effective_degree(g);
        CoreParams params;
        if (options.core_override) {
            params = *options.core_override;
        } else {
            int q = static_cast<int>(std::floor(2 * d)) + 1;
            params.a = 1;
            params.nu = 1;
            params.mu = std::pow(-std::expm1(-q * std::log(2.0)), 1.0 / 3.0);
            params.c = 1.0 / (2.0 * d + 2.0);
        }
        if (params.mu < 1.0)
            core = find_core_pair(g, params);
        if (! core && stats)
            ++stats->fallbacks;
    }

    SetMask y_mask = 0;
    std::vector<Vertex> a_list;
    if (core) {
        y_mask = mask_of(core->Y);
        a_list = core->A;
    }
    std::optional<PathTable> shared_paths;
    if (y_mask == 0)
        shared_paths.emplace(g);

    std::optional<Weight> best;
    // Y'' ranges over subsets of A of size <= |Y|: the A-vertices whose
    // predecessor on the tour lies in Y.
    std::vector<SetMask> y_guesses{0};
    if (core && ! core->Y.empty()) {
        std::size_t limit = core->Y.size();
        std::vector<SetMask> all{0};
        for (Vertex a : a_list) {
            std::size_t count = all.size();
            for (std::size_t i = 0; i < count; ++i)
                if (static_cast<std::size_t>(popcount(all[i])) < limit)
                    all.push_back(all[i] | element_bit(a));
        }
        y_guesses = all;
    }

    for_each_pivot_tuple(n, k, [&](const std::vector<Vertex> & pivots) {
        SetMask pivot_mask = mask_of(pivots);
        for (SetMask y_guess : y_guesses) {
            if (stats)
                ++stats->guesses;
            std::vector<Vertex> a_prime;
            for (Vertex a : a_list)
                if (! contains(y_guess, a) && ! contains(pivot_mask, a))
                    a_prime.push_back(a);
            std::optional<PathTable> local;
            if (! shared_paths)
                local.emplace(g, mask_of(a_prime), y_mask);
            const PathTable & paths = shared_paths ? *shared_paths : *local;

            bool empty = false;
            PartitionInstance inst;
            inst.n = n;
            inst.k = k;
            inst.objective = Objective::MinWeight;
            inst.providers = segment_providers(g, pivots, sizes, paths, true, empty);
            if (empty)
                continue;
            std::optional<InfantSystem> sys;
            if (! a_prime.empty())
                sys = neighborhood_system(g, a_prime, y_mask);
            auto answer = solve_guarded(inst, sys, options, stats);
            if (answer.min_weight && (! best || *answer.min_weight < *best))
                best = answer.min_weight;
        }
        return false;
    });
    return best;
}

namespace {

    struct Contraction
    {
        LabeledMultigraph graph;
        int pairs = 0;
    };

    /// Pairs non-adjacent vertices as far as possible and contracts pair t to
    /// vertex t; an edge {x, y} becomes an edge between the pairs of x and y
    /// labelled by the renumbered endpoints (pair t holds t and t + pairs).
    Contraction contract_pairs(const Graph & g)
    {
        int n = g.n();
        int half = n / 2;
        auto matching = complement_matching(g);
        std::vector<char> paired(static_cast<std::size_t>(n) + 1, 0);
        std::vector<std::pair<Vertex, Vertex>> pairs = matching;
        for (auto [u, v] : matching)
            paired[u] = paired[v] = 1;
        Vertex pending = 0;
        for (Vertex v = 1; v <= n; ++v) {
            if (paired[v])
                continue;
            if (pending == 0) {
                pending = v;
            } else {
                pairs.emplace_back(pending, v);
                pending = 0;
            }
        }
        std::vector<Vertex> renumber(static_cast<std::size_t>(n) + 1, 0);
        for (int t = 0; t < static_cast<int>(pairs.size()); ++t) {
            renumber[pairs[t].first] = t + 1;
            renumber[pairs[t].second] = t + 1 + half;
        }
        Contraction out{LabeledMultigraph(half), half};
        for (const auto & e : g.edges()) {
            Vertex a = renumber[e.u], b = renumber[e.v];
            Vertex pa = a > half ? a - half : a;
            Vertex pb = b > half ? b - half : b;
            out.graph.add_edge(pa, pb, {a, b});
        }
        return out;
    }

    /// Side of edge e at its endpoint t: 0 if the label holds t, 1 if t + pairs.
    int side_at(const LabeledEdge & e, Vertex t, int pairs)
    {
        if (e.label[0] == t || e.label[1] == t)
            return 0;
        if (e.label[0] == t + pairs || e.label[1] == t + pairs)
            return 1;
        throw std::logic_error("edge label misses its endpoint");
    }

    struct CycleRecord
    {
        SetMask vertices;
        /// bit t - 1 set when both cycle neighbours of t lie in the watched set
        SetMask enclosed;
    };

    /// Canonical label-consistent cycles of length >= 2 inside `alive`, one
    /// record per cycle; `watched` marks the vertices whose neighbours are tracked.
    std::vector<CycleRecord> canonical_cycles(const Contraction & c, SetMask alive, SetMask watched)
    {
        int m = c.pairs;
        const auto & edges = c.graph.edges();
        std::vector<std::vector<int>> incident(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i < static_cast<int>(edges.size()); ++i)
            if (edges[i].u != edges[i].v && contains(alive, edges[i].u) && contains(alive, edges[i].v)) {
                incident[edges[i].u].push_back(i);
                incident[edges[i].v].push_back(i);
            }
        auto other = [&](int e, Vertex t) { return edges[e].u == t ? edges[e].v : edges[e].u; };

        std::vector<CycleRecord> out;
        auto both_watched = [&](Vertex a, Vertex b) { return contains(watched, a) && contains(watched, b); };

        // 2-cycles: unordered pairs of parallel edges with opposite sides at both ends
        for (Vertex t = 1; t <= m; ++t)
            for (std::size_t x = 0; x < incident[t].size(); ++x)
                for (std::size_t y = x + 1; y < incident[t].size(); ++y) {
                    int e = incident[t][x], f = incident[t][y];
                    Vertex s = other(e, t);
                    if (s <= t || other(f, t) != s)
                        continue;
                    if (side_at(edges[e], t, m) == side_at(edges[f], t, m)
                        || side_at(edges[e], s, m) == side_at(edges[f], s, m))
                        continue;
                    SetMask enclosed = 0;
                    if (both_watched(s, s))
                        enclosed |= element_bit(t);
                    if (both_watched(t, t))
                        enclosed |= element_bit(s);
                    out.push_back({element_bit(t) | element_bit(s), enclosed});
                }

        // longer cycles from their smallest vertex, second vertex below the last
        std::vector<Vertex> path;
        std::vector<int> path_edges;
        for (Vertex start = 1; start <= m; ++start) {
            if (! contains(alive, start))
                continue;
            path = {start};
            path_edges.clear();
            auto grow = [&](auto && self, SetMask used) -> void {
                Vertex t = path.back();
                int entry_side = path_edges.empty() ? -1 : side_at(edges[path_edges.back()], t, m);
                for (int e : incident[t]) {
                    if (! path_edges.empty() && e == path_edges.back())
                        continue;
                    int leave = side_at(edges[e], t, m);
                    if (entry_side >= 0 && leave == entry_side)
                        continue;
                    Vertex nxt = other(e, t);
                    if (nxt == start) {
                        if (path.size() < 3 || ! (path[1] < path.back()))
                            continue;
                        // consistency at the start vertex
                        if (side_at(edges[path_edges.front()], start, m) == side_at(edges[e], start, m))
                            continue;
                        SetMask verts = used;
                        SetMask enclosed = 0;
                        std::size_t len = path.size();
                        for (std::size_t i = 0; i < len; ++i) {
                            Vertex prev = path[(i + len - 1) % len], next = path[(i + 1) % len];
                            if (both_watched(prev, next))
                                enclosed |= element_bit(path[i]);
                        }
                        out.push_back({verts, enclosed});
                        continue;
                    }
                    if (nxt < start || contains(used, nxt))
                        continue;
                    path.push_back(nxt);
                    path_edges.push_back(e);
                    self(self, used | element_bit(nxt));
                    path.pop_back();
                    path_edges.pop_back();
                }
            };
            grow(grow, element_bit(start));
        }
        return out;
    }

}

Natural count_perfect_matchings(const Graph & g, const DriverOptions & options, DriverStats * stats)
{
    int n = g.n();
    if (n % 2 != 0)
        throw InvalidInput("perfect matchings need an even vertex count");
    if (n == 0)
        return 1;
    if (n > 30)
        throw InvalidInput("perfect matching reduction supports n <= 30");
    auto contraction = contract_pairs(g);
    int m = contraction.pairs;

    std::vector<Vertex> loops;
    for (const auto & e : contraction.graph.edges())
        if (e.u == e.v)
            loops.push_back(e.u);
    note(options, "matchings: " + std::to_string(m) + " pairs, " + std::to_string(loops.size()) + " self-loops");

    Natural total = 0;
    std::size_t branches = std::size_t{1} << loops.size();
    for (std::size_t pick = 0; pick < branches; ++pick) {
        if (stats)
            ++stats->guesses;
        // chosen self-loops match their pair internally and leave the graph
        SetMask alive = full_mask(m);
        for (std::size_t i = 0; i < loops.size(); ++i)
            if (pick >> i & 1)
                alive &= ~element_bit(loops[i]);
        std::vector<Vertex> remaining = mask_elements(alive);
        int left = static_cast<int>(remaining.size());
        if (left == 0) {
            total += 1;
            continue;
        }

        // support graph on the surviving pairs, renumbered 1..left
        std::vector<Vertex> index(static_cast<std::size_t>(m) + 1, 0);
        for (int i = 0; i < left; ++i)
            index[remaining[i]] = i + 1;
        Graph support(left);
        for (const auto & e : contraction.graph.edges())
            if (e.u != e.v && index[e.u] && index[e.v] && ! support.has_edge(index[e.u], index[e.v]))
                support.add_edge(index[e.u], index[e.v]);

        std::optional<CorePair> core;
        if (options.infants == InfantStrategy::Scattered)
            core = scattered_core(support);
        else if (options.infants == InfantStrategy::CoreConstruction)
            core = find_core_pair(support, options.core_override.value_or(CoreParams{}));

        SetMask y_support = core ? mask_of(core->Y) : 0;
        SetMask watched = 0;
        for (Vertex v : mask_elements(y_support))
            watched |= element_bit(remaining[v - 1]);
        auto cycles = canonical_cycles(contraction, alive, watched);

        std::vector<SetMask> y_guesses{0};
        SetMask a_support = core ? mask_of(core->A) : 0;
        if (core && ! core->Y.empty()) {
            std::vector<SetMask> all{0};
            for (Vertex a : core->A)
                for (std::size_t i = 0, count = all.size(); i < count; ++i)
                    if (static_cast<std::size_t>(popcount(all[i])) < core->Y.size())
                        all.push_back(all[i] | element_bit(a));
            y_guesses = all;
        }

        auto to_support = [&](SetMask s) {
            SetMask out = 0;
            for (Vertex v : mask_elements(s))
                out |= element_bit(index[v]);
            return out;
        };

        for (SetMask y_guess : y_guesses) {
            // keep cycles whose enclosed A-vertices are exactly the guess
            std::map<SetMask, std::uint64_t> by_set;
            for (const auto & cyc : cycles) {
                SetMask verts = to_support(cyc.vertices);
                SetMask enclosed = to_support(cyc.enclosed) & a_support;
                if ((enclosed ^ (y_guess & verts)) != 0)
                    continue;
                ++by_set[verts];
            }
            std::vector<FamilyMember> members;
            for (auto [s, mult] : by_set)
                members.push_back({s, 0, mult});
            auto provider = FamilyProvider::explicit_sets(std::move(members));

            std::vector<Vertex> a_prime;
            if (core)
                for (Vertex a : core->A)
                    if (! contains(y_guess, a))
                        a_prime.push_back(a);

            Natural factorial = 1;
            for (int k = 1; 2 * k <= left; ++k) {
                factorial *= k;
                PartitionInstance inst;
                inst.n = left;
                inst.k = k;
                inst.objective = Objective::Count;
                inst.providers.assign(k, provider);
                std::optional<InfantSystem> sys;
                if (! a_prime.empty())
                    sys = neighborhood_system(support, a_prime, y_support);
                auto answer = solve_guarded(inst, sys, options, stats);
                if (answer.count % factorial != 0)
                    throw std::logic_error("ordered cycle-cover count not divisible by k!");
                total += answer.count / factorial;
            }
        }
    }
    return total;
}

}

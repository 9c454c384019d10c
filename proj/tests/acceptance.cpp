// Acceptance run: one PASS/FAIL line per criterion. Answers are compared
// exactly; the time limits and the slack on floating-point bounds are below.

#include "kpart/encoding.hpp"
#include "kpart/graphcore.hpp"
#include "kpart/oracle.hpp"
#include "kpart/polyring.hpp"
#include "kpart/problems.hpp"
#include "kpart/random_graphs.hpp"
#include "support/graphs.hpp"
#include "support/instances.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace kpart;
using namespace kpart::testing;

namespace {

constexpr double kSuiteSeconds = 15 * 60;
constexpr double kCoreSeconds = 120;
constexpr double kDoubleSlack = 1e-9;

class Tally
{
public:
    void expect(bool ok, const std::string & what)
    {
        ++checks_;
        if (! ok && failures_.size() < 5)
            failures_.push_back(what);
        failed_ += ! ok;
    }
    std::size_t checks() const { return checks_; }
    std::size_t failed() const { return failed_; }
    const std::vector<std::string> & failures() const { return failures_; }
    std::string note;

private:
    std::size_t checks_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string describe(const Graph & g)
{
    std::ostringstream out;
    out << "n=" << g.n();
    for (const auto & e : g.edges())
        out << ' ' << e.u << '-' << e.v;
    return out.str();
}

Natural power(Natural base, long long e)
{
    Natural out = 1;
    for (long long i = 0; i < e; ++i)
        out *= base;
    return out;
}

/// 2^(n - pq) (2^q - 1)^p 2^q
Natural expected_code_axis(int n, int p, int q)
{
    return (Natural(1) << (n - p * q)) * power((Natural(1) << q) - 1, p) * (Natural(1) << q);
}

bool same_answer(const SolveAnswer & a, const oracle::BruteAnswer & b, Objective objective)
{
    if (a.feasible != b.feasible)
        return false;
    if (objective == Objective::Count && a.count != b.count)
        return false;
    return objective != Objective::MinWeight || a.min_weight == b.min_weight;
}

bool same_answer(const SolveAnswer & a, const SolveAnswer & b)
{
    return a.feasible == b.feasible && a.count == b.count && a.min_weight == b.min_weight;
}

bool independent_in(const Graph & g, const std::vector<Vertex> & s)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.has_edge(s[i], s[j]))
                return false;
    return true;
}

/// Seeded graph for criterion 1: Erdos-Renyi at p = 0.2, 0.4, 0.6 or random
/// 3-regular, cycling with the index.
Graph driver_graph(Rng & rng, int index, int min_n, int max_n, bool even)
{
    auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    int n = draw(min_n, max_n);
    if (index % 4 == 3) {
        n = std::max(4, n + (n % 2));
        if (n > max_n)
            n -= 2;
        return random_regular(n, 3, rng);
    }
    if (even && n % 2)
        n = n + 1 <= max_n ? n + 1 : n - 1;
    return erdos_renyi(n, 0.2 * (1 + index % 4), rng);
}

DriverOptions options_for(int index)
{
    DriverOptions o;
    o.infants = static_cast<InfantStrategy>(index % 3);
    if (index % 5 == 1 && o.infants != InfantStrategy::Scattered)
        o.engine.space = SpaceMode::Polyspace;
    return o;
}

// Criterion 1 --------------------------------------------------------------

void drivers(Tally & t)
{
    constexpr int kGraphs = 200;
    Rng rng(1001);
    DriverStats stats;
    for (int i = 0; i < kGraphs; ++i) {
        Graph g = driver_graph(rng, i, 1, 9, false);
        t.expect(chromatic_number(g, options_for(i), &stats) == oracle::brute_chromatic(g), "chromatic " + describe(g));
    }
    for (int i = 0; i < kGraphs; ++i) {
        Graph g = driver_graph(rng, i, 1, 8, false);
        int k = 1 + i % 3;
        t.expect(domatic_decision(g, k, options_for(i), &stats) == oracle::brute_domatic(g, k), "domatic " + describe(g));
    }
    for (int i = 0; i < kGraphs; ++i) {
        Graph g = driver_graph(rng, i, 3, 9, false);
        t.expect(hamiltonian_cycle(g, options_for(i), &stats) == oracle::brute_hamcycle(g), "hamcycle " + describe(g));
    }
    for (int i = 0; i < kGraphs; ++i) {
        Graph g = with_random_weights(driver_graph(rng, i, 3, 8, false), 1, 10, rng);
        t.expect(tsp(g, options_for(i), &stats) == oracle::brute_tsp(g), "tsp " + describe(g));
    }
    for (int i = 0; i < kGraphs; ++i) {
        Graph g = driver_graph(rng, i, 2, 12, true);
        t.expect(count_perfect_matchings(g, options_for(i), &stats) == oracle::brute_count_pm(g), "matchings " + describe(g));
    }
    t.note = std::to_string(stats.engine_calls) + " engine calls, " + std::to_string(stats.infant_solves)
        + " with infants, " + std::to_string(stats.fallbacks) + " fallbacks";
}

// Criteria 2 and 4 ---------------------------------------------------------

std::vector<std::pair<PartitionInstance, InfantSystem>> g_constructed;

void engine_equivalence(Tally & t)
{
    Rng rng(1002);
    EngineConfig poly;
    poly.space = SpaceMode::Polyspace;
    for (int i = 0; i < 120; ++i) {
        int n = 1 + static_cast<int>(rng() % 10);
        int k = 1 + static_cast<int>(rng() % 3);
        auto objective = static_cast<Objective>(i % 3);
        auto inst = random_instance(rng, n, k, 8, objective);
        if (i % 2)
            plant_partition(rng, inst);
        auto brute = oracle::brute_partition(inst);
        auto dense = solve_simple(inst);
        std::string tag = "instance " + std::to_string(i);
        t.expect(same_answer(dense, brute, objective), tag + " dense");
        t.expect(same_answer(solve_simple(inst, poly), brute, objective), tag + " polyspace");

        int p = static_cast<int>(rng() % static_cast<std::uint64_t>(n / 2 + 1));
        auto sys = synthetic_pair_system(rng, inst, p);
        t.expect(validate_infant_system(inst, sys).valid(), tag + " system validity");
        auto plain = solve_simple(inst);
        t.expect(same_answer(solve_with_infants(inst, sys), plain), tag + " infants");
        if (i % 4 == 0)
            t.expect(same_answer(solve_with_infants(inst, sys, poly), plain), tag + " infants polyspace");
        g_constructed.emplace_back(inst, sys);
    }
}

void search_space_structure(Tally & t)
{
    Rng rng(1004);
    for (int i = 0; i < 40; ++i) {
        Graph g = random_regular(10 + 2 * (i % 4), 3, rng);
        CorePair core;
        core.d_eff = 3.0;
        core.A = find_scattered_set(g, 3.0);
        auto red = build_coloring_infants(g, 2 + i % 2, std::vector<int>(g.n(), 0), core, false);
        if (red.system)
            g_constructed.emplace_back(coloring_partition_instance(red.instance), *red.system);
        if (auto sys = domatic_infant_system(g)) {
            PartitionInstance inst;
            inst.n = g.n();
            inst.k = 2;
            g_constructed.emplace_back(inst, *sys);
        }
    }
    std::map<int, int> by_q;
    for (const auto & [inst, sys] : g_constructed) {
        auto padded = pad_infant_system(inst.n, sys);
        t.expect(search_space_size(inst, sys).code_axis == expected_code_axis(inst.n, padded.p, padded.q),
            "code axis n=" + std::to_string(inst.n) + " p=" + std::to_string(sys.p()));
        ++by_q[sys.q];
    }
    t.note = std::to_string(g_constructed.size()) + " constructed systems, block sizes";
    for (auto [q, count] : by_q)
        t.note += " " + std::to_string(q) + "x" + std::to_string(count);
    t.expect(by_q.size() >= 2, "systems of several block sizes");

    for (int n = 2; n <= 60; n += 2) {
        PartitionInstance inst;
        inst.n = n;
        inst.k = 1;
        InfantSystem pairs;
        pairs.q = 2;
        for (int i = 0; i < n / 2; ++i)
            pairs.families.push_back({{2 * i + 1, 2 * i + 2}, 2 * i + 1});
        Natural axis = search_space_size(inst, pairs).code_axis;
        t.expect(axis == power(3, n / 2) * 4, "pair system n=" + std::to_string(n));
        if (n >= 22)
            t.expect(axis < (Natural(1) << n), "savings n=" + std::to_string(n));
    }
}

// Criterion 3 --------------------------------------------------------------

CharacteristicMatrix digits_matrix(std::uint64_t index, int p, int q, int base)
{
    CharacteristicMatrix m(p, q);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            m(i, j) = static_cast<std::int64_t>(index % base);
            index /= base;
        }
    return m;
}

void invariant_coding(Tally & t)
{
    for (int p = 1; p <= 2; ++p)
        for (int q = 2; q <= 3; ++q) {
            std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t, Natural>, std::uint64_t> binary;
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (p * q)); ++bits) {
                auto e = digits_matrix(bits, p, q, 2);
                if (! is_row_normalized(e))
                    continue;
                auto inv = invariants(e);
                binary[{inv.colweight0, inv.weight, inv.rowsum, inv.code}] = bits;
                auto back = reconstruct_matrix(inv.colweight0, inv.weight, inv.rowsum, inv.code, p, q);
                t.expect(back && *back == e, "reconstruction");
            }
            std::uint64_t total = 1;
            for (int c = 0; c < p * q; ++c)
                total *= 5;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                auto m = digits_matrix(idx, p, q, 5);
                if (! is_row_normalized(m))
                    continue;
                auto inv = invariants(m);
                auto it = binary.find({inv.colweight0, inv.weight, inv.rowsum, inv.code});
                if (it != binary.end())
                    t.expect(digits_matrix(it->second, p, q, 2) == m, "collision p=" + std::to_string(p));
            }
        }
}

// Criterion 5 --------------------------------------------------------------

void core_contracts(Tally & t)
{
    Rng rng(1005);
    const CoreParams params[] = {{1.0, 0.5, 0.0, 0.5}, {2.0, 0.9, 1.0, 0.1}, {1.0, 0.99, 0.5, 0.3}, {3.0, 0.7, 2.0, 0.2}};
    std::size_t built = 0;
    for (int i = 0; i < 100; ++i) {
        int n = 20 + static_cast<int>(rng() % 1981);
        Graph g;
        if (i % 2) {
            double d = 1.0 + static_cast<double>(rng() % 300) / 100.0;
            g = erdos_renyi(n, d / (n - 1), rng);
        } else {
            g = random_regular(n + n % 2, 1 + i % 4, rng);
        }
        n = g.n();
        double d = std::max(1.0, 2.0 * static_cast<double>(g.edge_count()) / n);
        std::string tag = "graph " + std::to_string(i);

        auto b = find_scattered_set(g, d);
        if (g.max_degree() >= 1)
            t.expect(6.0 * g.max_degree() * d * static_cast<double>(b.size()) >= n, tag + " scattered bound");

        for (long long m = 1; m <= 3; ++m) {
            double alpha = static_cast<double>(1 + i % 5);
            long long D = find_degree_threshold(g, m, alpha);
            t.expect(D >= m && D <= static_cast<long long>(std::floor(m * std::exp(alpha + 1) + 1)), tag + " threshold range");
            t.expect(static_cast<double>(vertices_above(g, D).size()) * alpha * D <= n * d + kDoubleSlack, tag + " threshold density");
        }

        const auto & cp = params[i % 4];
        auto core = find_core_pair(g, cp);
        if (! core)
            continue;
        ++built;
        std::vector<char> in_y(static_cast<std::size_t>(n) + 1, 0);
        for (Vertex y : core->Y)
            in_y[y] = 1;
        bool disjoint = true;
        for (Vertex a : core->A)
            disjoint = disjoint && ! in_y[a];
        t.expect(disjoint, tag + " A and Y disjoint");
        auto rest = remove_vertices(g, core->Y);
        std::vector<Vertex> renamed(static_cast<std::size_t>(n) + 1, 0);
        for (int v = 0; v < rest.graph.n(); ++v)
            renamed[rest.original[v]] = v + 1;
        std::vector<Vertex> a_rest;
        for (Vertex a : core->A)
            a_rest.push_back(renamed[a]);
        t.expect(independent_in(square(rest.graph), a_rest), tag + " A independent in the square");
        bool low = true;
        for (Vertex a : a_rest)
            low = low && rest.graph.degree(a) <= 2.0 * core->d_eff;
        t.expect(low, tag + " degrees of A");
        t.expect(2 * core->Y.size() <= core->A.size(), tag + " |Y| <= |A|/2");
        t.expect(static_cast<double>(core->A.size()) <= core->params.c * n + kDoubleSlack, tag + " |A| <= cn");
        t.expect(core->log2_savings() <= -core->beta() * n, tag + " savings inequality");
    }
    t.expect(built >= 50, "core pairs built on at least half the graphs");
    t.note = std::to_string(built) + " of 100 graphs yielded a core pair";
}

// Criterion 6 --------------------------------------------------------------

void covering(Tally & t)
{
    Rng rng(1006);
    for (int i = 0; i < 50; ++i) {
        int n = 1 + static_cast<int>(rng() % 8);
        int k = 1 + static_cast<int>(rng() % 3);
        auto objective = static_cast<Objective>(i % 3);
        auto inst = random_instance(rng, n, k, 6, objective, Structure::Cover);
        auto closure = inst;
        closure.structure = Structure::Partition;
        for (auto & p : closure.providers)
            p = subset_closure(p, objective != Objective::MinWeight);
        t.expect(same_answer(solve_cover(inst), oracle::brute_partition(closure), objective), "cover " + std::to_string(i));
    }
}

// Criterion 7 --------------------------------------------------------------

ExactPolynomial random_poly(Rng & rng, std::size_t arity, int terms, int max_exp, long long max_coef)
{
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < arity; ++i)
        vars.push_back("v" + std::to_string(i));
    ExactPolynomial p(vars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(arity);
        for (auto & x : e)
            x = rng() % static_cast<std::uint64_t>(max_exp + 1);
        p.add_term(e, 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(max_coef)));
    }
    return p;
}

void arithmetic(Tally & t)
{
    Rng rng(1007);
    for (int i = 0; i < 100000; ++i) {
        std::uint64_t a = rng(), b = rng();
        if (i % 3 == 0)
            b &= ~a;
        unsigned __int128 sum = static_cast<unsigned __int128>(a) + b;
        int sum_weight = hamming_weight(static_cast<std::uint64_t>(sum)) + static_cast<int>(sum >> 64);
        int parts = hamming_weight(a) + hamming_weight(b);
        t.expect(parts >= sum_weight && (parts == sum_weight) == ((a & b) == 0), "carries");
    }
    for (int i = 0; i < 10000; ++i) {
        std::vector<std::pair<std::string, std::uint64_t>> axes;
        std::size_t dims = 1 + rng() % 7;
        for (std::size_t j = 0; j < dims; ++j)
            axes.emplace_back("v" + std::to_string(j), 1 + rng() % 300);
        RadixVector rv(axes);
        std::vector<std::uint64_t> e(dims);
        for (std::size_t j = 0; j < dims; ++j)
            e[j] = rng() % rv.radix(j);
        t.expect(unpack(pack(e, rv), rv) == e, "pack round trip");
    }
    for (int i = 0; i < 50; ++i) {
        std::size_t arity = 1 + rng() % 3;
        auto a = random_poly(rng, arity, 1 + static_cast<int>(rng() % 15), 4, 1000000);
        auto b = random_poly(rng, arity, 1 + static_cast<int>(rng() % 15), 4, 1000000);
        auto sparse = multiply(a, b);
        auto rv = product_radices(a, b);
        t.expect(multiply_packed_dense(a, b, rv) == sparse, "packed dense product " + std::to_string(i));
        std::vector<EvaluationOracle> oracles{EvaluationOracle::of_polynomial(a, rv), EvaluationOracle::of_polynomial(b, rv)};
        auto bounds = sparse.degree_bounds();
        for (int probe = 0; probe < 6; ++probe) {
            Exponents e(arity);
            for (std::size_t j = 0; j < arity; ++j)
                e[j] = rng() % (bounds[j] + 1);
            t.expect(extract_coefficient_polyspace(oracles, pack(e, rv), rv.domain_size()) == coefficient(sparse, e),
                "polyspace coefficient " + std::to_string(i));
        }
    }
}

// Criterion 8 --------------------------------------------------------------

void known_values(Tally & t)
{
    t.expect(chromatic_number(cycle_graph(5)) == 3, "chromatic C5");
    t.expect(chromatic_number(complete_graph(4)) == 4, "chromatic K4");
    t.expect(count_perfect_matchings(complete_graph(4)) == 3, "matchings K4");
    t.expect(count_perfect_matchings(cycle_graph(6)) == 2, "matchings C6");
    t.expect(count_perfect_matchings(complete_bipartite(3, 3)) == 6, "matchings K33");
    t.expect(count_perfect_matchings(complete_graph(6)) == 15, "matchings K6");
    t.expect(tsp(cycle_graph(4)) == std::optional<Weight>(4), "tsp C4");
    t.expect(! hamiltonian_cycle(petersen_graph()), "hamcycle Petersen");
}

}

int main()
{
    auto suite_start = std::chrono::steady_clock::now();
    struct Criterion
    {
        int id;
        std::string name;
        std::function<void(Tally &)> run;
        double limit_seconds;
    };
    // 4 reuses the systems collected by 2, so the order matters
    std::vector<Criterion> criteria{
        {1, "drivers match brute force", drivers, kSuiteSeconds},
        {2, "engine modes and infant encoding agree", engine_equivalence, kSuiteSeconds},
        {3, "matrix invariants identify binary matrices", invariant_coding, kSuiteSeconds},
        {4, "search space sizes", search_space_structure, kSuiteSeconds},
        {5, "core pair, scattered set and threshold contracts", core_contracts, kCoreSeconds},
        {6, "covering via subset closure", covering, kSuiteSeconds},
        {7, "arithmetic substrate", arithmetic, kSuiteSeconds},
        {8, "known values", known_values, kSuiteSeconds},
    };
    std::vector<std::pair<int, bool>> results;
    for (const auto & c : criteria) {
        Tally tally;
        auto start = std::chrono::steady_clock::now();
        bool crashed = false;
        std::string crash;
        try {
            c.run(tally);
        } catch (const std::exception & e) {
            crashed = true;
            crash = e.what();
        }
        double took = seconds_since(start);
        bool ok = ! crashed && tally.failed() == 0 && took <= c.limit_seconds;
        std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.name << "  ("
                  << tally.checks() << " checks, " << tally.failed() << " failed, " << std::fixed
                  << std::setprecision(1) << took << " s)" << std::endl;
        if (! tally.note.empty())
            std::cout << "    " << tally.note << '\n';
        if (crashed)
            std::cout << "    exception: " << crash << '\n';
        if (took > c.limit_seconds)
            std::cout << "    over the time limit of " << c.limit_seconds << " s\n";
        for (const auto & f : tally.failures())
            std::cout << "    " << f << '\n';
        results.emplace_back(c.id, ok);
    }
    double total = seconds_since(suite_start);
    bool all = std::all_of(results.begin(), results.end(), [](const auto & r) { return r.second; }) && total <= kSuiteSeconds;
    std::cout << "total " << std::fixed << std::setprecision(1) << total << " s; " << (all ? "all criteria pass" : "FAILURES")
              << std::endl;
    return all ? 0 : 1;
}

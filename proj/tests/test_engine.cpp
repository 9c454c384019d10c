#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpart/engine.hpp"
#include "kpart/oracle.hpp"
#include "support/instances.hpp"

#include <algorithm>
#include <map>

using namespace kpart;
using namespace kpart::testing;

namespace {

FamilyProvider sets_of(std::vector<std::vector<Vertex>> sets)
{
    std::vector<FamilyMember> members;
    for (const auto & s : sets)
        members.push_back({mask_of(s), 0, 1});
    return FamilyProvider::explicit_sets(std::move(members));
}

PartitionInstance make_instance(int n, std::vector<FamilyProvider> providers, Objective objective = Objective::Count)
{
    PartitionInstance inst;
    inst.n = n;
    inst.k = static_cast<int>(providers.size());
    inst.providers = std::move(providers);
    inst.objective = objective;
    return inst;
}

EngineConfig polyspace()
{
    EngineConfig c;
    c.space = SpaceMode::Polyspace;
    return c;
}

std::size_t axis(const ExactPolynomial & p, const std::string & name)
{
    auto it = std::find(p.variables().begin(), p.variables().end(), name);
    REQUIRE(it != p.variables().end());
    return static_cast<std::size_t>(it - p.variables().begin());
}

void check_same(const SolveAnswer & a, const oracle::BruteAnswer & b, Objective objective)
{
    CHECK(a.feasible == b.feasible);
    if (objective == Objective::Count)
        CHECK(a.count == b.count);
    if (objective == Objective::MinWeight)
        CHECK(a.min_weight == b.min_weight);
}

}

TEST_CASE("plain encoding on small cases")
{
    auto two = make_instance(2, {sets_of({{1}}), sets_of({{2}})});
    auto a = solve_simple(two);
    CHECK(a.feasible);
    CHECK(a.count == 1);

    auto pairs = make_instance(3, {sets_of({{1, 2}, {1, 3}, {2, 3}})}, Objective::Decision);
    CHECK(! solve_simple(pairs).feasible);
    CHECK(! solve_simple(pairs, polyspace()).feasible);

    auto both = make_instance(2, {sets_of({{1}, {2}}), sets_of({{1}, {2}})});
    CHECK(solve_simple(both).count == 2);
    CHECK(solve_simple(both, polyspace()).count == 2);

    auto weighted = make_instance(3, {FamilyProvider::explicit_sets({{mask_of({1}), 4, 1}, {mask_of({1, 2}), 1, 1}}),
                                         FamilyProvider::explicit_sets({{mask_of({2, 3}), 2, 1}, {mask_of({3}), 2, 1}})},
        Objective::MinWeight);
    CHECK(solve_simple(weighted).min_weight == 3);
    CHECK(solve_simple(weighted, polyspace()).min_weight == 3);

    auto repeated = make_instance(2, {FamilyProvider::explicit_sets({{mask_of({1, 2}), 0, 5}})});
    CHECK(solve_simple(repeated).count == 5);

    CHECK_THROWS_AS(FamilyProvider::explicit_sets({{1, 0, 1}, {1, 0, 1}}), InvalidInput);
    CHECK_THROWS_AS(FamilyProvider::explicit_sets({{1, 0, 0}}), InvalidInput);
    CHECK_THROWS_AS(solve_simple(make_instance(2, {sets_of({{3}})})), InvalidInput);

    EngineConfig tight;
    tight.max_provider_sets = 1;
    CHECK_THROWS_AS(solve_simple(both, tight), InvalidInput);
}

TEST_CASE("infant encoding exponents")
{
    InfantSystem sys{{{{1, 2}, 1}}, 2};
    auto inst = make_instance(4, {sets_of({{3}, {4}, {3, 4}})});
    auto polys = build_infant_encoding(inst, sys);
    REQUIRE(polys.size() == 1);
    for (const auto & [e, c] : polys[0].terms())
        for (const char * name : {"z", "s", "t", "u"})
            CHECK(e[axis(polys[0], name)] == 0);
    CHECK(polys[0].coefficient_sum() == 3);

    auto full = make_instance(4, {sets_of({{1, 2}})});
    auto p = build_infant_encoding(full, sys)[0];
    REQUIRE(p.term_count() == 1);
    const auto & e = p.terms().begin()->first;
    CHECK(e[axis(p, "z")] == 1);
    CHECK(e[axis(p, "s")] == 2);
    CHECK(e[axis(p, "t")] == 1);
    CHECK(e[axis(p, "u")] == 1);

    auto lonely = make_instance(4, {sets_of({{1, 3}})});
    CHECK_THROWS_AS(build_infant_encoding(lonely, sys), InvalidInput);
    CHECK(! validate_infant_system(lonely, sys).valid());
}

TEST_CASE("infant system validation")
{
    auto inst = make_instance(6, {sets_of({{1, 2, 3}, {4, 5, 6}})});
    InfantSystem good{{{{1, 2}, 1}, {{4, 5}, 4}}, 2};
    CHECK(validate_infant_system(inst, good).valid());

    auto has = [](const InfantReport & r, int property) {
        return std::any_of(r.violations.begin(), r.violations.end(),
            [&](const InfantViolation & v) { return v.property == property; });
    };
    CHECK(has(validate_infant_system(inst, InfantSystem{{{{1, 2}, 1}, {{2, 3}, 3}}, 2}), 4));
    CHECK(has(validate_infant_system(inst, InfantSystem{{{{1, 2}, 1}, {{3, 4}, 3}, {{5, 6}, 5}, {{1, 6}, 6}}, 2}), 1));
    CHECK(has(validate_infant_system(inst, InfantSystem{{{{1, 2}, 3}}, 2}), 2));
    CHECK(has(validate_infant_system(inst, InfantSystem{{{{1, 2, 3}, 1}}, 2}), 3));
    CHECK(has(validate_infant_system(inst, InfantSystem{{{{1, 9}, 1}}, 2}), 0));
    auto split = make_instance(6, {sets_of({{1}, {2, 3, 4, 5, 6}})});
    CHECK(has(validate_infant_system(split, good), 5));
}

TEST_CASE("infant solves agree with the plain encoding")
{
    Rng rng(41);
    for (int t = 0; t < 40; ++t) {
        int n = 2 + static_cast<int>(rng() % 7);
        int k = 1 + static_cast<int>(rng() % 3);
        auto objective = static_cast<Objective>(t % 3);
        auto inst = random_instance(rng, n, k, 12, objective);
        if (t % 2 == 0)
            plant_partition(rng, inst);
        auto sys = synthetic_pair_system(rng, inst, 1 + static_cast<int>(rng() % (n / 2)));
        REQUIRE(validate_infant_system(inst, sys).valid());
        auto plain = solve_simple(inst);
        auto brute = oracle::brute_partition(inst);
        check_same(plain, brute, objective);
        check_same(solve_with_infants(inst, sys), brute, objective);
        if (n <= 6)
            check_same(solve_with_infants(inst, sys, polyspace()), brute, objective);
        check_same(solve_with_infants(inst, InfantSystem{}), brute, objective);
    }
}

TEST_CASE("plain dense and polyspace agree with brute force")
{
    Rng rng(42);
    for (int t = 0; t < 60; ++t) {
        int n = 1 + static_cast<int>(rng() % 10);
        int k = 1 + static_cast<int>(rng() % 3);
        auto objective = static_cast<Objective>(t % 3);
        auto inst = random_instance(rng, n, k, 20, objective);
        if (t % 3 == 0)
            plant_partition(rng, inst);
        auto brute = oracle::brute_partition(inst);
        check_same(solve_simple(inst), brute, objective);
        check_same(solve_simple(inst, polyspace()), brute, objective);
        EngineConfig sparse;
        sparse.dense_budget_cells = 1;
        check_same(solve_simple(inst, sparse), brute, objective);
    }
}

TEST_CASE("adding sets never destroys feasibility")
{
    Rng rng(43);
    for (int t = 0; t < 30; ++t) {
        int n = 2 + static_cast<int>(rng() % 6);
        auto inst = random_instance(rng, n, 2, 8, Objective::Decision);
        bool before = solve_simple(inst).feasible;
        auto members = inst.providers[0].materialize();
        SetMask extra = 1 + rng() % full_mask(n);
        if (std::none_of(members.begin(), members.end(), [&](const auto & m) { return m.set == extra; }))
            members.push_back({extra, 0, 1});
        inst.providers[0] = FamilyProvider::explicit_sets(std::move(members));
        if (before)
            CHECK(solve_simple(inst).feasible);
    }
}

TEST_CASE("covering")
{
    auto whole = make_instance(2, {sets_of({{1, 2}}), sets_of({{1, 2}})}, Objective::Decision);
    auto cover = whole;
    cover.structure = Structure::Cover;
    CHECK(solve_cover(cover).feasible);
    CHECK(solve_cover(cover, polyspace()).feasible);
    CHECK(! solve_simple(whole).feasible);

    auto empty = make_instance(2, {FamilyProvider::explicit_sets({})}, Objective::Decision);
    empty.structure = Structure::Cover;
    CHECK(! solve_cover(empty).feasible);
    CHECK(! solve_cover(empty, polyspace()).feasible);

    Rng rng(44);
    for (int t = 0; t < 30; ++t) {
        int n = 1 + static_cast<int>(rng() % 7);
        int k = 1 + static_cast<int>(rng() % 3);
        auto objective = static_cast<Objective>(t % 3);
        auto inst = random_instance(rng, n, k, 6, objective, Structure::Cover);
        auto closure = inst;
        closure.structure = Structure::Partition;
        for (auto & p : closure.providers)
            p = subset_closure(p, objective != Objective::MinWeight);
        auto expected = oracle::brute_partition(closure);
        check_same(solve_cover(inst), expected, objective);
        check_same(solve_cover(inst, polyspace()), expected, objective);
        auto as_partition = inst;
        as_partition.structure = Structure::Partition;
        if (solve_simple(as_partition).feasible)
            CHECK(solve_cover(inst).feasible);
    }
}

TEST_CASE("search space sizes")
{
    PartitionInstance inst;
    inst.k = 1;
    inst.n = 9;
    CHECK(search_space_size(inst, InfantSystem{}).code_axis == 512);

    inst.n = 22;
    InfantSystem pairs;
    pairs.q = 2;
    for (Vertex v = 1; v <= 22; v += 2)
        pairs.families.push_back({{v, v + 1}, v});
    CHECK(search_space_size(inst, pairs).code_axis == 708588);
    CHECK(search_space_size(inst, pairs).code_axis < (Natural(1) << 22));

    inst.n = 10;
    InfantSystem fives{{{{1, 2, 3, 4, 5}, 1}, {{6, 7, 8, 9, 10}, 6}}, 5};
    CHECK(search_space_size(inst, fives).code_axis == 30752);
    CHECK(search_space_size(inst, fives).code_axis > 1024);

    // padding: q = 3 with smaller families fills from the loose elements
    inst.n = 8;
    InfantSystem short_rows{{{{1, 2}, 1}, {{5, 6}, 5}}, 3};
    auto padded = pad_infant_system(8, short_rows);
    CHECK(padded.padded_families[0] == std::vector<Vertex>{1, 2, 3});
    CHECK(padded.padded_families[1] == std::vector<Vertex>{5, 6, 4});
    CHECK(padded.loose == std::vector<Vertex>{7, 8});
    CHECK(search_space_size(inst, short_rows).code_axis == Natural(4 * 49 * 8));
}

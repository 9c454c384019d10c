#pragma once

#include "kpart/engine.hpp"
#include "kpart/random_graphs.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace kpart::testing {

/// Random explicit instance: each provider gets up to max_sets distinct
/// nonempty subsets, plus the empty set with probability 1/4.
inline PartitionInstance random_instance(Rng & rng, int n, int k, int max_sets, Objective objective,
    Structure structure = Structure::Partition, Weight max_weight = 5)
{
    PartitionInstance inst;
    inst.n = n;
    inst.k = k;
    inst.objective = objective;
    inst.structure = structure;
    std::uniform_int_distribution<int> count(1, max_sets);
    std::uniform_int_distribution<SetMask> subset(1, n == 0 ? 1 : full_mask(n));
    std::uniform_int_distribution<Weight> weight(0, max_weight);
    for (int i = 0; i < k; ++i) {
        std::map<SetMask, FamilyMember> chosen;
        int target = count(rng);
        if (n > 0)
            for (int t = 0; t < target; ++t) {
                SetMask s = subset(rng);
                chosen.emplace(s, FamilyMember{s, weight(rng), 1});
            }
        if (n == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0)
            chosen.emplace(0, FamilyMember{0, weight(rng), 1});
        std::vector<FamilyMember> members;
        for (auto & [s, m] : chosen)
            members.push_back(m);
        inst.providers.push_back(FamilyProvider::explicit_sets(std::move(members)));
    }
    return inst;
}

/// Plants a random partition into the instance so that it is feasible.
inline void plant_partition(Rng & rng, PartitionInstance & inst)
{
    std::vector<SetMask> parts(inst.k, 0);
    std::uniform_int_distribution<int> pick(0, inst.k - 1);
    for (Vertex v = 1; v <= inst.n; ++v)
        parts[pick(rng)] |= element_bit(v);
    for (int i = 0; i < inst.k; ++i) {
        auto members = inst.providers[i].materialize();
        bool present = std::any_of(members.begin(), members.end(), [&](const auto & m) { return m.set == parts[i]; });
        if (! present)
            members.push_back({parts[i], std::uniform_int_distribution<Weight>(0, 5)(rng), 1});
        inst.providers[i] = FamilyProvider::explicit_sets(std::move(members));
    }
}

/// q = 2 system on p disjoint random pairs (infant, relative); every set that
/// holds an infant is forced to hold its relative as well.
inline InfantSystem synthetic_pair_system(Rng & rng, PartitionInstance & inst, int p)
{
    std::vector<Vertex> order(inst.n);
    for (int i = 0; i < inst.n; ++i)
        order[i] = i + 1;
    std::shuffle(order.begin(), order.end(), rng);
    InfantSystem sys;
    sys.q = 2;
    for (int i = 0; i < p; ++i)
        sys.families.push_back({{order[2 * i], order[2 * i + 1]}, order[2 * i]});
    for (auto & provider : inst.providers) {
        std::map<SetMask, FamilyMember> repaired;
        for (auto m : provider.materialize()) {
            for (const auto & fam : sys.families)
                if (contains(m.set, fam.infant))
                    m.set |= element_bit(fam.members[1]);
            repaired.emplace(m.set, m);
        }
        std::vector<FamilyMember> members;
        for (auto & [s, m] : repaired)
            members.push_back(m);
        provider = FamilyProvider::explicit_sets(std::move(members));
    }
    return sys;
}

/// All subsets of the provider's sets, with multiplicity = number of supersets
/// when `counting`, else with the smallest superset weight.
inline FamilyProvider subset_closure(const FamilyProvider & p, bool counting)
{
    std::map<SetMask, FamilyMember> closure;
    p.enumerate([&](const FamilyMember & m) {
        SetMask sub = m.set;
        while (true) {
            auto [it, fresh] = closure.emplace(sub, FamilyMember{sub, m.weight, m.multiplicity});
            if (! fresh) {
                if (counting)
                    it->second.multiplicity += m.multiplicity;
                else
                    it->second.weight = std::min(it->second.weight, m.weight);
            }
            if (sub == 0)
                break;
            sub = (sub - 1) & m.set;
        }
    });
    std::vector<FamilyMember> members;
    for (auto & [s, m] : closure)
        members.push_back(m);
    return FamilyProvider::explicit_sets(std::move(members));
}

}

#include "kpart/engine.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

namespace kpart {

FamilyProvider::FamilyProvider(Enumerator enumerate, std::uint64_t time_bound, Membership membership) :
    enumerate_(std::move(enumerate)), time_bound_(time_bound), membership_(std::move(membership))
{
    if (! enumerate_)
        throw InvalidInput("family provider needs an enumerator");
}

FamilyProvider FamilyProvider::explicit_sets(std::vector<FamilyMember> members)
{
    std::set<SetMask> seen;
    for (const auto & m : members) {
        if (! seen.insert(m.set).second)
            throw InvalidInput("family lists the same set twice");
        if (m.multiplicity == 0)
            throw InvalidInput("family member multiplicity must be positive");
        if (m.weight < 0)
            throw InvalidInput("set weights must be nonnegative");
    }
    auto shared = std::make_shared<const std::vector<FamilyMember>>(std::move(members));
    auto bound = shared->size();
    return FamilyProvider(
        [shared](const Sink & sink) {
            for (const auto & m : *shared)
                sink(m);
        },
        bound,
        [shared = std::make_shared<const std::set<SetMask>>(std::move(seen))](SetMask s) {
            return shared->contains(s);
        });
}

std::vector<FamilyMember> FamilyProvider::materialize() const
{
    std::vector<FamilyMember> out;
    enumerate([&](const FamilyMember & m) { out.push_back(m); });
    return out;
}

bool FamilyProvider::contains(SetMask s) const
{
    if (membership_)
        return membership_(s);
    bool found = false;
    enumerate([&](const FamilyMember & m) { found = found || m.set == s; });
    return found;
}

namespace {

    std::string describe(SetMask s)
    {
        std::ostringstream out;
        out << '{';
        bool first = true;
        for (Vertex v : mask_elements(s)) {
            out << (first ? "" : ",") << v;
            first = false;
        }
        out << '}';
        return out.str();
    }

    void check_instance(const PartitionInstance & inst)
    {
        if (inst.n < 0 || inst.n > 62)
            throw InvalidInput("ground set size must be in 0..62");
        if (inst.k < 0 || static_cast<int>(inst.providers.size()) != inst.k)
            throw InvalidInput("instance needs exactly k providers");
    }

    // Axis order of every polynomial built here.
    enum Axis { AX, AY, AZ, AS, AT, AU, AW, kAxisCount };
    constexpr const char * kAxisNames[kAxisCount] = {"x", "y", "z", "s", "t", "u", "w"};

    /// Per-element exponent contributions and the target monomial.
    struct Layout
    {
        int n = 0;
        bool infants = false;
        bool weighted = false;
        std::vector<Axis> axes;
        // contribution[v][i] for axis axes[i]; index 0 unused
        std::vector<std::vector<std::int64_t>> contribution;
        std::vector<std::int64_t> target;
        int loose_bits = 0;
        int y_index = -1;
        int w_index = -1;
        std::vector<SetMask> row_masks;
        std::vector<Vertex> row_infants;

        std::vector<std::string> names() const
        {
            std::vector<std::string> out;
            for (auto a : axes)
                out.emplace_back(kAxisNames[a]);
            return out;
        }
    };

    Layout simple_layout(const PartitionInstance & inst)
    {
        Layout l;
        l.n = inst.n;
        l.weighted = inst.objective == Objective::MinWeight;
        l.axes = {AX, AY};
        if (l.weighted)
            l.axes.push_back(AW);
        l.y_index = 1;
        l.w_index = l.weighted ? 2 : -1;
        l.loose_bits = inst.n;
        l.contribution.assign(inst.n + 1, std::vector<std::int64_t>(l.axes.size(), 0));
        for (Vertex v = 1; v <= inst.n; ++v) {
            l.contribution[v][0] = 1;
            l.contribution[v][1] = std::int64_t{1} << (v - 1);
        }
        l.target = {inst.n, (std::int64_t{1} << inst.n) - 1};
        if (l.weighted)
            l.target.push_back(0);
        return l;
    }

    Layout infant_layout(const PartitionInstance & inst, const PaddedInfantSystem & padded)
    {
        Layout l;
        l.n = inst.n;
        l.infants = true;
        l.weighted = inst.objective == Objective::MinWeight;
        l.axes = {AX, AY, AZ, AS, AT, AU};
        if (l.weighted)
            l.axes.push_back(AW);
        l.y_index = 1;
        l.w_index = l.weighted ? 6 : -1;
        l.loose_bits = static_cast<int>(padded.loose.size());
        l.contribution.assign(inst.n + 1, std::vector<std::int64_t>(l.axes.size(), 0));
        for (std::size_t t = 0; t < padded.loose.size(); ++t) {
            auto & c = l.contribution[padded.loose[t]];
            c[0] = 1;
            c[1] = std::int64_t{1} << t;
        }
        const std::int64_t q = padded.q;
        const std::int64_t base = (std::int64_t{1} << q) - 1;
        std::int64_t scale = 1;
        std::int64_t code_target = 0;
        for (int i = 0; i < padded.p; ++i) {
            SetMask row = 0;
            for (int j = 0; j < padded.q; ++j) {
                Vertex v = padded.padded_families[i][j];
                row |= element_bit(v);
                std::int64_t rc = j == 0 ? -1 : (std::int64_t{1} << j);
                auto & c = l.contribution[v];
                c[2] = j == 0 ? 1 : 0;
                c[3] = 1;
                c[4] = rc;
                c[5] = scale * rc;
            }
            l.row_masks.push_back(row);
            l.row_infants.push_back(padded.padded_families[i][0]);
            code_target += scale * (base - 2);
            scale *= base;
        }
        l.target = {l.loose_bits, (std::int64_t{1} << l.loose_bits) - 1, padded.p, padded.p * q,
            padded.p * (base - 2), code_target};
        if (l.weighted)
            l.target.push_back(0);
        return l;
    }

    void check_member(const Layout & l, const FamilyMember & m)
    {
        if (m.set & ~full_mask(l.n))
            throw InvalidInput("provider yields a set outside V: " + describe(m.set));
        if (m.weight < 0)
            throw InvalidInput("set weights must be nonnegative");
        for (std::size_t i = 0; i < l.row_masks.size(); ++i)
            if (contains(m.set, l.row_infants[i]) && popcount(m.set & l.row_masks[i]) == 1)
                throw InvalidInput("set " + describe(m.set) + " holds infant " + std::to_string(l.row_infants[i])
                    + " without a relative; its characteristic matrix is not row-normalized");
    }

    std::vector<std::int64_t> encode_subset(const Layout & l, SetMask s, Weight weight)
    {
        std::vector<std::int64_t> e(l.axes.size(), 0);
        for (SetMask rest = s; rest; rest &= rest - 1) {
            const auto & c = l.contribution[std::countr_zero(rest) + 1];
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += c[i];
        }
        if (l.w_index >= 0)
            e[l.w_index] = weight;
        return e;
    }

    bool exceeds_target(const Layout & l, const std::vector<std::int64_t> & e)
    {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != l.w_index && e[i] > l.target[i])
                return true;
        return false;
    }

    void add_encoded(ExactPolynomial & poly, const Layout & l, const std::vector<std::int64_t> & e,
        std::uint64_t multiplicity)
    {
        if (exceeds_target(l, e))
            return;
        Exponents ex(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0)
                throw std::logic_error("negative exponent in a row-normalized encoding");
            ex[i] = static_cast<std::uint64_t>(e[i]);
        }
        poly.add_term(ex, multiplicity);
    }

    ExactPolynomial partition_polynomial(const Layout & l, const FamilyProvider & provider)
    {
        ExactPolynomial poly(l.names());
        provider.enumerate([&](const FamilyMember & m) {
            check_member(l, m);
            add_encoded(poly, l, encode_subset(l, m.set, m.weight), m.multiplicity);
        });
        return poly;
    }

    ExactPolynomial cover_polynomial(const Layout & l, const FamilyProvider & provider, int expansion_limit)
    {
        ExactPolynomial poly(l.names());
        provider.enumerate([&](const FamilyMember & m) {
            check_member(l, m);
            if (popcount(m.set) > expansion_limit)
                throw InvalidInput("set " + describe(m.set) + " exceeds the dense cover expansion limit");
            // all subsets of m.set, including the empty one
            SetMask sub = 0;
            do {
                add_encoded(poly, l, encode_subset(l, sub, m.weight), m.multiplicity);
                sub = (sub - m.set) & m.set;
            } while (sub != 0);
        });
        return poly;
    }

    SolveAnswer read_answer(const Layout & l, const std::vector<Natural> & by_weight)
    {
        SolveAnswer answer;
        for (std::size_t w = 0; w < by_weight.size(); ++w) {
            if (by_weight[w] != 0 && ! answer.min_weight)
                answer.min_weight = static_cast<Weight>(w);
            answer.count += by_weight[w];
        }
        answer.feasible = answer.count > 0;
        if (! l.weighted)
            answer.min_weight.reset();
        return answer;
    }

    SolveAnswer solve_dense(const Layout & l, const std::vector<ExactPolynomial> & polys, const EngineConfig & config)
    {
        SolveStats stats;
        bool used_dense = false, used_sparse = false;
        Exponents bounds(l.axes.size(), 0);
        for (std::size_t i = 0; i < l.axes.size(); ++i)
            bounds[i] = static_cast<int>(i) == l.w_index ? ~std::uint64_t{0} : static_cast<std::uint64_t>(l.target[i]);

        ExactPolynomial acc = ExactPolynomial::one(l.names());
        for (const auto & poly : polys) {
            stats.term_counts.push_back(poly.term_count());
            std::optional<RadixVector> radices;
            try {
                radices = product_radices(acc, poly);
            } catch (const InvalidInput &) {
            }
            bool packed = radices && radices->domain_size() <= config.dense_budget_cells;
            if (packed) {
                Natural pairs = Natural(acc.term_count()) * poly.term_count() * config.dense_fill_ratio;
                packed = pairs >= radices->domain_size();
            }
            if (packed) {
                stats.packed_domain = std::max(stats.packed_domain, radices->domain_size());
                acc = multiply_packed_dense(acc, poly, *radices);
                used_dense = true;
            } else {
                acc = multiply(acc, poly);
                used_sparse = true;
            }
            acc = truncate_above(acc, bounds);
        }
        stats.path = used_dense && used_sparse ? "dense+sparse" : used_sparse ? "sparse" : "dense";

        std::vector<Natural> by_weight;
        if (l.weighted) {
            for (const auto & [e, c] : acc.terms()) {
                bool hit = true;
                for (std::size_t i = 0; i < e.size() && hit; ++i)
                    hit = static_cast<int>(i) == l.w_index || e[i] == static_cast<std::uint64_t>(l.target[i]);
                if (! hit)
                    continue;
                auto w = e[l.w_index];
                if (by_weight.size() <= w)
                    by_weight.resize(w + 1, 0);
                by_weight[w] += c;
            }
        } else {
            Exponents t(l.target.begin(), l.target.end());
            by_weight.push_back(coefficient(acc, t));
        }
        auto answer = read_answer(l, by_weight);
        answer.stats = std::move(stats);
        return answer;
    }

    struct MemberStats
    {
        std::vector<std::int64_t> max_exponent;
        Natural value_bound = 0;
        std::size_t sets = 0;
    };

    MemberStats scan_provider(const Layout & l, const FamilyProvider & provider, bool cover)
    {
        MemberStats st;
        st.max_exponent.assign(l.axes.size(), 0);
        provider.enumerate([&](const FamilyMember & m) {
            check_member(l, m);
            auto e = encode_subset(l, m.set, m.weight);
            for (std::size_t i = 0; i < e.size(); ++i)
                st.max_exponent[i] = std::max(st.max_exponent[i], e[i]);
            Natural mass = m.multiplicity;
            if (cover)
                mass <<= popcount(m.set);
            st.value_bound += mass;
            ++st.sets;
        });
        return st;
    }

    /// Sum over the provider's sets of multiplicity * w^weight * prod_v factor(v),
    /// where factor(v) is g[v], or 1 + g[v] for covers.
    std::uint64_t provider_value(const modular::PrimeField & f, const FamilyProvider & provider,
        const std::vector<std::uint64_t> & g, std::uint64_t w_base, std::int64_t max_weight, bool cover)
    {
        std::vector<std::uint64_t> factor(g);
        if (cover)
            for (auto & x : factor)
                x = f.add(x, 1);
        std::vector<std::uint64_t> w_pow(static_cast<std::size_t>(max_weight) + 1, 1);
        for (std::size_t i = 1; i < w_pow.size(); ++i)
            w_pow[i] = f.mul(w_pow[i - 1], w_base);
        std::uint64_t total = 0;
        provider.enumerate([&](const FamilyMember & m) {
            std::uint64_t term = m.weight <= max_weight ? w_pow[m.weight] : f.pow(w_base, static_cast<std::uint64_t>(m.weight));
            if (m.multiplicity != 1)
                term = f.mul(term, m.multiplicity % f.modulus());
            for (SetMask rest = m.set; rest; rest &= rest - 1)
                term = f.mul(term, factor[std::countr_zero(rest) + 1]);
            total = f.add(total, term);
        });
        return total;
    }

    SolveAnswer solve_polyspace(const Layout & l, const std::vector<FamilyProvider> & providers, bool cover)
    {
        SolveStats stats;
        stats.path = "polyspace";
        std::vector<MemberStats> scans;
        for (const auto & p : providers) {
            scans.push_back(scan_provider(l, p, cover));
            stats.term_counts.push_back(scans.back().sets);
        }

        // Lower axes get exact radices; the subset axis goes on top and is
        // folded modulo 2^|L|, which the no-carry argument makes lossless.
        std::vector<std::pair<std::string, std::uint64_t>> radix_list;
        std::vector<std::size_t> position(l.axes.size());
        for (std::size_t i = 0; i < l.axes.size(); ++i) {
            if (static_cast<int>(i) == l.y_index)
                continue;
            std::uint64_t r = 1;
            for (const auto & s : scans)
                r += static_cast<std::uint64_t>(s.max_exponent[i]);
            position[i] = radix_list.size();
            radix_list.emplace_back(kAxisNames[l.axes[i]], r);
        }
        position[l.y_index] = radix_list.size();
        radix_list.emplace_back("y", std::uint64_t{1} << l.loose_bits);
        RadixVector radices(radix_list);
        std::uint64_t period = radices.domain_size();
        stats.packed_domain = period;

        // Targets outside the exact lower radices cannot be hit.
        for (std::size_t i = 0; i < l.axes.size(); ++i)
            if (static_cast<int>(i) != l.y_index && static_cast<int>(i) != l.w_index
                && static_cast<std::uint64_t>(l.target[i]) >= radices.radix(position[i])) {
                SolveAnswer none;
                none.stats = stats;
                return none;
            }

        // Packed exponent of each element's contribution (may be negative).
        auto element_exponent = std::make_shared<std::vector<std::int64_t>>(l.n + 1, 0);
        for (Vertex v = 1; v <= l.n; ++v) {
            __int128 e = 0;
            for (std::size_t i = 0; i < l.axes.size(); ++i)
                e += static_cast<__int128>(l.contribution[v][i]) * radices.stride(position[i]);
            (*element_exponent)[v] = static_cast<std::int64_t>(e);
        }
        std::uint64_t w_stride = l.w_index >= 0 ? radices.stride(position[l.w_index]) : 0;

        std::vector<EvaluationOracle> oracles;
        for (std::size_t idx = 0; idx < providers.size(); ++idx) {
            const FamilyProvider * provider = &providers[idx];
            int n = l.n;
            std::int64_t max_weight = l.w_index >= 0 ? scans[idx].max_exponent[l.w_index] : 0;
            auto eval = [provider, element_exponent, w_stride, cover, n, max_weight](const modular::PrimeField & f,
                            std::uint64_t point) {
                std::uint64_t inv = f.inverse(point);
                std::vector<std::uint64_t> g(n + 1, 1);
                for (Vertex v = 1; v <= n; ++v) {
                    std::int64_t e = (*element_exponent)[v];
                    g[v] = e >= 0 ? f.pow(point, static_cast<std::uint64_t>(e))
                                  : f.pow(inv, static_cast<std::uint64_t>(-e));
                }
                return provider_value(f, *provider, g, f.pow(point, w_stride), max_weight, cover);
            };
            auto sweep = [provider, element_exponent, w_stride, cover, n, max_weight, period](
                             const modular::PrimeField & f, std::uint64_t root) -> EvaluationOracle::Sweep {
                // factor of element v at root^j is root^(j E_v); advance by root^(E_v mod period)
                auto current = std::make_shared<std::vector<std::uint64_t>>(n + 1, 1);
                auto step = std::make_shared<std::vector<std::uint64_t>>(n + 1, 1);
                for (Vertex v = 1; v <= n; ++v) {
                    std::int64_t e = (*element_exponent)[v] % static_cast<std::int64_t>(period);
                    if (e < 0)
                        e += static_cast<std::int64_t>(period);
                    (*step)[v] = f.pow(root, static_cast<std::uint64_t>(e));
                }
                std::uint64_t w_step = f.pow(root, w_stride);
                return [&f, provider, current, step, w_step, w_cur = std::uint64_t{1}, cover, n, max_weight]() mutable {
                    std::uint64_t value = provider_value(f, *provider, *current, w_cur, max_weight, cover);
                    for (Vertex v = 1; v <= n; ++v)
                        (*current)[v] = f.mul((*current)[v], (*step)[v]);
                    w_cur = f.mul(w_cur, w_step);
                    return value;
                };
            };
            oracles.emplace_back(std::move(eval), scans[idx].value_bound, std::move(sweep));
        }

        std::vector<std::uint64_t> base_target(radices.size(), 0);
        for (std::size_t i = 0; i < l.axes.size(); ++i)
            if (static_cast<int>(i) != l.w_index)
                base_target[position[i]] = static_cast<std::uint64_t>(l.target[i]);
        std::uint64_t first = pack(base_target, radices);
        std::size_t count = l.w_index >= 0 ? radices.radix(position[l.w_index]) : 1;

        Natural bound = 1;
        for (const auto & o : oracles)
            bound *= o.value_bound();
        stats.primes = bound == 0 ? 0 : modular::primes_exceeding(period, bound).size();

        auto by_weight = extract_folded_coefficients(oracles, first, w_stride, count, period);
        auto answer = read_answer(l, by_weight);
        answer.stats = std::move(stats);
        return answer;
    }

    SolveAnswer run(const PartitionInstance & inst, const Layout & l, const EngineConfig & config)
    {
        bool cover = inst.structure == Structure::Cover;
        for (const auto & p : inst.providers) {
            std::size_t sets = 0;
            p.enumerate([&](const FamilyMember &) { ++sets; });
            if (sets > config.max_provider_sets)
                throw InvalidInput("a family has " + std::to_string(sets) + " sets, above the budget of "
                    + std::to_string(config.max_provider_sets));
        }
        if (config.space == SpaceMode::Polyspace)
            return solve_polyspace(l, inst.providers, cover);
        std::vector<ExactPolynomial> polys;
        for (const auto & p : inst.providers)
            polys.push_back(cover ? cover_polynomial(l, p, config.cover_expansion_limit) : partition_polynomial(l, p));
        return solve_dense(l, polys, config);
    }

}

PaddedInfantSystem pad_infant_system(int n, const InfantSystem & sys)
{
    PaddedInfantSystem out;
    out.p = sys.p();
    out.q = sys.p() == 0 ? 0 : sys.q;
    if (out.p > 0 && out.q < 2)
        throw InvalidInput("a nonempty infant system needs q >= 2");
    if (static_cast<long long>(out.p) * out.q > n)
        throw InvalidInput("infant system violates pq <= n");

    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    for (const auto & fam : sys.families) {
        if (static_cast<int>(fam.members.size()) > out.q)
            throw InvalidInput("infant family larger than q");
        if (std::find(fam.members.begin(), fam.members.end(), fam.infant) == fam.members.end())
            throw InvalidInput("infant " + std::to_string(fam.infant) + " is not in its family");
        for (Vertex v : fam.members) {
            if (v < 1 || v > n)
                throw InvalidInput("infant family element outside V");
            if (used[v])
                throw InvalidInput("infant families overlap at element " + std::to_string(v));
            used[v] = 1;
        }
    }

    Vertex next_free = 1;
    for (const auto & fam : sys.families) {
        std::vector<Vertex> row{fam.infant};
        std::vector<Vertex> rest;
        for (Vertex v : fam.members)
            if (v != fam.infant)
                rest.push_back(v);
        std::sort(rest.begin(), rest.end());
        row.insert(row.end(), rest.begin(), rest.end());
        while (static_cast<int>(row.size()) < out.q) {
            while (next_free <= n && used[next_free])
                ++next_free;
            if (next_free > n)
                throw InvalidInput("not enough free elements to pad the infant families");
            used[next_free] = 1;
            row.push_back(next_free);
        }
        out.padded_families.push_back(std::move(row));
    }
    for (Vertex v = 1; v <= n; ++v)
        if (! used[v])
            out.loose.push_back(v);

    out.rep = MatrixRepresentation(out.p, out.q);
    for (int i = 0; i < out.p; ++i)
        for (int j = 0; j < out.q; ++j)
            out.rep.place(out.padded_families[i][j], {i, j});
    return out;
}

InfantReport validate_infant_system(const PartitionInstance & inst, const InfantSystem & sys)
{
    InfantReport report;
    auto add = [&](int property, std::string message) { report.violations.push_back({property, std::move(message)}); };
    int p = sys.p();
    if (static_cast<long long>(p) * sys.q > inst.n)
        add(1, "p*q = " + std::to_string(static_cast<long long>(p) * sys.q) + " exceeds n = " + std::to_string(inst.n));

    std::vector<int> owner(static_cast<std::size_t>(std::max(inst.n, 0)) + 1, -1);
    std::vector<SetMask> masks;
    for (int i = 0; i < p; ++i) {
        const auto & fam = sys.families[i];
        SetMask m = 0;
        for (Vertex v : fam.members) {
            if (v < 1 || v > inst.n) {
                add(0, "family " + std::to_string(i + 1) + " has element " + std::to_string(v) + " outside V");
                continue;
            }
            if (owner[v] >= 0 && owner[v] != i)
                add(4, "families " + std::to_string(owner[v] + 1) + " and " + std::to_string(i + 1)
                    + " share element " + std::to_string(v));
            owner[v] = i;
            m |= element_bit(v);
        }
        masks.push_back(m);
        if (std::find(fam.members.begin(), fam.members.end(), fam.infant) == fam.members.end())
            add(2, "infant " + std::to_string(fam.infant) + " not in family " + std::to_string(i + 1));
        if (static_cast<int>(fam.members.size()) > sys.q)
            add(3, "family " + std::to_string(i + 1) + " has " + std::to_string(fam.members.size())
                + " elements, q = " + std::to_string(sys.q));
    }

    for (std::size_t idx = 0; idx < inst.providers.size(); ++idx)
        inst.providers[idx].enumerate([&](const FamilyMember & m) {
            for (int i = 0; i < p; ++i) {
                Vertex r = sys.families[i].infant;
                if (r >= 1 && r <= inst.n && contains(m.set, r) && popcount(m.set & masks[i]) < 2)
                    add(5, "provider " + std::to_string(idx + 1) + " set " + describe(m.set) + " holds infant "
                        + std::to_string(r) + " with no relative");
            }
        });
    return report;
}

SolveAnswer solve_simple(const PartitionInstance & inst, const EngineConfig & config)
{
    check_instance(inst);
    if (inst.structure != Structure::Partition)
        throw InvalidInput("solve_simple needs a partition instance");
    return run(inst, simple_layout(inst), config);
}

std::vector<ExactPolynomial> build_infant_encoding(const PartitionInstance & inst, const InfantSystem & sys)
{
    check_instance(inst);
    auto padded = pad_infant_system(inst.n, sys);
    auto l = infant_layout(inst, padded);
    std::vector<ExactPolynomial> out;
    for (const auto & provider : inst.providers) {
        ExactPolynomial poly(l.names());
        provider.enumerate([&](const FamilyMember & m) {
            check_member(l, m);
            auto e = encode_subset(l, m.set, m.weight);
            Exponents ex(e.begin(), e.end());
            poly.add_term(ex, m.multiplicity);
        });
        out.push_back(std::move(poly));
    }
    return out;
}

SolveAnswer solve_with_infants(const PartitionInstance & inst, const InfantSystem & sys, const EngineConfig & config)
{
    check_instance(inst);
    if (inst.structure != Structure::Partition)
        throw InvalidInput("infant systems apply to partition instances");
    if (sys.p() == 0)
        return solve_simple(inst, config);
    auto padded = pad_infant_system(inst.n, sys);
    return run(inst, infant_layout(inst, padded), config);
}

SolveAnswer solve_cover(const PartitionInstance & inst, const EngineConfig & config)
{
    check_instance(inst);
    if (inst.structure != Structure::Cover)
        throw InvalidInput("solve_cover needs a cover instance");
    return run(inst, simple_layout(inst), config);
}

SolveAnswer solve(const PartitionInstance & inst, const std::optional<InfantSystem> & sys, const EngineConfig & config)
{
    if (inst.structure == Structure::Cover)
        return solve_cover(inst, config);
    if (sys)
        return solve_with_infants(inst, *sys, config);
    return solve_simple(inst, config);
}

SearchSpace search_space_size(const PartitionInstance & inst, const InfantSystem & sys)
{
    auto padded = pad_infant_system(inst.n, sys);
    SearchSpace out;
    out.loose_size = padded.loose.size();
    Natural q_side = (Natural(1) << padded.q) - 1;
    Natural rows = 1;
    for (int i = 0; i < padded.p; ++i)
        rows *= q_side;
    out.code_axis = (Natural(1) << padded.loose.size()) * rows * (Natural(1) << padded.q);
    Natural k = inst.k;
    Natural p = padded.p;
    Natural q = padded.q;
    out.auxiliary = {
        {"x", k * static_cast<unsigned>(padded.loose.size()) + 1},
        {"z", k * p + 1},
        {"s", k * p * q + 1},
        {"t", k * p * (padded.q == 0 ? Natural(0) : (Natural(1) << padded.q) - 2) + 1},
    };
    return out;
}

}

#pragma once

#include "kpart/encoding.hpp"
#include "kpart/polyring.hpp"
#include "kpart/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kpart {

/// One set of a family, with its weight and the number of distinct objects it
/// stands for. Counts multiply multiplicities across the chosen parts.
struct FamilyMember
{
    SetMask set = 0;
    Weight weight = 0;
    std::uint64_t multiplicity = 1;
};

/// An enumerable family of subsets of V = {1..n}.
class FamilyProvider
{
public:
    using Sink = std::function<void(const FamilyMember &)>;
    using Enumerator = std::function<void(const Sink &)>;
    using Membership = std::function<bool(SetMask)>;

    /// `time_bound` is the declared number of sets the enumerator may yield.
    FamilyProvider(Enumerator enumerate, std::uint64_t time_bound, Membership membership = {});

    /// Provider over an explicit list; throws InvalidInput on a repeated set or
    /// a zero multiplicity.
    static FamilyProvider explicit_sets(std::vector<FamilyMember> members);

    void enumerate(const Sink & sink) const { enumerate_(sink); }
    std::vector<FamilyMember> materialize() const;
    std::uint64_t time_bound() const { return time_bound_; }

    /// Uses the membership predicate when present, otherwise scans.
    bool contains(SetMask s) const;

private:
    Enumerator enumerate_;
    std::uint64_t time_bound_;
    Membership membership_;
};

enum class Objective { Decision, Count, MinWeight };
enum class Structure { Partition, Cover };
enum class SpaceMode { Dense, Polyspace };

struct PartitionInstance
{
    int n = 0;
    int k = 0;
    std::vector<FamilyProvider> providers;
    Objective objective = Objective::Decision;
    Structure structure = Structure::Partition;
};

struct EngineConfig
{
    SpaceMode space = SpaceMode::Dense;
    std::uint64_t dense_budget_cells = std::uint64_t{1} << 26;
    /// Packed products are used only when |P| * |Q| * ratio reaches the
    /// domain size; sparser products go through the term maps.
    std::uint64_t dense_fill_ratio = 16;
    int cover_expansion_limit = 20;
    /// Largest number of sets a single family may enumerate.
    std::size_t max_provider_sets = std::size_t{1} << 22;
};

struct SolveStats
{
    /// "dense", "sparse", "dense+sparse" or "polyspace".
    std::string path;
    /// Largest packed domain touched (dense) or the transform period (polyspace).
    std::uint64_t packed_domain = 0;
    std::vector<std::size_t> term_counts;
    std::size_t primes = 0;
};

/// count is the number of ordered k-tuples (weighted by multiplicities) for
/// partitions. For covers it counts (tuple, refining partition) witnesses, so
/// only its positivity is meaningful.
struct SolveAnswer
{
    bool feasible = false;
    Natural count = 0;
    std::optional<Weight> min_weight;
    SolveStats stats;
};

struct InfantFamily
{
    std::vector<Vertex> members;
    Vertex infant = 0;
};

/// ((R_1, r_1), ..., (R_p, r_p)) together with the common block size q.
struct InfantSystem
{
    std::vector<InfantFamily> families;
    int q = 0;

    int p() const { return static_cast<int>(families.size()); }
};

/// An infant system after padding every family to exactly q elements.
struct PaddedInfantSystem
{
    int p = 0;
    int q = 0;
    /// Row j: infant first, remaining members ascending, then padding.
    std::vector<std::vector<Vertex>> padded_families;
    /// V minus the union of the padded families, ascending.
    std::vector<Vertex> loose;
    MatrixRepresentation rep{0, 0};
};

/// Pads with the smallest unused elements of V; throws InvalidInput if the
/// system does not fit.
PaddedInfantSystem pad_infant_system(int n, const InfantSystem & sys);

struct InfantViolation
{
    /// 1: pq <= n, 2: r_i in R_i, 3: |R_i| <= q, 4: disjointness, 5: the
    /// relative property, 0: element outside V.
    int property = 0;
    std::string message;
};

struct InfantReport
{
    std::vector<InfantViolation> violations;
    bool valid() const { return violations.empty(); }
};

InfantReport validate_infant_system(const PartitionInstance & inst, const InfantSystem & sys);

/// Partition solver over the (x, y[, w]) encoding: y carries the n-bit subset code.
SolveAnswer solve_simple(const PartitionInstance & inst, const EngineConfig & config = {});

/// One polynomial per provider over x, y, z, s, t, u (and w for min-weight):
/// x, y encode F n L, the rest are the matrix invariants of F n R.
/// Throws InvalidInput when some set is not row-normalized.
std::vector<ExactPolynomial> build_infant_encoding(const PartitionInstance & inst, const InfantSystem & sys);

/// Same answer as solve_simple; an empty system reduces to it.
SolveAnswer solve_with_infants(const PartitionInstance & inst, const InfantSystem & sys,
    const EngineConfig & config = {});

/// Covering solver via the subset-closure polynomials.
SolveAnswer solve_cover(const PartitionInstance & inst, const EngineConfig & config = {});

/// Dispatcher on structure and the presence of a system.
SolveAnswer solve(const PartitionInstance & inst, const std::optional<InfantSystem> & sys,
    const EngineConfig & config = {});

struct SearchSpace
{
    /// 2^|L| (2^q - 1)^p 2^q, with q = 0 for the empty system.
    Natural code_axis;
    std::uint64_t loose_size = 0;
    /// Radices of the counters x, z, s, t (k-fold sums of per-part bounds).
    std::vector<std::pair<std::string, Natural>> auxiliary;
};

SearchSpace search_space_size(const PartitionInstance & inst, const InfantSystem & sys);

}

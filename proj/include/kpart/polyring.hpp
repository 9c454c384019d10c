#pragma once

#include "kpart/encoding.hpp"
#include "kpart/modular.hpp"
#include "kpart/types.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace kpart {

using Exponents = std::vector<std::uint64_t>;

/// Multivariate polynomial with nonnegative arbitrary-precision coefficients.
class ExactPolynomial
{
public:
    explicit ExactPolynomial(std::vector<std::string> variables);
    static ExactPolynomial one(std::vector<std::string> variables);

    const std::vector<std::string> & variables() const { return variables_; }
    std::size_t arity() const { return variables_.size(); }

    /// Adds c to the coefficient of the monomial with exponents e.
    void add_term(const Exponents & e, const Natural & c);

    const std::map<Exponents, Natural> & terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Largest exponent of each variable (all zero for the zero polynomial).
    Exponents degree_bounds() const;
    Natural max_coefficient() const;
    /// Value at the all-ones point.
    Natural coefficient_sum() const;

    bool operator== (const ExactPolynomial &) const = default;

private:
    std::vector<std::string> variables_;
    std::map<Exponents, Natural> terms_;
};

/// Schoolbook product over the term maps.
ExactPolynomial multiply(const ExactPolynomial & p, const ExactPolynomial & q);

/// Radices just large enough to hold every exponent of p * q.
RadixVector product_radices(const ExactPolynomial & p, const ExactPolynomial & q);

/// Product through Kronecker packing and multi-prime NTT convolution.
/// Throws InvalidInput when an exponent of p, q or p * q leaves its radix.
ExactPolynomial multiply_packed_dense(const ExactPolynomial & p, const ExactPolynomial & q,
    const RadixVector & radices);

/// Stored coefficient, or 0.
Natural coefficient(const ExactPolynomial & p, const Exponents & e);

/// Drops every term with some exponent above its bound.
ExactPolynomial truncate_above(const ExactPolynomial & p, const Exponents & bounds);

/// Black-box access to a univariate (packed) polynomial with nonnegative
/// coefficients: its value at a point of a prime field, plus an upper bound on
/// its value at 1.
class EvaluationOracle
{
public:
    using Evaluator = std::function<std::uint64_t(const modular::PrimeField &, std::uint64_t)>;
    /// Yields the values at root^0, root^1, root^2, ... on successive calls.
    using Sweep = std::function<std::uint64_t()>;
    using SweepFactory = std::function<Sweep(const modular::PrimeField &, std::uint64_t root)>;

    /// `sweep`, when given, must agree with `evaluate` on the powers of the root;
    /// it lets an oracle update its state incrementally between points.
    EvaluationOracle(Evaluator evaluate, Natural value_bound, SweepFactory sweep = {});

    /// Oracle for an explicit polynomial packed with the given radices.
    static EvaluationOracle of_polynomial(const ExactPolynomial & p, const RadixVector & radices);

    std::uint64_t evaluate(const modular::PrimeField & field, std::uint64_t point) const
    {
        return evaluate_(field, point);
    }
    const Natural & value_bound() const { return value_bound_; }

    Sweep sweep(const modular::PrimeField & field, std::uint64_t root) const;

private:
    Evaluator evaluate_;
    SweepFactory sweep_;
    Natural value_bound_;
};

/// Coefficient of x^target in the product of the oracles, by the inverse
/// transform sum over the degree_bound-th roots of unity in prime fields.
/// Requires the product degree to be below degree_bound; targets at or beyond
/// it yield 0.
Natural extract_coefficient_polyspace(const std::vector<EvaluationOracle> & oracles, std::uint64_t target,
    std::uint64_t degree_bound);

/// For t = 0..count-1, the sum of the product's coefficients at exponents
/// congruent to first + t * step modulo period, all in a single sweep over the
/// period-th roots of unity. When the product degree is below period this is
/// the plain coefficient.
std::vector<Natural> extract_folded_coefficients(const std::vector<EvaluationOracle> & oracles,
    std::uint64_t first, std::uint64_t step, std::size_t count, std::uint64_t period);

}

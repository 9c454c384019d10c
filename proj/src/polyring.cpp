#include "kpart/polyring.hpp"

#include <algorithm>
#include <bit>

namespace kpart {

ExactPolynomial::ExactPolynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

ExactPolynomial ExactPolynomial::one(std::vector<std::string> variables)
{
    ExactPolynomial p(std::move(variables));
    p.add_term(Exponents(p.arity(), 0), 1);
    return p;
}

void ExactPolynomial::add_term(const Exponents & e, const Natural & c)
{
    if (e.size() != arity())
        throw InvalidInput("exponent tuple does not match the variable list");
    if (c < 0)
        throw InvalidInput("coefficients must be nonnegative");
    if (c == 0)
        return;
    terms_[e] += c;
}

Exponents ExactPolynomial::degree_bounds() const
{
    Exponents out(arity(), 0);
    for (const auto & [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            out[i] = std::max(out[i], e[i]);
    return out;
}

Natural ExactPolynomial::max_coefficient() const
{
    Natural m = 0;
    for (const auto & [e, c] : terms_)
        if (c > m)
            m = c;
    return m;
}

Natural ExactPolynomial::coefficient_sum() const
{
    Natural s = 0;
    for (const auto & [e, c] : terms_)
        s += c;
    return s;
}

namespace {

    void require_same_variables(const ExactPolynomial & p, const ExactPolynomial & q)
    {
        if (p.variables() != q.variables())
            throw InvalidInput("polynomials use different variable lists");
    }

}

ExactPolynomial multiply(const ExactPolynomial & p, const ExactPolynomial & q)
{
    require_same_variables(p, q);
    ExactPolynomial out(p.variables());
    Exponents e(p.arity());
    for (const auto & [ep, cp] : p.terms())
        for (const auto & [eq, cq] : q.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ep[i] + eq[i];
            out.add_term(e, cp * cq);
        }
    return out;
}

RadixVector product_radices(const ExactPolynomial & p, const ExactPolynomial & q)
{
    require_same_variables(p, q);
    auto dp = p.degree_bounds();
    auto dq = q.degree_bounds();
    std::vector<std::pair<std::string, std::uint64_t>> axes;
    for (std::size_t i = 0; i < p.arity(); ++i)
        axes.emplace_back(p.variables()[i], dp[i] + dq[i] + 1);
    return RadixVector(std::move(axes));
}

ExactPolynomial multiply_packed_dense(const ExactPolynomial & p, const ExactPolynomial & q,
    const RadixVector & radices)
{
    require_same_variables(p, q);
    if (radices.size() != p.arity())
        throw InvalidInput("radix vector does not match the variable list");
    ExactPolynomial out(p.variables());
    if (p.is_zero() || q.is_zero())
        return out;

    auto dp = p.degree_bounds();
    auto dq = q.degree_bounds();
    for (std::size_t i = 0; i < p.arity(); ++i)
        if (dp[i] + dq[i] >= radices.radix(i))
            throw InvalidInput("product exponent overflows the radix of axis " + radices.name(i));

    std::uint64_t len_p = pack(dp, radices) + 1;
    std::uint64_t len_q = pack(dq, radices) + 1;
    std::uint64_t out_len = len_p + len_q - 1;
    std::uint64_t ntt_len = std::bit_ceil(out_len);

    Natural bound = std::min(p.term_count(), q.term_count());
    bound *= p.max_coefficient() * q.max_coefficient();
    auto primes = modular::primes_exceeding(ntt_len, bound);

    std::vector<std::uint64_t> packed_p, packed_q;
    for (const auto & [e, c] : p.terms())
        packed_p.push_back(pack(e, radices));
    for (const auto & [e, c] : q.terms())
        packed_q.push_back(pack(e, radices));

    std::vector<std::vector<std::uint64_t>> residues;
    for (std::uint64_t prime : primes) {
        modular::PrimeField field(prime);
        std::vector<std::uint64_t> a(len_p, 0), b(len_q, 0);
        std::size_t idx = 0;
        for (const auto & [e, c] : p.terms())
            a[packed_p[idx++]] = field.reduce(c);
        idx = 0;
        for (const auto & [e, c] : q.terms())
            b[packed_q[idx++]] = field.reduce(c);
        residues.push_back(modular::convolve(a, b, field));
    }

    modular::CrtReconstructor crt(primes);
    std::vector<std::uint64_t> column(primes.size());
    for (std::uint64_t pos = 0; pos < out_len; ++pos) {
        bool nonzero = false;
        for (std::size_t j = 0; j < primes.size(); ++j) {
            column[j] = residues[j][pos];
            nonzero = nonzero || column[j] != 0;
        }
        if (nonzero)
            out.add_term(unpack(pos, radices), crt.reconstruct(column));
    }
    return out;
}

Natural coefficient(const ExactPolynomial & p, const Exponents & e)
{
    auto it = p.terms().find(e);
    return it == p.terms().end() ? Natural(0) : it->second;
}

ExactPolynomial truncate_above(const ExactPolynomial & p, const Exponents & bounds)
{
    if (bounds.size() != p.arity())
        throw InvalidInput("bound tuple does not match the variable list");
    ExactPolynomial out(p.variables());
    for (const auto & [e, c] : p.terms()) {
        bool keep = true;
        for (std::size_t i = 0; i < e.size() && keep; ++i)
            keep = e[i] <= bounds[i];
        if (keep)
            out.add_term(e, c);
    }
    return out;
}

EvaluationOracle::EvaluationOracle(Evaluator evaluate, Natural value_bound, SweepFactory sweep) :
    evaluate_(std::move(evaluate)), sweep_(std::move(sweep)), value_bound_(std::move(value_bound))
{
    if (! evaluate_)
        throw InvalidInput("oracle needs an evaluator");
    if (value_bound_ < 0)
        throw InvalidInput("oracle value bound must be nonnegative");
}

EvaluationOracle::Sweep EvaluationOracle::sweep(const modular::PrimeField & field, std::uint64_t root) const
{
    if (sweep_)
        return sweep_(field, root);
    return [this, &field, root, point = std::uint64_t{1}]() mutable {
        std::uint64_t value = evaluate_(field, point);
        point = field.mul(point, root);
        return value;
    };
}

EvaluationOracle EvaluationOracle::of_polynomial(const ExactPolynomial & p, const RadixVector & radices)
{
    std::vector<std::pair<std::uint64_t, Natural>> packed;
    for (const auto & [e, c] : p.terms())
        packed.emplace_back(pack(e, radices), c);
    auto eval = [packed = std::move(packed)](const modular::PrimeField & f, std::uint64_t x) {
        std::uint64_t acc = 0;
        for (const auto & [e, c] : packed)
            acc = f.add(acc, f.mul(f.reduce(c), f.pow(x, e)));
        return acc;
    };
    return EvaluationOracle(std::move(eval), p.coefficient_sum());
}

Natural extract_coefficient_polyspace(const std::vector<EvaluationOracle> & oracles, std::uint64_t target,
    std::uint64_t degree_bound)
{
    if (degree_bound == 0)
        throw InvalidInput("degree bound must be positive");
    if (target >= degree_bound)
        return 0;
    return extract_folded_coefficients(oracles, target, 0, 1, degree_bound).front();
}

std::vector<Natural> extract_folded_coefficients(const std::vector<EvaluationOracle> & oracles,
    std::uint64_t first, std::uint64_t step, std::size_t count, std::uint64_t period)
{
    if (period == 0)
        throw InvalidInput("period must be positive");
    std::vector<Natural> out(count, 0);
    if (count == 0)
        return out;

    Natural bound = 1;
    for (const auto & o : oracles)
        bound *= o.value_bound();
    if (bound == 0)
        return out;

    auto primes = modular::primes_exceeding(period, bound);
    std::vector<std::vector<std::uint64_t>> residues(count);
    first %= period;
    step %= period;
    for (std::uint64_t prime : primes) {
        modular::PrimeField f(prime);
        std::uint64_t w = f.root_of_unity(period);
        std::uint64_t w_inv = f.inverse(w);
        std::uint64_t shift_first = f.pow(w_inv, first);
        std::uint64_t shift_step = f.pow(w_inv, step);

        std::vector<EvaluationOracle::Sweep> sweeps;
        for (const auto & o : oracles)
            sweeps.push_back(o.sweep(f, w));

        std::vector<std::uint64_t> acc(count, 0);
        std::uint64_t a = 1, b = 1;
        for (std::uint64_t j = 0; j < period; ++j) {
            // every sweep advances exactly once per point
            std::uint64_t value = 1;
            for (auto & s : sweeps)
                value = f.mul(value, s());
            if (value != 0) {
                std::uint64_t term = f.mul(value, a);
                for (std::size_t t = 0; t < count; ++t) {
                    acc[t] = f.add(acc[t], term);
                    term = f.mul(term, b);
                }
            }
            a = f.mul(a, shift_first);
            b = f.mul(b, shift_step);
        }
        std::uint64_t scale = f.inverse(period % prime);
        for (std::size_t t = 0; t < count; ++t)
            residues[t].push_back(f.mul(acc[t], scale));
    }

    modular::CrtReconstructor crt(primes);
    for (std::size_t t = 0; t < count; ++t)
        out[t] = crt.reconstruct(residues[t]);
    return out;
}

}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpart/modular.hpp"
#include "kpart/polyring.hpp"

#include <random>

using namespace kpart;

namespace {

ExactPolynomial poly(std::vector<std::string> vars, std::vector<std::pair<Exponents, long long>> terms)
{
    ExactPolynomial p(std::move(vars));
    for (auto & [e, c] : terms)
        p.add_term(e, c);
    return p;
}

ExactPolynomial random_poly(std::mt19937_64 & rng, std::size_t arity, int terms, int max_exp, int max_coef)
{
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < arity; ++i)
        vars.push_back("v" + std::to_string(i));
    ExactPolynomial p(vars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(arity);
        for (auto & x : e)
            x = rng() % (max_exp + 1);
        p.add_term(e, 1 + static_cast<long long>(rng() % max_coef));
    }
    return p;
}

/// Independent schoolbook product.
ExactPolynomial naive_product(const ExactPolynomial & p, const ExactPolynomial & q)
{
    ExactPolynomial out(p.variables());
    for (const auto & [ep, cp] : p.terms())
        for (const auto & [eq, cq] : q.terms()) {
            Exponents e(ep.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ep[i] + eq[i];
            Natural c = cp;
            c *= cq;
            out.add_term(e, c);
        }
    return out;
}

}

TEST_CASE("sparse multiplication")
{
    auto one_plus_x = poly({"x"}, {{{0}, 1}, {{1}, 1}});
    CHECK(multiply(one_plus_x, one_plus_x) == poly({"x"}, {{{0}, 1}, {{1}, 2}, {{2}, 1}}));
    auto p = poly({"x", "y"}, {{{0, 3}, 4}, {{2, 1}, 7}});
    CHECK(multiply(p, ExactPolynomial::one({"x", "y"})) == p);
    CHECK(multiply(p, ExactPolynomial({"x", "y"})).is_zero());
    CHECK_THROWS_AS(multiply(p, one_plus_x), InvalidInput);
    CHECK_THROWS_AS(p.add_term({1}, 1), InvalidInput);

    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        auto a = random_poly(rng, 3, 1 + static_cast<int>(rng() % 50), 6, 100);
        auto b = random_poly(rng, 3, 1 + static_cast<int>(rng() % 50), 6, 100);
        auto ab = multiply(a, b);
        CHECK(ab == naive_product(a, b));
        CHECK(ab == multiply(b, a));
        auto da = a.degree_bounds(), db = b.degree_bounds(), dab = ab.degree_bounds();
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(dab[i] == da[i] + db[i]);
    }
}

TEST_CASE("coefficient lookup and truncation")
{
    auto p = poly({"x"}, {{{0}, 1}, {{1}, 2}});
    CHECK(coefficient(p, {1}) == 2);
    CHECK(coefficient(p, {5}) == 0);
    auto q = poly({"x", "y"}, {{{0, 0}, 1}, {{1, 2}, 3}, {{2, 0}, 5}});
    CHECK(truncate_above(q, {1, 5}) == poly({"x", "y"}, {{{0, 0}, 1}, {{1, 2}, 3}}));
    CHECK(q.coefficient_sum() == 9);
    CHECK(q.max_coefficient() == 5);
}

TEST_CASE("packed dense multiplication")
{
    auto one_plus_y = poly({"y"}, {{{0}, 1}, {{1}, 1}});
    RadixVector r3({{"y", 3}});
    CHECK(multiply_packed_dense(one_plus_y, one_plus_y, r3) == poly({"y"}, {{{0}, 1}, {{1}, 2}, {{2}, 1}}));
    CHECK_THROWS_AS(multiply_packed_dense(one_plus_y, one_plus_y, RadixVector({{"y", 2}})), InvalidInput);

    std::mt19937_64 rng(32);
    for (int t = 0; t < 30; ++t) {
        std::size_t arity = 1 + rng() % 4;
        auto a = random_poly(rng, arity, 1 + static_cast<int>(rng() % 40), 5, 1000000);
        auto b = random_poly(rng, arity, 1 + static_cast<int>(rng() % 40), 5, 1000000);
        CHECK(multiply_packed_dense(a, b, product_radices(a, b)) == multiply(a, b));
    }
    // products of three factors with small coefficients
    for (int t = 0; t < 10; ++t) {
        auto a = random_poly(rng, 2, 20, 4, 1), b = random_poly(rng, 2, 20, 4, 1), c = random_poly(rng, 2, 20, 4, 1);
        auto dense = multiply_packed_dense(a, b, product_radices(a, b));
        dense = multiply_packed_dense(dense, c, product_radices(dense, c));
        CHECK(dense == multiply(multiply(a, b), c));
    }
    ExactPolynomial big({"x"});
    big.add_term({0}, Natural(1) << 200);
    big.add_term({3}, (Natural(1) << 190) + 12345);
    CHECK(multiply_packed_dense(big, big, product_radices(big, big)) == multiply(big, big));
}

TEST_CASE("polynomial-space extraction")
{
    auto one_plus_x = poly({"x"}, {{{0}, 1}, {{1}, 1}});
    RadixVector r({{"x", 4}});
    auto oracle = EvaluationOracle::of_polynomial(one_plus_x, r);
    CHECK(extract_coefficient_polyspace({oracle, oracle}, 1, 4) == 2);
    CHECK(extract_coefficient_polyspace({oracle, oracle}, 2, 4) == 1);
    CHECK(extract_coefficient_polyspace({oracle, oracle}, 3, 4) == 0);
    CHECK(extract_coefficient_polyspace({oracle, oracle}, 9, 4) == 0);
    CHECK_THROWS_AS(extract_coefficient_polyspace({oracle}, 0, 0), InvalidInput);

    std::mt19937_64 rng(33);
    for (int t = 0; t < 20; ++t) {
        std::size_t arity = 1 + rng() % 3;
        std::vector<ExactPolynomial> factors;
        std::size_t k = 1 + rng() % 3;
        for (std::size_t i = 0; i < k; ++i)
            factors.push_back(random_poly(rng, arity, 1 + static_cast<int>(rng() % 12), 3, 1000));
        ExactPolynomial product = ExactPolynomial::one(factors[0].variables());
        for (const auto & f : factors)
            product = multiply(product, f);
        auto bounds = product.degree_bounds();
        std::vector<std::pair<std::string, std::uint64_t>> axes;
        for (std::size_t i = 0; i < arity; ++i)
            axes.emplace_back(product.variables()[i], bounds[i] + 1);
        RadixVector rv(axes);
        std::vector<EvaluationOracle> oracles;
        for (const auto & f : factors)
            oracles.push_back(EvaluationOracle::of_polynomial(f, rv));
        for (int probe = 0; probe < 4; ++probe) {
            Exponents e(arity);
            for (std::size_t i = 0; i < arity; ++i)
                e[i] = rng() % (bounds[i] + 1);
            CHECK(extract_coefficient_polyspace(oracles, pack(e, rv), rv.domain_size()) == coefficient(product, e));
        }
    }
}

TEST_CASE("folded extraction")
{
    // (1 + x + x^2)^3 has coefficients 1 3 6 7 6 3 1
    auto p = poly({"x"}, {{{0}, 1}, {{1}, 1}, {{2}, 1}});
    auto o = EvaluationOracle::of_polynomial(p, RadixVector({{"x", 7}}));
    auto plain = extract_folded_coefficients({o, o, o}, 0, 1, 7, 8);
    CHECK(plain == std::vector<Natural>{1, 3, 6, 7, 6, 3, 1});
    // modulo 4 the residues collect 1+6, 3+3, 6+1, 7
    auto folded = extract_folded_coefficients({o, o, o}, 0, 1, 4, 4);
    CHECK(folded == std::vector<Natural>{7, 6, 7, 7});
    auto stepped = extract_folded_coefficients({o, o, o}, 1, 2, 3, 8);
    CHECK(stepped == std::vector<Natural>{3, 7, 3});
}

TEST_CASE("modular substrate")
{
    using namespace kpart::modular;
    CHECK(is_prime(2));
    CHECK(is_prime(998244353));
    CHECK(! is_prime(1));
    CHECK(! is_prime(561));
    CHECK(is_prime((std::uint64_t{1} << 61) - 1));
    PrimeField f(998244353);
    std::mt19937_64 rng(34);
    for (int t = 0; t < 1000; ++t) {
        std::uint64_t a = rng() % f.modulus(), b = rng() % f.modulus();
        CHECK(f.mul(a, b) == mul_mod(a, b, f.modulus()));
        CHECK(f.pow(a, 12345) == pow_mod(a, 12345, f.modulus()));
        if (a != 0)
            CHECK(f.mul(a, f.inverse(a)) == 1);
    }
    std::uint64_t w = f.root_of_unity(1 << 10);
    CHECK(f.pow(w, 1 << 10) == 1);
    CHECK(f.pow(w, 1 << 9) != 1);
    auto primes = primes_exceeding(12, Natural(1) << 300);
    Natural prod = 1;
    for (auto p : primes) {
        CHECK(is_prime(p));
        CHECK(p % 12 == 1);
        prod *= p;
    }
    CHECK(prod > (Natural(1) << 300));
    CrtReconstructor crt(primes);
    Natural x = (Natural(1) << 299) + 987654321;
    std::vector<std::uint64_t> residues;
    for (auto p : primes)
        residues.push_back(static_cast<std::uint64_t>(x % p));
    CHECK(crt.reconstruct(residues) == x);
}

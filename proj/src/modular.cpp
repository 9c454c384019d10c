#include "kpart/modular.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace kpart::modular {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p)
{
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1)
            result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t x)
{
    if (x < 2)
        return false;
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (x % small == 0)
            return x == small;
    }
    std::uint64_t d = x - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t y = pow_mod(a, d, x);
        if (y == 1 || y == x - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            y = mul_mod(y, y, x);
            if (y == x - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p)
{
    if (p >= kPrimeCeiling || p == 2 || ! is_prime(p))
        throw InvalidInput("field modulus must be an odd prime below 2^62");
    std::uint64_t inv = p;
    for (int i = 0; i < 6; ++i)
        inv *= 2 - p * inv;
    neg_inv_ = ~inv + 1;
    std::uint64_t r = (~p + 1) % p;
    r2_ = mul_mod(r, r, p);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const
{
    // stay in Montgomery form for the whole ladder
    std::uint64_t base = redc(static_cast<unsigned __int128>(a % p_) * r2_);
    std::uint64_t result = redc(r2_);
    while (e) {
        if (e & 1)
            result = redc(static_cast<unsigned __int128>(result) * base);
        base = redc(static_cast<unsigned __int128>(base) * base);
        e >>= 1;
    }
    return redc(result);
}

std::uint64_t PrimeField::inverse(std::uint64_t a) const
{
    if (a % p_ == 0)
        throw InvalidInput("zero has no inverse");
    return pow(a, p_ - 2);
}

std::uint64_t PrimeField::reduce(const Natural & x) const
{
    return static_cast<std::uint64_t>(x % p_);
}

namespace {

    std::vector<std::uint64_t> prime_factors(std::uint64_t x)
    {
        std::vector<std::uint64_t> out;
        for (std::uint64_t f = 2; f * f <= x; ++f) {
            if (x % f == 0) {
                out.push_back(f);
                while (x % f == 0)
                    x /= f;
            }
        }
        if (x > 1)
            out.push_back(x);
        return out;
    }

}

std::uint64_t PrimeField::root_of_unity(std::uint64_t order) const
{
    if (order == 0 || (p_ - 1) % order != 0)
        throw InvalidInput("root order must divide p - 1");
    auto factors = prime_factors(order);
    for (std::uint64_t a = 2; a < p_; ++a) {
        std::uint64_t h = pow((a), (p_ - 1) / order);
        bool primitive = std::all_of(factors.begin(), factors.end(),
            [&](std::uint64_t r) { return pow(h, order / r) != 1; });
        if (primitive)
            return h;
    }
    throw InvalidInput("no root of unity found");
}

std::vector<std::uint64_t> primes_exceeding(std::uint64_t order, const Natural & bound)
{
    if (order == 0)
        throw InvalidInput("prime order must be positive");
    std::vector<std::uint64_t> out;
    Natural product = 1;
    std::uint64_t c = (kPrimeCeiling - 2) / order;
    while (product <= bound) {
        for (;; --c) {
            if (c == 0)
                throw InvalidInput("no transform-friendly prime below 2^62 for order " + std::to_string(order));
            std::uint64_t candidate = c * order + 1;
            if (is_prime(candidate)) {
                out.push_back(candidate);
                product *= candidate;
                --c;
                break;
            }
        }
    }
    return out;
}

void ntt(std::span<std::uint64_t> values, const PrimeField & field, bool inverse)
{
    std::size_t n = values.size();
    if (n <= 1)
        return;
    if (! std::has_single_bit(n))
        throw InvalidInput("NTT length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(values[i], values[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = field.root_of_unity(len);
        if (inverse)
            w = field.inverse(w);
        std::size_t half = len / 2;
        std::vector<std::uint64_t> twiddle(half);
        twiddle[0] = 1;
        for (std::size_t k = 1; k < half; ++k)
            twiddle[k] = field.mul(twiddle[k - 1], w);
        for (std::size_t start = 0; start < n; start += len)
            for (std::size_t k = 0; k < half; ++k) {
                std::uint64_t u = values[start + k];
                std::uint64_t v = field.mul(values[start + k + half], twiddle[k]);
                values[start + k] = field.add(u, v);
                values[start + k + half] = field.sub(u, v);
            }
    }

    if (inverse) {
        std::uint64_t scale = field.inverse(n % field.modulus());
        for (auto & x : values)
            x = field.mul(x, scale);
    }
}

std::vector<std::uint64_t> convolve(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
    const PrimeField & field)
{
    if (a.empty() || b.empty())
        return {};
    std::size_t out_size = a.size() + b.size() - 1;
    std::size_t n = std::bit_ceil(out_size);
    std::vector<std::uint64_t> fa(a.begin(), a.end()), fb(b.begin(), b.end());
    fa.resize(n, 0);
    fb.resize(n, 0);
    ntt(fa, field, false);
    ntt(fb, field, false);
    for (std::size_t i = 0; i < n; ++i)
        fa[i] = field.mul(fa[i], fb[i]);
    ntt(fa, field, true);
    fa.resize(out_size);
    return fa;
}

CrtReconstructor::CrtReconstructor(std::vector<std::uint64_t> primes) : primes_(std::move(primes))
{
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        std::uint64_t prefix = 1;
        for (std::size_t j = 0; j < i; ++j)
            prefix = mul_mod(prefix, primes_[j] % primes_[i], primes_[i]);
        inverse_.push_back(i == 0 ? 1 : pow_mod(prefix, primes_[i] - 2, primes_[i]));
    }
}

Natural CrtReconstructor::reconstruct(std::span<const std::uint64_t> residues) const
{
    if (residues.size() != primes_.size())
        throw InvalidInput("residue count does not match prime count");
    if (std::all_of(residues.begin(), residues.end(), [](std::uint64_t r) { return r == 0; }))
        return 0;

    // Garner: x = d_0 + d_1 p_0 + d_2 p_0 p_1 + ..., digits computed in uint64
    std::vector<std::uint64_t> digits(primes_.size());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        std::uint64_t p = primes_[i];
        std::uint64_t value = 0;
        std::uint64_t scale = 1;
        for (std::size_t j = 0; j < i; ++j) {
            value = (value + mul_mod(digits[j] % p, scale, p)) % p;
            scale = mul_mod(scale, primes_[j] % p, p);
        }
        std::uint64_t diff = (residues[i] % p + p - value) % p;
        digits[i] = mul_mod(diff, inverse_[i], p);
    }
    Natural x = 0;
    for (std::size_t i = primes_.size(); i-- > 0;) {
        x *= primes_[i];
        x += digits[i];
    }
    return x;
}

}

#pragma once

#include "kpart/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace kpart::modular {

inline constexpr std::uint64_t kPrimeCeiling = std::uint64_t{1} << 62;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t x);

/// Arithmetic in Z/pZ for an odd prime p < 2^62. Values are plain residues;
/// products go through Montgomery reduction internally.
class PrimeField
{
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { a += b; return a >= p_ ? a - p_ : a; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const
    {
        return redc(static_cast<unsigned __int128>(redc(static_cast<unsigned __int128>(a) * b)) * r2_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inverse(std::uint64_t a) const;
    std::uint64_t reduce(const Natural & x) const;

    /// An element of multiplicative order exactly `order`; requires order | p - 1.
    std::uint64_t root_of_unity(std::uint64_t order) const;

private:
    std::uint64_t redc(unsigned __int128 t) const
    {
        std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
        auto r = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }

    std::uint64_t p_;
    std::uint64_t neg_inv_ = 0; // -p^-1 mod 2^64
    std::uint64_t r2_ = 0;      // 2^128 mod p
};

/// Primes p < 2^62 with p = 1 (mod order), largest first, until their product
/// exceeds bound. Throws InvalidInput if the range runs out.
std::vector<std::uint64_t> primes_exceeding(std::uint64_t order, const Natural & bound);

/// In-place cyclic NTT of power-of-two length; the length must divide p - 1.
void ntt(std::span<std::uint64_t> values, const PrimeField & field, bool inverse);

/// Acyclic convolution of a and b modulo the field prime.
std::vector<std::uint64_t> convolve(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
    const PrimeField & field);

/// Chinese remaindering of residues modulo pairwise coprime primes.
class CrtReconstructor
{
public:
    explicit CrtReconstructor(std::vector<std::uint64_t> primes);

    const std::vector<std::uint64_t> & primes() const { return primes_; }

    /// The unique value in [0, prod primes) with the given residues.
    Natural reconstruct(std::span<const std::uint64_t> residues) const;

private:
    std::vector<std::uint64_t> primes_;
    // inverse_[i] = (p_0 ... p_{i-1})^-1 mod p_i
    std::vector<std::uint64_t> inverse_;
};

}

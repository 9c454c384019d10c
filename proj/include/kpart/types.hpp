#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kpart {

/// Arbitrary-precision nonnegative integer used for counts and coefficients.
using Natural = boost::multiprecision::cpp_int;

/// Nonnegative integer weight of a set or an edge.
using Weight = std::int64_t;

/// Vertex / element identifier. Ground sets and graphs are 1-indexed.
using Vertex = int;

/// Subset of {1..n} for n <= 64: element v is bit (v - 1).
using SetMask = std::uint64_t;

inline constexpr int kMaxMaskElements = 64;

constexpr SetMask element_bit(Vertex v) { return SetMask{1} << (v - 1); }

constexpr SetMask full_mask(int n)
{
    return n >= 64 ? ~SetMask{0} : (SetMask{1} << n) - 1;
}

constexpr int popcount(SetMask s) { return std::popcount(s); }

constexpr bool contains(SetMask s, Vertex v) { return (s & element_bit(v)) != 0; }

inline std::vector<Vertex> mask_elements(SetMask s)
{
    std::vector<Vertex> out;
    while (s) {
        out.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return out;
}

inline SetMask mask_of(const std::vector<Vertex> & elems)
{
    SetMask s = 0;
    for (Vertex v : elems)
        s |= element_bit(v);
    return s;
}

/// Raised when an input violates a documented precondition.
class InvalidInput : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

}

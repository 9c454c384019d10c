#pragma once

#include "kpart/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kpart {

struct Cell
{
    int row;
    int col;

    auto operator<=> (const Cell &) const = default;
};

/// Injective placement of a ground subset U into a p x q grid.
class MatrixRepresentation
{
public:
    MatrixRepresentation(int p, int q);

    void place(Vertex v, Cell cell);

    int rows() const { return p_; }
    int cols() const { return q_; }
    bool contains(Vertex v) const { return placement_.contains(v); }
    Cell cell(Vertex v) const;
    const std::map<Vertex, Cell> & placement() const { return placement_; }

private:
    int p_;
    int q_;
    std::map<Vertex, Cell> placement_;
    std::vector<char> occupied_;
};

/// Dense p x q matrix of nonnegative integers.
class CharacteristicMatrix
{
public:
    CharacteristicMatrix(int p, int q);
    static CharacteristicMatrix from_rows(const std::vector<std::vector<std::int64_t>> & rows);

    int rows() const { return p_; }
    int cols() const { return q_; }

    std::int64_t & operator() (int i, int j) { return entries_[index(i, j)]; }
    std::int64_t operator() (int i, int j) const { return entries_[index(i, j)]; }

    bool is_binary() const;

    CharacteristicMatrix & operator+= (const CharacteristicMatrix & other);
    friend CharacteristicMatrix operator+ (CharacteristicMatrix a, const CharacteristicMatrix & b) { return a += b; }
    bool operator== (const CharacteristicMatrix &) const = default;

private:
    std::size_t index(int i, int j) const;

    int p_;
    int q_;
    std::vector<std::int64_t> entries_;
};

std::int64_t colweight(const CharacteristicMatrix & m, int j);
std::int64_t weight(const CharacteristicMatrix & m);

/// -M[i,0] + sum_{j>=1} 2^j M[i,j]; negative exactly for binary rows [1,0,...,0].
std::int64_t rowcode(const CharacteristicMatrix & m, int i);
std::int64_t rowsum(const CharacteristicMatrix & m);
bool is_row_normalized(const CharacteristicMatrix & m);

/// sum_i (2^q - 1)^i rowcode(M, i); throws InvalidInput unless row-normalized.
Natural code(const CharacteristicMatrix & m);

struct MatrixInvariants
{
    std::int64_t colweight0 = 0;
    std::int64_t weight = 0;
    std::int64_t rowsum = 0;
    Natural code = 0;

    bool operator== (const MatrixInvariants &) const = default;
};

MatrixInvariants invariants(const CharacteristicMatrix & m);

/// Binary matrix with ones exactly at the cells of s; throws if s leaves U.
CharacteristicMatrix characteristic_matrix(const MatrixRepresentation & rep, const std::vector<Vertex> & s);
CharacteristicMatrix characteristic_matrix(const MatrixRepresentation & rep, SetMask s);

/// The unique row-normalized binary matrix with the given invariants, if any.
std::optional<CharacteristicMatrix> reconstruct_matrix(std::int64_t colweight0, std::int64_t weight,
    std::int64_t rowsum, const Natural & code, int p, int q);

/// Ordered (name, radix) list describing a mixed-radix exponent packing.
class RadixVector
{
public:
    RadixVector() = default;
    RadixVector(std::vector<std::pair<std::string, std::uint64_t>> axes);

    std::size_t size() const { return axes_.size(); }
    std::uint64_t radix(std::size_t i) const { return axes_[i].second; }
    const std::string & name(std::size_t i) const { return axes_[i].first; }

    /// Stride of axis i in the packed integer.
    std::uint64_t stride(std::size_t i) const { return strides_[i]; }

    /// Product of all radices; every packed value is below it.
    std::uint64_t domain_size() const { return domain_; }

private:
    std::vector<std::pair<std::string, std::uint64_t>> axes_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t domain_ = 1;
};

std::uint64_t pack(std::span<const std::uint64_t> exponents, const RadixVector & radices);
std::vector<std::uint64_t> unpack(std::uint64_t value, const RadixVector & radices);

int hamming_weight(std::uint64_t x);

}

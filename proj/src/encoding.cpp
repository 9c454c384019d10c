#include "kpart/encoding.hpp"

#include <bit>
#include <limits>
#include <string>

namespace kpart {

MatrixRepresentation::MatrixRepresentation(int p, int q) : p_(p), q_(q)
{
    if (p < 0 || q < 0)
        throw InvalidInput("matrix representation needs nonnegative dimensions");
    occupied_.assign(static_cast<std::size_t>(p) * q, 0);
}

void MatrixRepresentation::place(Vertex v, Cell cell)
{
    if (cell.row < 0 || cell.row >= p_ || cell.col < 0 || cell.col >= q_)
        throw InvalidInput("cell out of range for element " + std::to_string(v));
    auto & slot = occupied_[static_cast<std::size_t>(cell.row) * q_ + cell.col];
    if (slot || placement_.contains(v))
        throw InvalidInput("matrix representation must be injective (element " + std::to_string(v) + ")");
    slot = 1;
    placement_.emplace(v, cell);
}

Cell MatrixRepresentation::cell(Vertex v) const
{
    auto it = placement_.find(v);
    if (it == placement_.end())
        throw InvalidInput("element " + std::to_string(v) + " is not placed");
    return it->second;
}

CharacteristicMatrix::CharacteristicMatrix(int p, int q) :
    p_(p), q_(q), entries_(static_cast<std::size_t>(p) * q, 0)
{
}

CharacteristicMatrix CharacteristicMatrix::from_rows(const std::vector<std::vector<std::int64_t>> & rows)
{
    int p = static_cast<int>(rows.size());
    int q = p == 0 ? 0 : static_cast<int>(rows.front().size());
    CharacteristicMatrix m(p, q);
    for (int i = 0; i < p; ++i) {
        if (static_cast<int>(rows[i].size()) != q)
            throw InvalidInput("ragged matrix rows");
        for (int j = 0; j < q; ++j) {
            if (rows[i][j] < 0)
                throw InvalidInput("matrix entries must be nonnegative");
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

std::size_t CharacteristicMatrix::index(int i, int j) const
{
    if (i < 0 || i >= p_ || j < 0 || j >= q_)
        throw InvalidInput("matrix index out of range");
    return static_cast<std::size_t>(i) * q_ + j;
}

bool CharacteristicMatrix::is_binary() const
{
    for (auto e : entries_)
        if (e > 1)
            return false;
    return true;
}

CharacteristicMatrix & CharacteristicMatrix::operator+= (const CharacteristicMatrix & other)
{
    if (p_ != other.p_ || q_ != other.q_)
        throw InvalidInput("matrix dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += other.entries_[i];
    return *this;
}

std::int64_t colweight(const CharacteristicMatrix & m, int j)
{
    if (j < 0 || j >= m.cols())
        throw InvalidInput("column out of range");
    std::int64_t sum = 0;
    for (int i = 0; i < m.rows(); ++i)
        sum += m(i, j);
    return sum;
}

std::int64_t weight(const CharacteristicMatrix & m)
{
    std::int64_t sum = 0;
    for (int j = 0; j < m.cols(); ++j)
        sum += colweight(m, j);
    return sum;
}

std::int64_t rowcode(const CharacteristicMatrix & m, int i)
{
    if (i < 0 || i >= m.rows())
        throw InvalidInput("row out of range");
    if (m.cols() > 62)
        throw InvalidInput("rowcode needs q <= 62");
    std::int64_t value = m.cols() > 0 ? -m(i, 0) : 0;
    for (int j = 1; j < m.cols(); ++j)
        value += (std::int64_t{1} << j) * m(i, j);
    return value;
}

std::int64_t rowsum(const CharacteristicMatrix & m)
{
    std::int64_t sum = 0;
    for (int i = 0; i < m.rows(); ++i)
        sum += rowcode(m, i);
    return sum;
}

bool is_row_normalized(const CharacteristicMatrix & m)
{
    for (int i = 0; i < m.rows(); ++i)
        if (rowcode(m, i) < 0)
            return false;
    return true;
}

Natural code(const CharacteristicMatrix & m)
{
    Natural base = (Natural(1) << m.cols()) - 1;
    Natural value = 0;
    Natural scale = 1;
    for (int i = 0; i < m.rows(); ++i) {
        auto rc = rowcode(m, i);
        if (rc < 0)
            throw InvalidInput("code() needs a row-normalized matrix (row " + std::to_string(i) + ")");
        value += scale * rc;
        scale *= base;
    }
    return value;
}

MatrixInvariants invariants(const CharacteristicMatrix & m)
{
    return {m.cols() > 0 ? colweight(m, 0) : 0, weight(m), rowsum(m), code(m)};
}

CharacteristicMatrix characteristic_matrix(const MatrixRepresentation & rep, const std::vector<Vertex> & s)
{
    CharacteristicMatrix m(rep.rows(), rep.cols());
    for (Vertex v : s) {
        auto c = rep.cell(v);
        m(c.row, c.col) = 1;
    }
    return m;
}

CharacteristicMatrix characteristic_matrix(const MatrixRepresentation & rep, SetMask s)
{
    return characteristic_matrix(rep, mask_elements(s));
}

std::optional<CharacteristicMatrix> reconstruct_matrix(std::int64_t colweight0, std::int64_t weight_value,
    std::int64_t rowsum_value, const Natural & code_value, int p, int q)
{
    if (q < 2 || q > 62 || p < 0)
        throw InvalidInput("reconstruct_matrix needs 2 <= q <= 62");
    if (code_value < 0)
        return std::nullopt;

    Natural base = (Natural(1) << q) - 1;
    Natural rest = code_value;
    CharacteristicMatrix e(p, q);
    for (int i = 0; i < p; ++i) {
        auto r = static_cast<std::int64_t>(rest % base);
        rest /= base;
        std::int64_t first = r & 1;
        std::uint64_t high = static_cast<std::uint64_t>(r + first);
        if (high >> q)
            return std::nullopt;
        e(i, 0) = first;
        for (int j = 1; j < q; ++j)
            e(i, j) = (high >> j) & 1;
    }
    if (rest != 0)
        return std::nullopt;
    if (colweight(e, 0) != colweight0 || weight(e) != weight_value || rowsum(e) != rowsum_value)
        return std::nullopt;
    return e;
}

RadixVector::RadixVector(std::vector<std::pair<std::string, std::uint64_t>> axes) : axes_(std::move(axes))
{
    for (const auto & [name, radix] : axes_) {
        if (radix < 1)
            throw InvalidInput("radix of axis " + name + " must be >= 1");
        strides_.push_back(domain_);
        if (domain_ > std::numeric_limits<std::uint64_t>::max() / radix)
            throw InvalidInput("packed domain exceeds 64 bits");
        domain_ *= radix;
    }
}

std::uint64_t pack(std::span<const std::uint64_t> exponents, const RadixVector & radices)
{
    if (exponents.size() != radices.size())
        throw InvalidInput("exponent arity does not match radix vector");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] >= radices.radix(i))
            throw InvalidInput("exponent " + std::to_string(exponents[i]) + " out of radix for axis " + radices.name(i));
        value += exponents[i] * radices.stride(i);
    }
    return value;
}

std::vector<std::uint64_t> unpack(std::uint64_t value, const RadixVector & radices)
{
    if (value >= radices.domain_size())
        throw InvalidInput("packed value out of domain");
    std::vector<std::uint64_t> out(radices.size());
    for (std::size_t i = 0; i < radices.size(); ++i) {
        out[i] = value % radices.radix(i);
        value /= radices.radix(i);
    }
    return out;
}

int hamming_weight(std::uint64_t x) { return std::popcount(x); }

}

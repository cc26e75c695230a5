#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace subtle::gf2 {

/// Dense bit vector over F_2.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const noexcept { return n_; }
    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) noexcept
    {
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= bit;
        else
            words_[i >> 6] &= ~bit;
    }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    BitVector& operator^=(const BitVector& o) noexcept
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] ^= o.words_[k];
        return *this;
    }
    bool none() const noexcept;
    /// Lowest set index, or size() if none.
    std::size_t first() const noexcept;

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Row-major dense matrix over F_2; rows are BitVectors of equal length.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    BitVector& row(std::size_t i) { return rows_[i]; }
    const BitVector& row(std::size_t i) const { return rows_[i]; }
    void push_row(BitVector r);

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Reduced row echelon form of the row space. `pivots[k]` is the pivot
/// column of row k of `basis`.
struct Echelon {
    std::vector<BitVector> basis;
    std::vector<std::size_t> pivots;

    std::size_t rank() const noexcept { return basis.size(); }
    /// Reduces v against the basis in place; returns true when v becomes 0.
    bool reduce(BitVector& v) const;
    bool contains(BitVector v) const { return reduce(v); }
    /// Adds v if independent; returns whether it was added.
    bool insert(BitVector v);
};

Echelon row_echelon(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of { x : x * M = 0 } for M with rows indexed by the source basis,
/// i.e. the left kernel of the linear map sending source basis vector i to
/// row i.
std::vector<BitVector> left_kernel(const Matrix& m);

/// Affine solution set of x * M = b: a particular solution (if any) plus a
/// basis of the homogeneous solutions.
struct Solution {
    std::optional<BitVector> particular;
    std::vector<BitVector> kernel;
};
Solution solve_left(const Matrix& m, const BitVector& b);

}  // namespace subtle::gf2

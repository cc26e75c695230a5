#include "subtle/gf2.hpp"

#include <bit>

namespace subtle::gf2 {

bool BitVector::none() const noexcept
{
    for (auto w : words_)
        if (w)
            return false;
    return true;
}

std::size_t BitVector::first() const noexcept
{
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k])
            return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return n_;
}

void Matrix::push_row(BitVector r)
{
    if (rows_.empty() && cols_ == 0)
        cols_ = r.size();
    rows_.push_back(std::move(r));
}

bool Echelon::reduce(BitVector& v) const
{
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (v.get(pivots[k]))
            v ^= basis[k];
    return v.none();
}

bool Echelon::insert(BitVector v)
{
    if (reduce(v))
        return false;
    const std::size_t p = v.first();
    // keep the basis fully reduced so reduce() is one pass
    for (auto& b : basis)
        if (b.get(p))
            b ^= v;
    basis.push_back(std::move(v));
    pivots.push_back(p);
    return true;
}

Echelon row_echelon(const Matrix& m)
{
    Echelon e;
    for (std::size_t i = 0; i < m.rows(); ++i)
        e.insert(m.row(i));
    return e;
}

std::size_t rank(const Matrix& m) { return row_echelon(m).rank(); }

namespace {

// Elimination on [M | I]; returns reduced rows with their combination tags.
struct Tracked {
    std::vector<BitVector> rows;
    std::vector<BitVector> combos;
    std::vector<std::size_t> pivots;
    std::vector<BitVector> kernel;
};

Tracked eliminate(const Matrix& m)
{
    Tracked t;
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        BitVector v = m.row(i);
        BitVector c(n);
        c.set(i);
        for (std::size_t k = 0; k < t.rows.size(); ++k)
            if (v.get(t.pivots[k])) {
                v ^= t.rows[k];
                c ^= t.combos[k];
            }
        if (v.none()) {
            t.kernel.push_back(std::move(c));
            continue;
        }
        const std::size_t p = v.first();
        for (std::size_t k = 0; k < t.rows.size(); ++k)
            if (t.rows[k].get(p)) {
                t.rows[k] ^= v;
                t.combos[k] ^= c;
            }
        t.rows.push_back(std::move(v));
        t.combos.push_back(std::move(c));
        t.pivots.push_back(p);
    }
    return t;
}

}  // namespace

std::vector<BitVector> left_kernel(const Matrix& m) { return eliminate(m).kernel; }

Solution solve_left(const Matrix& m, const BitVector& b)
{
    Tracked t = eliminate(m);
    Solution s;
    s.kernel = std::move(t.kernel);
    BitVector v = b;
    BitVector c(m.rows());
    for (std::size_t k = 0; k < t.rows.size(); ++k)
        if (v.get(t.pivots[k])) {
            v ^= t.rows[k];
            c ^= t.combos[k];
        }
    if (v.none())
        s.particular = std::move(c);
    return s;
}

}  // namespace subtle::gf2

#include <doctest.h>

#include "subtle/gf2.hpp"

using namespace subtle::gf2;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows)
{
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (auto r : rows) {
        std::size_t j = 0;
        for (int v : r)
            m.row(i).set(j++, v != 0);
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("rank of small matrices")
{
    CHECK(rank(from_rows({{1, 0}, {0, 1}})) == 2);
    CHECK(rank(from_rows({{1, 1}, {1, 1}})) == 1);
    CHECK(rank(from_rows({{0, 0, 0}})) == 0);
    CHECK(rank(from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 2);
}

TEST_CASE("left kernel annihilates the matrix")
{
    auto m = from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {0, 0, 0}});
    auto k = left_kernel(m);
    CHECK(k.size() == 2);
    for (const auto& x : k) {
        BitVector acc(m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (x.get(i))
                acc ^= m.row(i);
        CHECK(acc.none());
        CHECK_FALSE(x.none());
    }
}

TEST_CASE("solve_left finds particular solutions")
{
    auto m = from_rows({{1, 0, 1}, {0, 1, 1}});
    BitVector b(3);
    b.set(0);
    b.set(1);
    auto s = solve_left(m, b);
    REQUIRE(s.particular);
    CHECK(s.particular->get(0));
    CHECK(s.particular->get(1));
    CHECK(s.kernel.empty());

    BitVector c(3);
    c.set(0);
    CHECK_FALSE(solve_left(m, c).particular);
}

TEST_CASE("echelon insertion detects dependence")
{
    Echelon e;
    BitVector a(4), b(4);
    a.set(0);
    a.set(2);
    b.set(2);
    CHECK(e.insert(a));
    CHECK(e.insert(b));
    BitVector c(4);
    c.set(0);
    CHECK_FALSE(e.insert(c));
    CHECK(e.rank() == 2);
}

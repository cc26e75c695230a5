#include <doctest.h>

#include <functional>

#include "subtle/error.hpp"
#include "subtle/motives.hpp"
#include "subtle/rings.hpp"

using namespace subtle;

namespace {

const FieldModel& real()
{
    static const auto m = FieldModel::builtin(BuiltinTag::real);
    return m;
}
const FieldModel& fq()
{
    static const auto m = FieldModel::builtin(BuiltinTag::finite_field);
    return m;
}
const FieldModel& qc()
{
    static const auto m = FieldModel::builtin(BuiltinTag::quadratically_closed);
    return m;
}

std::string nf(const std::string& s) { return motive_parse(s).str(); }

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("invertible rules")
{
    CHECK(nf("N^-1 * N") == "T");
    CHECK(nf("N^1 * N^-1") == "T");
    CHECK(nf("N^2 * N^-1") == "N^1");
    CHECK(nf("Mt * N") == "Mt(0)[1]");
    CHECK(nf("Mt * N^-3") == "Mt(0)[-3]");
    CHECK(nf("N^0") == "T");
    for (int k = -5; k <= 5; ++k) {
        const auto a = FormalMotive::atom(AtomBase::N, k), b = FormalMotive::atom(AtomBase::N, -k);
        CHECK(motive_tensor(a, b) == FormalMotive::unit());
    }
}

TEST_CASE("absorption")
{
    CHECK(nf("Ma * Xa") == "Ma");
    CHECK(nf("N^4 * Xa(1)[1]") == "Xa(1)[1]");
    CHECK(nf("Ma * N^-2") == "Ma");
    CHECK(nf("Mt * Xa") == "0");
    CHECK(nf("Ma * Mt") == "0");
    CHECK(nf("Xt * N") == "Xt*N^1");
    // the order of reduction does not matter for these mixed cases
    CHECK(nf("(Mt * N) * Xa") == nf("Mt * (N * Xa)"));
    CHECK(nf("(Ma * N) * Mt") == nf("Ma * (N * Mt)"));
}

TEST_CASE("parser and printer")
{
    CHECK(nf("T + T") == "T + T");
    CHECK(nf("(T + N)(1)[2]") == "T(1)[2] + N^1(1)[2]");
    CHECK(nf("(T + N) * (T + N^-1)") == "T + T + N^-1 + N^1");
    CHECK(nf("0 + T * 0") == "0");
    CHECK(nf("T(1)[1](1)[1]") == "T(2)[2]");
    for (const auto* s : {"T + N^1(1)[1]", "Ma + Mt(2)[3] + Xa*Xa", "Xt*N^-2(0)[-1]"})
        CHECK(nf(nf(s)) == nf(s));
    for (const auto* bad : {"", "T +", "Q", "N^", "T(1)", "(T", "T)"})
        CHECK(kind_of([&] { motive_parse(bad); }) == ErrorKind::ParseError);
    CHECK(motive_parse_expr("(T + N) * Mt(1)[2]")->str() == "(T + N^1) * Mt(1)[2]");
}

TEST_CASE("affine quadrics")
{
    CHECK(affine_quadric_motive(1).str() == "T + N^1(1)[1]");
    CHECK(affine_quadric_motive(2).str() == "T + T(2)[3]");
    CHECK(affine_quadric_motive(3).str() == "T + N^1(3)[5]");
    CHECK(kind_of([] { affine_quadric_motive(0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("torsor motives")
{
    CHECK(torsor_motive(0, true).expanded->str() == "T");
    CHECK(*torsor_motive(1, true).expanded == affine_quadric_motive(1));
    const auto two = *torsor_motive(2, true).expanded;
    CHECK(two.atom_count() == 4);
    CHECK(two == motive_parse("(T + T(2)[3]) * (T + N(1)[1])"));
    for (int n = 1; n <= 5; ++n) {
        FormalMotive prod = FormalMotive::unit();
        for (int i = 1; i <= n; ++i)
            prod = motive_tensor(prod, affine_quadric_motive(i));
        CHECK(*torsor_motive(n, true).expanded == prod);
        CHECK(prod.atom_count() == (1u << n));
    }
    const auto open = torsor_motive(2, false);
    CHECK_FALSE(open.expanded);
    CHECK(open.tree->str() ==
          "Cone[-1](Xh --c_2(h)--> Xh(2)[4]) * Cone[-1](Xh --~c_1(h)--> (N^1 * Xh)(1)[2])");
    CHECK(kind_of([&] { motive_evaluate(*open.tree); }) == ErrorKind::UnsupportedAtom);
}

TEST_CASE("cohomology of single atoms")
{
    const Bidegree box{6, 6};
    const auto h = block_table(real(), {BlockId::Kind::H}, box);
    const auto t23 = motive_cohomology(real(), motive_parse("T(2)[3]"), box);
    CHECK(t23.table == h.shifted({2, 3}));
    CHECK(t23.warnings.empty());
    CHECK(motive_cohomology(real(), motive_parse("N"), box).table ==
          block_table(real(), {BlockId::Kind::Npow, 0, 1}, box));
    CHECK(motive_cohomology(fq(), motive_parse("N^-1"), box).table == nbar_table(fq(), box));
    CHECK(motive_cohomology(fq(), motive_parse("Xt"), box).table == block_table(fq(), {BlockId::Kind::Xtilde}, box));
}

TEST_CASE("additivity and the quadric example")
{
    const Bidegree box{5, 5};
    for (const auto* m : {&real(), &fq()}) {
        const auto a = motive_parse("N^2(1)[0] + Mt"), b = motive_parse("Xa(0)[2] + T(1)[1] + Ma");
        CHECK(motive_cohomology(*m, a + b, box).table ==
              motive_cohomology(*m, a, box).table + motive_cohomology(*m, b, box).table);
    }
    const auto q = motive_cohomology(fq(), affine_quadric_motive(1), box).table;
    // H at (1)[1] is spanned by s, N(1)[1] contributes its (0)[0] unit
    CHECK(q.at(1, 1) == 2);
    const auto h = block_table(fq(), {BlockId::Kind::H}, box);
    const auto n = block_table(fq(), {BlockId::Kind::Npow, 0, 1}, box);
    for (int w = 0; w <= 5; ++w)
        for (int d = 0; d <= 5; ++d)
            CHECK(q.at(w, d) == h.at(w, d) + n.at(w - 1, d - 1));
}

TEST_CASE("Ma is the cohomology of the quadratic extension")
{
    // over R the extension is C; finite fields have finite quadratic extensions
    const Bidegree box{6, 6};
    const auto r = rost_cohomology(real(), box);
    CHECK(r.table == block_table(qc(), {BlockId::Kind::H}, box));
    CHECK(rost_cohomology(fq(), box).table == block_table(fq(), {BlockId::Kind::H}, box));
    CHECK_FALSE(r.ambiguous.empty());
    CHECK(motive_cohomology(real(), motive_parse("Ma(1)[1]"), box).table ==
          block_table(qc(), {BlockId::Kind::H}, box).shifted({1, 1}));
    CHECK(kind_of([&] { rost_cohomology(qc(), box); }) == ErrorKind::MissingAlpha);
}

TEST_CASE("clipping and unsupported summands")
{
    const Bidegree box{4, 4};
    const auto c = motive_cohomology(real(), motive_parse("T(0)[-1]"), box);
    REQUIRE(c.warnings.size() == 1);
    CHECK(c.warnings[0].find("clipped") != std::string::npos);
    // H over R shifted down by one degree: (w)[d] reads H at (w)[d+1]
    CHECK(c.table.at(2, 1) == 1);
    CHECK(c.table.at(2, 2) == 0);
    CHECK(kind_of([&] { motive_cohomology(real(), motive_parse("Ma*Xt"), box); }) == ErrorKind::UnsupportedAtom);
    CHECK(kind_of([&] { motive_cohomology(real(), motive_parse("N^-2"), box); }) == ErrorKind::UnsupportedAtom);
}

#include <doctest.h>

#include "subtle/error.hpp"
#include "subtle/gf2.hpp"
#include "subtle/milnor.hpp"

using namespace subtle;

namespace {

// dim K^M_n by dense elimination of all relation multiples against all
// degree-n monomials of the free algebra.
std::size_t dense_dim(const FieldModel& m, int n)
{
    const auto& km = m.km();
    auto free = Presentation::create("free", km.generators(), {}, 1 << 20);
    const auto cols = free.monomials({n, n});
    gf2::Echelon e;
    for (const auto& r : km.relations()) {
        const Bidegree rd = r.front().deg;
        if (!(Bidegree{n, n} - rd).nonnegative())
            continue;
        for (const auto& mono : free.monomials(Bidegree{n, n} - rd)) {
            gf2::BitVector v(cols.size());
            for (const auto& t : multiply(mono, r))
                v.flip(coordinates({t}, cols)[0]);
            e.insert(std::move(v));
        }
    }
    return cols.size() - e.rank();
}

}  // namespace

TEST_CASE("built-in models expand as documented")
{
    auto real = FieldModel::builtin(BuiltinTag::real);
    CHECK(real.km().generators().size() == 1);
    CHECK(real.km().generators()[0].name == "rho");
    CHECK(real.alpha().str() == "rho");
    CHECK(real.minus_one()->str() == "rho");

    auto fq = FieldModel::builtin(BuiltinTag::finite_field);
    CHECK(fq.km().relations().size() == 1);
    CHECK(fq.alpha().str() == "s");
    CHECK(fq.minus_one()->is_zero());

    auto qc = FieldModel::builtin(BuiltinTag::quadratically_closed);
    CHECK(qc.km().generators().empty());
    CHECK_FALSE(qc.has_alpha());
    try {
        qc.alpha();
        FAIL("expected MissingAlpha");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingAlpha);
    }
}

TEST_CASE("finite field products of degree 2 vanish")
{
    auto fq = FieldModel::builtin(BuiltinTag::finite_field);
    CHECK(km_normal_form(fq, "s*s").is_zero());
    CHECK(km_normal_form(fq, "s + s").is_zero());
    for (int n = 2; n <= 6; ++n)
        CHECK(fq.dim(n) == 0);
    CHECK(fq.dim(1) == 1);
    auto real = FieldModel::builtin(BuiltinTag::real);
    CHECK(km_normal_form(real, "rho*rho").str() == "rho^2");
}

TEST_CASE("declared square alpha is rejected")
{
    ModelDescriptor d;
    d.generators = {"a", "b"};
    d.relations = {"a"};
    d.alpha = "a";
    try {
        FieldModel::build(d);
        FAIL("expected AlphaIsSquare");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AlphaIsSquare);
    }
}

TEST_CASE("descriptor errors")
{
    ModelDescriptor d;
    d.generators = {"a", "a"};
    d.alpha = "a";
    CHECK_THROWS_AS(FieldModel::build(d), Error);
    d.generators = {"a"};
    d.alpha = "zeta";
    try {
        FieldModel::build(d);
        FAIL("expected UnknownGenerator");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownGenerator);
    }
    d.alpha = "a";
    d.relations = {"a^2 + a"};
    try {
        FieldModel::build(d);
        FAIL("expected NonHomogeneousRelation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonHomogeneousRelation);
    }
}

TEST_CASE("graded dimensions agree with dense elimination")
{
    ModelDescriptor custom;
    custom.generators = {"a", "b"};
    custom.relations = {"a*b", "b^3 + a^3"};
    custom.alpha = "a";
    std::vector<FieldModel> models{FieldModel::builtin(BuiltinTag::real),
                                   FieldModel::builtin(BuiltinTag::finite_field),
                                   FieldModel::builtin(BuiltinTag::quadratically_closed), FieldModel::build(custom)};
    for (const auto& m : models)
        for (int n = 0; n <= 6; ++n)
            CHECK(m.dim(n) == dense_dim(m, n));
}

TEST_CASE("annihilators")
{
    auto real = FieldModel::builtin(BuiltinTag::real);
    CHECK(km_annihilator(real, real.alpha(), 6).gens.empty());
    auto fq = FieldModel::builtin(BuiltinTag::finite_field);
    auto ann = km_annihilator(fq, fq.alpha(), 6);
    REQUIRE(ann.gens.size() == 1);
    CHECK(ann.gens[0].str() == "s");
    try {
        km_annihilator(fq, fq.km().zero(), 3);
        FAIL("expected ZeroElement");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroElement);
    }
}

TEST_CASE("annihilator membership is exact per degree")
{
    ModelDescriptor custom;
    custom.generators = {"a", "b", "c"};
    custom.relations = {"a*b", "a*c + c^2"};
    custom.alpha = "a";
    auto m = FieldModel::build(custom);
    const int bound = 5;
    auto ann = km_annihilator(m, m.alpha(), bound);
    auto q = quotient(m.km(), ann);
    for (int n = 0; n + 1 <= bound; ++n) {
        const auto basis = m.km().standard_monomials({n, n});
        // every subset sum of the basis
        const std::size_t k = basis.size();
        REQUIRE(k < 16);
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            Polynomial x;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1)
                    x.push_back(basis[i]);
            const bool kills = m.km().normal_form(multiply(x, m.alpha().polynomial())).is_zero();
            const bool member = q.normal_form(q.import(x, m.km())).is_zero();
            CHECK(kills == member);
        }
    }
}

TEST_CASE("normal form is idempotent")
{
    auto fq = FieldModel::builtin(BuiltinTag::finite_field);
    for (const char* e : {"s", "s^2 + s", "0", "1 + s"}) {
        auto x = km_normal_form(fq, e);
        CHECK(fq.km().normal_form(x.polynomial()) == x);
    }
}

TEST_CASE("descriptor JSON")
{
    auto j = nlohmann::json::parse(R"({"builtin": null, "generators": ["x"], "relations": ["x^3"], "alpha": "x"})");
    auto m = FieldModel::build(ModelDescriptor::from_json(j));
    CHECK(m.tag() == BuiltinTag::custom);
    CHECK(m.dim(2) == 1);
    CHECK(m.dim(3) == 0);
    CHECK_FALSE(m.minus_one());
    auto b = FieldModel::build(ModelDescriptor::from_json(nlohmann::json::parse(R"({"builtin": "real"})")));
    CHECK(b.tag() == BuiltinTag::real);
}

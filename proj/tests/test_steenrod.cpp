#include <doctest.h>

#include <random>

#include "subtle/error.hpp"
#include "subtle/rings.hpp"
#include "subtle/steenrod.hpp"

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

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

Element random_element(const Presentation& p, Bidegree b, std::mt19937_64& rng)
{
    Polynomial x;
    for (const auto& m : p.standard_monomials(b))
        if (rng() & 1)
            x = add(x, Polynomial{m});
    return p.normal_form(x);
}

}  // namespace

TEST_CASE("classical Wu values on BO_n")
{
    // Sq1 w_k = w_1 w_k + (k - 1) w_{k+1}, with w_{n+1} = 0
    for (const auto* m : {&real(), &fq()})
        for (int n = 1; n <= 4; ++n) {
            auto bo = build_BO(*m, n, 14);
            auto der = sq1_define(*m, bo);
            for (int k = 1; k <= n; ++k) {
                std::string want = "u_1*u_" + std::to_string(k);
                if (k % 2 == 0 && k < n)
                    want += " + u_" + std::to_string(k + 1);
                CHECK(der.value(u_name(k)) == bo.parse(want));
            }
            CHECK(der.value("tau") == (m == &real() ? bo.parse("rho") : bo.zero()));
        }
}

TEST_CASE("Leibniz on random products")
{
    std::mt19937_64 rng(11);
    for (const auto* m : {&real(), &fq()}) {
        const std::vector<Presentation> rings{build_BO(*m, 3, 16), build_BOpn(*m, 1, 16), build_BUn(*m, 2, 16)};
        for (const auto& p : rings) {
            auto der = sq1_define(*m, p);
            for (int trial = 0; trial < 60; ++trial) {
                const Bidegree a{static_cast<int>(rng() % 3), static_cast<int>(rng() % 4)};
                const Bidegree b{static_cast<int>(rng() % 3), static_cast<int>(rng() % 4)};
                const auto x = random_element(p, a, rng), y = random_element(p, b, rng);
                CHECK(sq1_apply(der, x * y) == sq1_apply(der, x) * y + x * sq1_apply(der, y));
                CHECK(sq1_apply(der, sq1_apply(der, x)).is_zero());
            }
        }
    }
}

TEST_CASE("solver recovers Sq1 v_3 on BO(p_1)")
{
    for (const auto* m : {&real(), &fq()}) {
        auto p = build_BOpn(*m, 1, 14);
        auto der = sq1_define(*m, p);
        REQUIRE(der.consistent);
        REQUIRE(der.solved.size() == 1);
        CHECK(der.solved[0].name == "v_3");
        CHECK(der.solved[0].solution_dim == 0);
        CHECK(der.value("v_3") == p.parse("u_1*v_3"));
        CHECK(der.value("u_2") == p.parse("v_3 + u_1*u_2"));
        auto r = sq1_check(der, {5, 5});
        CHECK(r.ok());
        CHECK(der.verified_box == Bidegree{5, 5});
    }
}

TEST_CASE("every built ring carries a descending Sq1")
{
    for (const auto* m : {&real(), &fq()}) {
        const std::vector<Presentation> rings{build_H(*m, 12),         build_BO(*m, 2, 12),
                                              build_BUn(*m, 2, 12),    build_BOpn(*m, 2, 12),
                                              build_BOhtilde(*m, 2, 12), build_Xalpha(*m, 12)};
        for (const auto& p : rings) {
            INFO(p.label());
            auto der = sq1_define(*m, p);
            auto r = sq1_check(der, {4, 4});
            CHECK(r.ok());
        }
    }
}

TEST_CASE("mu u_2 is not Sq1-closed in X_alpha[u_1, u_2]")
{
    auto x = build_Xalpha(real(), 12, {{u_name(1), {0, 1}}, {u_name(2), {1, 2}}});
    auto der = sq1_define(real(), x);
    const auto img = sq1_apply(der, x.parse("mu*u_2"));
    CHECK(img == x.parse("mu^2*u_2 + mu*u_1*u_2"));
    CHECK_FALSE(img.is_zero());
    // descent of tau mu = rho is what makes the defaults consistent
    CHECK(sq1_apply(der, x.parse("tau*mu")) == sq1_apply(der, x.parse("rho")));
}

TEST_CASE("a bad override is caught by the check")
{
    auto p = build_BOpn(real(), 1, 14);
    auto der = sq1_define(real(), p, {{"v_3", "0"}});
    auto r = sq1_check(der, {4, 4});
    CHECK_FALSE(r.descends);
    REQUIRE_FALSE(r.failing_relations.empty());
    CHECK(r.failing_relations[0].first == "tau*v_3 + rho*u_2");
    const auto j = r.to_json();
    CHECK(j["ok"] == false);
    CHECK(j["failing_relations"][0]["image"] == r.failing_relations[0].second);
}

TEST_CASE("errors")
{
    auto bo = build_BO(real(), 2, 10);
    CHECK(kind_of([&] { sq1_define(real(), bo, {{"u_1", "u_2"}}); }) == ErrorKind::BidegreeMismatch);
    CHECK(kind_of([&] { sq1_define(real(), bo, {{"zeta", "0"}}); }) == ErrorKind::UnknownGenerator);
    ModelDescriptor d;
    d.generators = {"a"};
    d.relations = {"a^2"};
    auto custom = FieldModel::build(d);
    auto h = build_H(custom, 10);
    CHECK(kind_of([&] { sq1_define(custom, h); }) == ErrorKind::MissingRhoDesignation);
    auto der = sq1_define(custom, h, {{"tau", "a"}});
    CHECK(der.value("tau") == h.parse("a"));
    auto base = sq1_define(real(), bo);
    CHECK(kind_of([&] { sq1_apply(base, bo.parse_raw("u_2^5")); }) == ErrorKind::ExceedsBound);
    CHECK(kind_of([&] { sq1_check(base, {5, 5}); }) == ErrorKind::ExceedsBound);
}

#include <doctest.h>

#include "subtle/error.hpp"
#include "subtle/maps.hpp"
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

}  // namespace

TEST_CASE("identity on BO_2")
{
    auto bo = build_BO(real(), 2, 12);
    auto h = hom_define(bo, bo, std::map<std::string, std::string>{{"u_1", "u_1"}, {"u_2", "u_2"}});
    auto r = hom_verify(h, {5, 5});
    CHECK(r.well_defined);
    CHECK(r.surjective);
    CHECK(r.injective);
    CHECK(h.injective_on_box);
    CHECK(h.verified_box == Bidegree{5, 5});
}

TEST_CASE("bidegree guard")
{
    auto bo = build_BO(real(), 2, 12);
    auto bu = build_BUn(real(), 1, 12);
    try {
        hom_define(bo, bu, std::map<std::string, std::string>{{"u_1", "c_1"}, {"u_2", "c_1"}});
        FAIL("expected BidegreeMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BidegreeMismatch);
    }
    try {
        hom_define(bo, bu, std::map<std::string, std::string>{{"u_9", "0"}});
        FAIL("expected UnknownGenerator");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownGenerator);
    }
}

TEST_CASE("comparison map images")
{
    auto c2 = comp_map(real(), 2, 12);
    CHECK(c2.image("u_1").is_zero());
    CHECK(c2.image("u_2").str() == "c_1");
    CHECK(c2.image("u_3").str() == "d_1");
    CHECK(c2.image("u_4").str() == "c_2");
    auto c1 = comp_map(real(), 1, 12);
    CHECK(c1.image("u_1").is_zero());
    CHECK(c1.image("u_2").str() == "c_1");
    CHECK(c1.image("v_3").str() == "d_1");
    auto c3 = comp_map(real(), 3, 14);
    CHECK(c3.image("u_5").is_zero());
    CHECK(c3.image("v_7").str() == "d_3");
}

TEST_CASE("comparison map is a well-defined epimorphism")
{
    for (const auto* m : {&real(), &fq()})
        for (int n = 1; n <= 3; ++n) {
            auto h = comp_map(*m, n, 12);
            auto r = hom_verify(h, {6, 6});
            CHECK(r.well_defined);
            CHECK(r.surjective);
        }
}

TEST_CASE("corrupted images are caught")
{
    auto src = build_BOpn(real(), 1, 12);
    auto tgt = build_BUn(real(), 1, 12);
    auto h = hom_define(src, tgt, std::map<std::string, std::string>{{"u_1", "0"}, {"u_2", "c_1"}, {"v_3", "0"}});
    auto r = hom_verify(h, {4, 4});
    CHECK_FALSE(r.well_defined);
    REQUIRE(r.failing_relations.size() == 1);
    CHECK(r.failing_relations[0].first == "tau*v_3 + rho*u_2");
    CHECK(r.failing_relations[0].second == "rho*c_1");
    CHECK_FALSE(h.well_defined);
}

TEST_CASE("kernel of the comparison map")
{
    for (const auto* m : {&real(), &fq()})
        for (int n = 1; n <= 3; ++n) {
            auto h = comp_map(*m, n, 12);
            auto ideal = comp_kernel_ideal(*m, h.source, n);
            auto r = kernel_match(h, ideal, {6, 6});
            CHECK(r.match());
        }
    auto h = comp_map(real(), 2, 12);
    auto ideal = comp_kernel_ideal(real(), h.source, 2);
    CHECK(ideal.gens.size() == 2);
    CHECK(ideal.gens[0].str() == "u_1");
    CHECK(ideal.gens[1].str() == "tau*u_3 + rho*u_2");
    auto f = comp_map(fq(), 2, 12);
    auto fi = comp_kernel_ideal(fq(), f.source, 2);
    CHECK(fi.gens.size() == 3);
    CHECK(fi.gens[2].str() == "s*u_3");

    IdealGens bad{{h.source.gen("u_2")}, 12};
    auto r = kernel_match(h, bad, {6, 6});
    CHECK_FALSE(r.match());
    CHECK_FALSE(r.generators_vanish);
    CHECK(r.nonvanishing == std::vector<std::string>{"u_2"});
}

TEST_CASE("kernel ideal for n = 3")
{
    auto h = comp_map(real(), 3, 14);
    auto ideal = comp_kernel_ideal(real(), h.source, 3);
    std::vector<std::string> names;
    for (const auto& g : ideal.gens)
        names.push_back(g.str());
    CHECK(names == std::vector<std::string>{"u_1", "tau*u_3 + rho*u_2", "u_5", "u_2*v_7 + u_3*u_6"});
}

TEST_CASE("twist isomorphism")
{
    for (int n = 1; n <= 2; ++n) {
        auto t = twist_iso(real(), n, 12);
        auto r = hom_verify(t, {6, 6});
        CHECK(r.well_defined);
        CHECK(r.surjective);
        CHECK(r.injective);
        auto twice = compose(t, t);
        for (std::size_t i = 0; i < twice.images.size(); ++i)
            CHECK(twice.images[i] == t.source.normal_form({t.source.gen_monomial(i)}));
    }
    auto t1 = twist_iso(real(), 1, 12);
    CHECK(t1.image("u_1").str() == "u_1 + mu");
    CHECK(t1.image("u_2").str() == "u_2");
    auto t2 = twist_iso(real(), 2, 12);
    CHECK(t2.image("u_3").str() == "u_3 + mu*u_2");
}

TEST_CASE("composition preserves well-definedness")
{
    auto c = comp_map(fq(), 2, 12);
    auto bo = c.source;
    std::map<std::string, std::string> swap{{"u_1", "u_1"}, {"u_2", "u_2 + u_1^2*tau"}, {"u_3", "u_3"}, {"u_4", "u_4"}};
    auto f = hom_define(bo, bo, swap);
    CHECK(hom_verify(f, {5, 5}).well_defined);
    auto g = compose(c, f);
    CHECK(hom_verify(g, {5, 5}).well_defined);
    CHECK(g.image("u_2").str() == "c_1");
}

TEST_CASE("Npow maps into X_alpha by mu_i -> mu^i")
{
    auto np = build_Npow(real(), 3, 12);
    auto x = build_Xalpha(real(), 12);
    auto h = hom_define(np, x, std::map<std::string, std::string>{{"mu_1", "mu"}, {"mu_2", "mu^2"}, {"mu_3", "mu^3"}});
    auto r = hom_verify(h, {5, 5});
    CHECK(r.well_defined);
    CHECK(r.injective);
}

TEST_CASE("specializing classes")
{
    auto bu = build_BUn(real(), 3, 14);
    auto x = build_Xalpha(real(), 14);
    auto zero = specialize_classes(bu, {}, x);
    CHECK(zero.well_defined);
    CHECK(zero.split_compatible);
    CHECK(zero.split_classes.size() == 2);

    auto bu1 = build_BUn(real(), 1, 12);
    auto bad = specialize_classes(bu1, {{"c_1", "rho*mu"}, {"d_1", "0"}}, build_Xalpha(real(), 12));
    CHECK_FALSE(bad.well_defined);
    REQUIRE(bad.failing.size() == 1);
    CHECK(bad.failing[0] == "tau*d_1 + rho*c_1");
    CHECK_FALSE(bad.split_compatible);

    auto good = specialize_classes(bu1, {{"c_1", "rho*mu"}, {"d_1", "rho*mu^2"}}, build_Xalpha(real(), 12));
    CHECK(good.well_defined);
    CHECK_FALSE(good.split_compatible);
}

TEST_CASE("odd-dimensional relations in X_alpha")
{
    for (int n : {1, 3}) {
        auto r = odd_form_relations(real(), n, 14);
        CHECK(r.holds);
    }
    auto r = odd_form_relations(fq(), 1, 10);
    CHECK(r.holds);
    CHECK(r.images[0].second == "mu");
    CHECK_THROWS_AS(odd_form_relations(real(), 2, 10), Error);
}

TEST_CASE("map descriptors")
{
    auto j = nlohmann::json::parse(
        R"({"source": "BOp:1", "target": "BU:1", "images": {"u_1": "0", "u_2": "c_1", "v_3": "d_1"}})");
    auto h = hom_from_json(real(), j, 12);
    CHECK(hom_verify(h, {4, 4}).well_defined);
    CHECK_THROWS_AS(hom_from_json(real(), nlohmann::json::parse(R"({"source": "H"})"), 8), Error);
}

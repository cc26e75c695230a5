#include "subtle/steenrod.hpp"

#include <sstream>

#include "subtle/error.hpp"
#include "subtle/gf2.hpp"

namespace subtle {

std::string_view to_string(Sq1Source s)
{
    switch (s) {
    case Sq1Source::default_rule: return "default";
    case Sq1Source::override_value: return "override";
    case Sq1Source::solved: return "solved";
    }
    return "?";
}

const Element& Derivation::value(std::string_view gen) const
{
    auto i = presentation.index_of(gen);
    if (!i)
        throw Error(ErrorKind::UnknownGenerator, "'" + std::string(gen) + "' not in " + presentation.label());
    return values[*i];
}

namespace {

/// d(m)/d(g_i) over F_2, or nothing when the exponent is even.
std::optional<Monomial> partial(const Presentation& p, const Monomial& m, std::size_t i)
{
    if (m.exp[i] % 2 == 0)
        return std::nullopt;
    return quotient(m, p.gen_monomial(i));
}

std::optional<int> index_suffix(const std::string& name, const std::string& prefix)
{
    if (name.rfind(prefix, 0) != 0)
        return std::nullopt;
    try {
        std::size_t used = 0;
        const int v = std::stoi(name.substr(prefix.size()), &used);
        if (used + prefix.size() != name.size())
            return std::nullopt;
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

std::optional<std::string> default_value(const FieldModel& model, const Presentation& p, const GenSpec& g)
{
    if (g.origin == GenOrigin::milnor)
        return "0";
    if (g.origin == GenOrigin::tau) {
        if (!model.minus_one())
            throw Error(ErrorKind::MissingRhoDesignation, "model '" + model.name() + "' does not designate {-1}");
        return model.minus_one()->is_zero() ? "0" : "(" + model.minus_one()->str() + ")";
    }
    if (g.name == "mu" && g.origin == GenOrigin::cls)
        return "mu^2";
    if (auto i = index_suffix(g.name, "u_")) {
        if (*i % 2 == 1)
            return "u_1*" + g.name;
        std::string next = "0";
        const auto odd = std::to_string(*i + 1);
        if (p.index_of("u_" + odd))
            next = "u_" + odd;
        else if (p.index_of("v_" + odd))
            next = "v_" + odd;
        return next + " + u_1*" + g.name;
    }
    return std::nullopt;
}

// Leibniz expansion of a polynomial given raw values for every generator.
Polynomial expand(const Presentation& p, const std::vector<Polynomial>& vals, const Polynomial& x)
{
    std::vector<Monomial> terms;
    for (const auto& m : x)
        for (std::size_t i = 0; i < m.exp.size(); ++i)
            if (auto q = partial(p, m, i))
                for (const auto& t : multiply(*q, vals[i]))
                    terms.push_back(t);
    return canonicalize(std::move(terms));
}

}  // namespace

Derivation sq1_define(const FieldModel& model, const Presentation& p, const std::map<std::string, std::string>& overrides)
{
    for (const auto& [name, _] : overrides)
        if (!p.index_of(name))
            throw Error(ErrorKind::UnknownGenerator, "'" + name + "' not in " + p.label());
    Derivation der{p, {}, {}};
    const auto& gens = p.generators();
    std::vector<std::size_t> unknown;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        std::optional<std::string> text;
        Sq1Source src = Sq1Source::default_rule;
        if (auto it = overrides.find(g.name); it != overrides.end()) {
            text = it->second;
            src = Sq1Source::override_value;
        } else {
            text = default_value(model, p, g);
        }
        if (!text) {
            unknown.push_back(i);
            der.values.push_back(p.zero());
            der.sources.push_back(Sq1Source::solved);
            continue;
        }
        const Bidegree want = g.deg + sq1_shift;
        Element v = want.total() <= p.bound() ? p.parse(*text) : p.zero();
        if (!v.is_zero() && v.bidegree() != want)
            throw Error(ErrorKind::BidegreeMismatch, "Sq1 " + g.name + " must lie in " + want.str());
        der.values.push_back(std::move(v));
        der.sources.push_back(src);
    }
    if (unknown.empty())
        return der;

    // unknown coefficient (k, j): Sq1 of generator unknown[k] contains basis monomial j
    struct Var {
        std::size_t gen;
        Monomial mono;
    };
    std::vector<Var> vars;
    std::vector<std::size_t> first_var(unknown.size() + 1, 0);
    for (std::size_t k = 0; k < unknown.size(); ++k) {
        first_var[k] = vars.size();
        const Bidegree want = gens[unknown[k]].deg + sq1_shift;
        if (want.total() <= p.bound())
            for (auto& m : p.standard_monomials(want))
                vars.push_back({unknown[k], std::move(m)});
    }
    first_var[unknown.size()] = vars.size();

    std::vector<Polynomial> known(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        known[i] = der.values[i].polynomial();

    // one block of equations per relation: coordinates of Sq1(r) in its cell
    std::vector<gf2::BitVector> var_rows(vars.size());
    gf2::BitVector rhs;
    std::size_t offset = 0;
    std::vector<std::pair<std::size_t, std::vector<Monomial>>> blocks;
    for (const auto& r : p.relations()) {
        const Bidegree cell = r.front().deg + sq1_shift;
        if (cell.total() > p.bound())
            continue;
        blocks.emplace_back(offset, p.standard_monomials(cell));
        offset += blocks.back().second.size();
    }
    for (auto& row : var_rows)
        row = gf2::BitVector(offset);
    rhs = gf2::BitVector(offset);
    std::size_t b = 0;
    for (const auto& r : p.relations()) {
        const Bidegree cell = r.front().deg + sq1_shift;
        if (cell.total() > p.bound())
            continue;
        const auto& [base, basis] = blocks[b++];
        for (auto c : coordinates(p.normal_form(expand(p, known, r)).polynomial(), basis))
            rhs.flip(base + c);
        for (std::size_t v = 0; v < vars.size(); ++v) {
            std::vector<Monomial> terms;
            for (const auto& m : r)
                if (auto q = partial(p, m, vars[v].gen))
                    terms.push_back(*q * vars[v].mono);
            for (auto c : coordinates(p.normal_form(canonicalize(std::move(terms))).polynomial(), basis))
                var_rows[v].flip(base + c);
        }
    }
    gf2::Matrix m(0, offset);
    for (auto& row : var_rows)
        m.push_row(row);
    const auto sol = gf2::solve_left(m, rhs);
    der.consistent = sol.particular.has_value();
    // solution space dimension per generator: kernel vectors projected onto its variables
    for (std::size_t k = 0; k < unknown.size(); ++k) {
        gf2::Echelon proj;
        for (const auto& kv : sol.kernel) {
            gf2::BitVector local(first_var[k + 1] - first_var[k]);
            for (std::size_t v = first_var[k]; v < first_var[k + 1]; ++v)
                if (kv.get(v))
                    local.set(v - first_var[k]);
            if (!local.none())
                proj.insert(std::move(local));
        }
        der.solved.push_back({gens[unknown[k]].name, proj.rank()});
        if (!sol.particular)
            continue;
        std::vector<Monomial> terms;
        for (std::size_t v = first_var[k]; v < first_var[k + 1]; ++v)
            if (sol.particular->get(v))
                terms.push_back(vars[v].mono);
        der.values[unknown[k]] = p.normal_form(canonicalize(std::move(terms)));
    }
    return der;
}

Element sq1_apply(const Derivation& der, const Polynomial& x)
{
    const auto& p = der.presentation;
    std::vector<Polynomial> vals;
    vals.reserve(der.values.size());
    for (const auto& v : der.values)
        vals.push_back(v.polynomial());
    for (const auto& m : x)
        if ((m.deg + sq1_shift).total() > p.bound())
            throw Error(ErrorKind::ExceedsBound, "Sq1 of a term at " + m.deg.str() + " leaves the bound of " +
                                                     p.label());
    return p.normal_form(expand(p, vals, x));
}

Element sq1_apply(const Derivation& der, const Element& e)
{
    return sq1_apply(der, der.presentation.import(e));
}

nlohmann::json Sq1Report::to_json() const
{
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& [r, img] : failing_relations)
        fails.push_back({{"relation", r}, {"image", img}});
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& [g, v] : values)
        vals.push_back({{"generator", g}, {"value", v}});
    nlohmann::json sol = nlohmann::json::array();
    for (const auto& s : solved)
        sol.push_back({{"generator", s.name}, {"solution_dim", s.solution_dim}});
    return {{"box", {box.w, box.d}},
            {"ok", ok()},
            {"consistent", consistent},
            {"descends", descends},
            {"failing_relations", fails},
            {"square_zero", square_zero},
            {"square_zero_failures", square_zero_failures},
            {"leibniz", leibniz},
            {"leibniz_failures", leibniz_failures},
            {"monomials_checked", monomials_checked},
            {"pairs_checked", pairs_checked},
            {"values", vals},
            {"solved", sol}};
}

std::string Sq1Report::to_text() const
{
    std::ostringstream os;
    os << "box: (" << box.w << ")[" << box.d << "]\n";
    for (const auto& [g, v] : values)
        os << "Sq1 " << g << " = " << v << "\n";
    for (const auto& s : solved)
        os << "solved " << s.name << ": solution space of dimension " << s.solution_dim << "\n";
    os << "consistent: " << (consistent ? "true" : "false") << "\n";
    os << "descends: " << (descends ? "true" : "false") << "\n";
    for (const auto& [r, img] : failing_relations)
        os << "  Sq1(" << r << ") = " << img << "\n";
    os << "square_zero: " << (square_zero ? "true" : "false") << " (" << monomials_checked << " monomials)\n";
    for (const auto& f : square_zero_failures)
        os << "  " << f << "\n";
    os << "leibniz: " << (leibniz ? "true" : "false") << " (" << pairs_checked << " pairs)\n";
    for (const auto& f : leibniz_failures)
        os << "  " << f << "\n";
    return os.str();
}

Sq1Report sq1_check(Derivation& der, Bidegree box)
{
    const auto& p = der.presentation;
    if (box.total() + 2 > p.bound())
        throw Error(ErrorKind::ExceedsBound, "Sq1 check on " + box.str() + " needs bound " +
                                                 std::to_string(box.total() + 2));
    Sq1Report r;
    r.box = box;
    r.consistent = der.consistent;
    r.solved = der.solved;
    for (std::size_t i = 0; i < p.generators().size(); ++i)
        r.values.emplace_back(p.generators()[i].name, der.values[i].str());

    for (const auto& rel : p.relations()) {
        if ((rel.front().deg + sq1_shift).total() > p.bound())
            continue;
        const auto img = sq1_apply(der, rel);
        if (!img.is_zero()) {
            r.descends = false;
            r.failing_relations.emplace_back(p.format(rel), img.str());
        }
    }
    auto square = [&](const Polynomial& x, const std::string& what) {
        const auto once = sq1_apply(der, x);
        const auto twice = sq1_apply(der, once);
        if (!twice.is_zero()) {
            r.square_zero = false;
            r.square_zero_failures.push_back("Sq1 Sq1 " + what + " = " + twice.str());
        }
    };
    for (std::size_t i = 0; i < p.generators().size(); ++i)
        if ((p.generators()[i].deg + sq1_shift + sq1_shift).total() <= p.bound())
            square({p.gen_monomial(i)}, p.generators()[i].name);

    const auto basis = p.standard_basis(box);
    std::vector<Monomial> flat;
    for (const auto& [b, v] : basis)
        for (const auto& m : v)
            flat.push_back(m);
    r.monomials_checked = flat.size();
    for (const auto& m : flat)
        square({m}, p.format(m));

    std::vector<Element> sq(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i)
        sq[i] = sq1_apply(der, Polynomial{flat[i]});
    for (std::size_t i = 0; i < flat.size(); ++i)
        for (std::size_t j = i; j < flat.size(); ++j) {
            const Bidegree b = flat[i].deg + flat[j].deg;
            if (!b.within(box) || p.module_generator_count(flat[i]) + p.module_generator_count(flat[j]) > 1)
                continue;
            ++r.pairs_checked;
            const auto a = p.normal_form({flat[i]}), c = p.normal_form({flat[j]});
            const auto product = p.normal_form({flat[i] * flat[j]});
            const auto lhs = sq1_apply(der, product);
            const auto rhs = sq[i] * c + a * sq[j];
            if (!(lhs == rhs)) {
                r.leibniz = false;
                r.leibniz_failures.push_back(p.format(flat[i]) + " * " + p.format(flat[j]));
            }
        }
    der.verified_box = box;
    return r;
}

}  // namespace subtle

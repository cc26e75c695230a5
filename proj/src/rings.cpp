#include "subtle/rings.hpp"

#include <charconv>
#include <functional>

#include "subtle/error.hpp"

namespace subtle {

namespace {

constexpr int unbounded = 1 << 20;

int parse_int(std::string_view s, std::string_view whole)
{
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorKind::ParseError, "bad integer in block id '" + std::string(whole) + "'");
    if (v < 0)
        throw Error(ErrorKind::OutOfRange, "negative parameter in block id '" + std::string(whole) + "'");
    return v;
}

std::vector<GenSpec> base_gens(const FieldModel& model)
{
    auto gens = model.km().generators();
    gens.push_back({"tau", {1, 0}, GenOrigin::tau});
    return gens;
}

std::vector<std::string> base_relations(const FieldModel& model)
{
    std::vector<std::string> rels;
    for (const auto& r : model.km().relations())
        rels.push_back(model.km().format(r));
    return rels;
}

// Relations beyond the bound cannot affect any certified cell, so they are
// dropped rather than rejected.
Presentation assemble(const std::string& label, const std::vector<GenSpec>& gens, const std::vector<std::string>& rels,
                      int bound, Shape shape = Shape::ring)
{
    const auto free = Presentation::create(label, gens, {}, unbounded, shape);
    std::vector<Polynomial> kept;
    for (const auto& s : rels) {
        auto p = free.parse_raw(s);
        if (p.empty())
            continue;
        if (!is_homogeneous(p))
            throw Error(ErrorKind::NonHomogeneousRelation, "relation " + s + " in " + label);
        if (p.front().deg.total() <= bound)
            kept.push_back(std::move(p));
    }
    return Presentation::from_polynomials(label, free.generators(), std::move(kept), bound, shape);
}

/// Strings "(a)*x" for the Ann({alpha}) generators a that fit under the bound.
std::vector<std::string> ann_times(const FieldModel& model, const std::string& x, Bidegree deg_x, int bound)
{
    const int room = (bound - deg_x.total()) / 2;
    std::vector<std::string> out;
    if (room < 0)
        return out;
    const int degree = std::min(room, model.max_degree() - 1);
    for (const auto& a : model.ann_alpha(degree).gens)
        out.push_back("(" + a.str() + ")*" + x);
    return out;
}

std::string alpha_str(const FieldModel& model) { return "(" + model.alpha().str() + ")"; }

Bidegree u_deg(int i) { return {i / 2, i}; }

}  // namespace

std::string u_name(int i) { return "u_" + std::to_string(i); }
std::string c_name(int i) { return "c_" + std::to_string(i); }
std::string d_name(int j) { return "d_" + std::to_string(j); }
std::string v_name(int i) { return "v_" + std::to_string(i); }
std::string mu_name(int i) { return "mu_" + std::to_string(i); }

BlockId BlockId::parse(std::string_view text)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos)
            break;
        start = colon + 1;
    }
    const auto head = parts[0];
    auto arity = [&](std::size_t k) {
        if (parts.size() != k + 1)
            throw Error(ErrorKind::ParseError, "block id '" + std::string(text) + "' expects " + std::to_string(k) +
                                                   " parameter(s)");
    };
    BlockId id;
    using K = Kind;
    static const std::vector<std::pair<std::string_view, K>> nullary{
        {"H", K::H}, {"Mtilde", K::Mtilde}, {"nbar", K::nbar}, {"Xalpha", K::Xalpha}, {"Xtilde", K::Xtilde}};
    static const std::vector<std::pair<std::string_view, K>> unary{
        {"BO", K::BO}, {"BU", K::BU}, {"BOp", K::BOp}, {"BOh", K::BOh}, {"Npow", K::Npow}, {"XBU", K::XBU}};
    for (auto [name, kind] : nullary)
        if (head == name) {
            arity(0);
            id.kind = kind;
            return id;
        }
    for (auto [name, kind] : unary)
        if (head == name) {
            arity(1);
            id.kind = kind;
            const int v = parse_int(parts[1], text);
            (kind == K::Npow ? id.m : id.n) = v;
            return id;
        }
    if (head == "NpowBU") {
        arity(2);
        id.kind = K::NpowBU;
        id.m = parse_int(parts[1], text);
        id.n = parse_int(parts[2], text);
        return id;
    }
    throw Error(ErrorKind::ParseError, "unknown block id '" + std::string(text) + "'");
}

std::string BlockId::str() const
{
    const auto n_s = std::to_string(n), m_s = std::to_string(m);
    switch (kind) {
    case Kind::H: return "H";
    case Kind::BO: return "BO:" + n_s;
    case Kind::BU: return "BU:" + n_s;
    case Kind::BOp: return "BOp:" + n_s;
    case Kind::BOh: return "BOh:" + n_s;
    case Kind::Npow: return "Npow:" + m_s;
    case Kind::Mtilde: return "Mtilde";
    case Kind::nbar: return "nbar";
    case Kind::Xalpha: return "Xalpha";
    case Kind::Xtilde: return "Xtilde";
    case Kind::XBU: return "XBU:" + n_s;
    case Kind::NpowBU: return "NpowBU:" + m_s + ":" + n_s;
    }
    return "?";
}

Presentation build_H(const FieldModel& model, int bound)
{
    return assemble("H", base_gens(model), base_relations(model), bound);
}

Presentation build_BO(const FieldModel& model, int n, int bound)
{
    if (n < 0)
        throw Error(ErrorKind::OutOfRange, "BO_n needs n >= 0");
    auto gens = base_gens(model);
    for (int i = 1; i <= n; ++i)
        gens.push_back({u_name(i), u_deg(i), GenOrigin::cls});
    return assemble("H(BO_" + std::to_string(n) + ")", gens, base_relations(model), bound);
}

Presentation build_BUn(const FieldModel& model, int n, int bound)
{
    if (n < 0)
        throw Error(ErrorKind::OutOfRange, "BU_n needs n >= 0");
    auto gens = base_gens(model);
    auto rels = base_relations(model);
    for (int i = 1; i <= n; ++i)
        gens.push_back({c_name(i), {i, 2 * i}, GenOrigin::cls});
    for (int j = 1; j <= n; j += 2)
        gens.push_back({d_name(j), {j, 2 * j + 1}, GenOrigin::cls});
    if (n >= 1) {
        const auto a = alpha_str(model);
        for (int j = 1; j <= n; j += 2) {
            rels.push_back("tau*" + d_name(j) + " + " + a + "*" + c_name(j));
            for (auto& r : ann_times(model, d_name(j), {j, 2 * j + 1}, bound))
                rels.push_back(std::move(r));
            for (int jp = j + 2; jp <= n; jp += 2)
                rels.push_back(c_name(jp) + "*" + d_name(j) + " + " + c_name(j) + "*" + d_name(jp));
        }
    }
    return assemble("H(BU_" + std::to_string(n) + ")", gens, rels, bound);
}

Presentation build_BOpn(const FieldModel& model, int n, int bound)
{
    if (n <= 0)
        throw Error(ErrorKind::OutOfRange, "BO(p_n) is only defined here for n >= 1");
    auto gens = base_gens(model);
    auto rels = base_relations(model);
    for (int i = 1; i <= 2 * n; ++i)
        gens.push_back({u_name(i), u_deg(i), GenOrigin::cls});
    const auto v = v_name(2 * n + 1);
    const Bidegree vdeg{n, 2 * n + 1};
    gens.push_back({v, vdeg, GenOrigin::cls});
    rels.push_back("tau*" + v + " + " + alpha_str(model) + "*" + u_name(2 * n));
    for (auto& r : ann_times(model, v, vdeg, bound))
        rels.push_back(std::move(r));
    return assemble("H(BO(p_" + std::to_string(n) + "))", gens, rels, bound);
}

Presentation build_BOhtilde(const FieldModel& model, int n, int bound)
{
    if (n < 0)
        throw Error(ErrorKind::OutOfRange, "BO(h_n) needs n >= 0");
    if (n % 2 == 1)
        return build_BOpn(model, n, bound);
    auto gens = base_gens(model);
    for (int i = 1; i <= 2 * n; ++i)
        gens.push_back({u_name(i), u_deg(i), GenOrigin::cls});
    return assemble("H(BO(h_" + std::to_string(n) + "))", gens, base_relations(model), bound);
}

Presentation build_Npow(const FieldModel& model, int m, int bound)
{
    if (m < 0)
        throw Error(ErrorKind::OutOfRange, "Npow needs m >= 0");
    if (m == 0)
        return build_H(model, bound);
    auto gens = base_gens(model);
    auto rels = base_relations(model);
    const auto a = alpha_str(model);
    for (int i = 1; i <= m && i <= bound; ++i) {
        gens.push_back({mu_name(i), {0, i}, GenOrigin::module_generator});
        rels.push_back("tau*" + mu_name(i) + " + " + a + (i == 1 ? "" : "*" + mu_name(i - 1)));
        for (auto& r : ann_times(model, mu_name(i), {0, i}, bound))
            rels.push_back(std::move(r));
    }
    return assemble("H(N^" + std::to_string(m) + ")", gens, rels, bound, Shape::module_with_unit);
}

Presentation build_Mtilde(const FieldModel& model, int bound)
{
    auto gens = base_gens(model);
    auto rels = base_relations(model);
    gens.push_back({"mu", {0, 1}, GenOrigin::module_generator});
    rels.push_back("tau*mu");
    for (auto& r : ann_times(model, "mu", {0, 1}, bound))
        rels.push_back(std::move(r));
    return assemble("H(Mtilde)", gens, rels, bound, Shape::module_without_unit);
}

Presentation build_Xalpha(const FieldModel& model, int bound, const std::vector<GenSpec>& extra)
{
    auto gens = base_gens(model);
    auto rels = base_relations(model);
    gens.push_back({"mu", {0, 1}, GenOrigin::cls});
    for (const auto& g : extra)
        gens.push_back(g);
    rels.push_back("tau*mu + " + alpha_str(model));
    for (auto& r : ann_times(model, "mu", {0, 1}, bound))
        rels.push_back(std::move(r));
    std::string label = "H(X_alpha)";
    if (!extra.empty()) {
        label += "[";
        for (std::size_t i = 0; i < extra.size(); ++i)
            label += (i ? "," : "") + extra[i].name;
        label += "]";
    }
    return assemble(label, gens, rels, bound);
}

Presentation build_Xtilde(const FieldModel& model, int bound)
{
    auto gens = base_gens(model);
    auto rels = base_relations(model);
    const auto a = alpha_str(model);
    for (int i = 1; i <= bound; ++i) {
        gens.push_back({mu_name(i), {0, i}, GenOrigin::module_generator});
        rels.push_back(i == 1 ? "tau*" + mu_name(1) : "tau*" + mu_name(i) + " + " + a + "*" + mu_name(i - 1));
        for (auto& r : ann_times(model, mu_name(i), {0, i}, bound))
            rels.push_back(std::move(r));
    }
    return assemble("H(Xtilde)", gens, rels, bound, Shape::module_without_unit);
}

Presentation build_X_BU(const FieldModel& model, int n, int bound)
{
    std::vector<GenSpec> cs;
    for (int i = 1; i <= n; ++i)
        cs.push_back({c_name(i), {i, 2 * i}, GenOrigin::cls});
    return build_Xalpha(model, bound, cs);
}

Presentation build_block(const FieldModel& model, const BlockId& id, int bound)
{
    using K = BlockId::Kind;
    switch (id.kind) {
    case K::H: return build_H(model, bound);
    case K::BO: return build_BO(model, id.n, bound);
    case K::BU: return build_BUn(model, id.n, bound);
    case K::BOp: return build_BOpn(model, id.n, bound);
    case K::BOh: return build_BOhtilde(model, id.n, bound);
    case K::Npow: return build_Npow(model, id.m, bound);
    case K::Mtilde: return build_Mtilde(model, bound);
    case K::Xalpha: return build_Xalpha(model, bound);
    case K::Xtilde: return build_Xtilde(model, bound);
    case K::XBU: return build_X_BU(model, id.n, bound);
    case K::nbar:
    case K::NpowBU: break;
    }
    throw Error(ErrorKind::ShapeMismatch, id.str() + " is only available as a table");
}

PoincareTable nbar_table(const FieldModel& model, Bidegree box)
{
    const int bound = box.total();
    const auto h = build_H(model, bound);
    IdealGens i{{h.gen("tau")}, bound};
    for (const auto& a : model.ann_alpha(std::min(bound / 2, model.max_degree() - 1)).gens)
        i.gens.push_back(h.normal_form(h.import(a)));
    const auto full = h.table(box.w, box.d);
    const auto rest = quotient(h, i).table(box.w, box.d);
    PoincareTable t(box.w, box.d);
    for (int w = 0; w <= box.w; ++w)
        for (int d = 0; d <= box.d; ++d)
            t.set(w, d, full.at(w, d) - rest.at(w, d));
    return t;
}

PoincareTable npow_sum_table(const FieldModel& model, int m, Bidegree box)
{
    PoincareTable t = build_H(model, box.total()).table(box.w, box.d);
    if (m == 0)
        return t;
    // dimension of (K^M/Ann)_a
    std::vector<std::uint64_t> quot(static_cast<std::size_t>(box.w) + 1, 0);
    const auto ann = model.ann_alpha(std::min(box.w, model.max_degree() - 1));
    const auto q = quotient(model.km(), ann);
    for (int a = 0; a <= box.w; ++a)
        quot[static_cast<std::size_t>(a)] = q.standard_monomials({a, a}).size();
    for (int i = 1; i <= m; ++i)
        for (int a = 0; a <= box.w && a + i <= box.d; ++a)
            t.add(a, a + i, quot[static_cast<std::size_t>(a)]);
    return t;
}

PoincareTable npow_bu_table(const FieldModel& model, int m, int n, Bidegree box)
{
    const int bound = box.total();
    std::map<int, PoincareTable> npow;
    auto npow_table = [&](int k) -> const PoincareTable& {
        auto it = npow.find(k);
        if (it == npow.end())
            it = npow.emplace(k, build_Npow(model, k, bound).table(box.w, box.d)).first;
        return it->second;
    };
    PoincareTable out(box.w, box.d);
    std::function<void(int, Bidegree, int)> walk = [&](int l, Bidegree offset, int odd_sum) {
        if (!offset.within(box))
            return;
        if (l > n) {
            out += npow_table(m + odd_sum).shifted(offset);
            return;
        }
        const Bidegree step{l, 2 * l};
        int e = 0;
        for (Bidegree o = offset; o.within(box); o += step, ++e)
            walk(l + 1, o, odd_sum + (l % 2 == 1 ? e : 0));
    };
    walk(1, {0, 0}, 0);
    return out;
}

PoincareTable block_table(const FieldModel& model, const BlockId& id, Bidegree box)
{
    if (id.kind == BlockId::Kind::nbar)
        return nbar_table(model, box);
    if (id.kind == BlockId::Kind::NpowBU)
        return npow_bu_table(model, id.m, id.n, box);
    return build_block(model, id, box.total()).table(box.w, box.d);
}

nlohmann::json ColimitReport::to_json() const
{
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [b, i] : index)
        cells.push_back({b.w, b.d, i});
    return {{"box", {box.w, box.d}}, {"stable", stable}, {"stabilization_index", cells}, {"failures", failures}};
}

ColimitReport check_colimit(const FieldModel& model, Bidegree box)
{
    ColimitReport r;
    r.box = box;
    const int bound = box.total();
    const auto x = build_Xalpha(model, bound).table(box.w, box.d);
    const int top = box.d + 1;
    std::vector<PoincareTable> tables;
    for (int m = 0; m <= top; ++m)
        tables.push_back(build_Npow(model, m, bound).table(box.w, box.d));
    for (int w = 0; w <= box.w; ++w)
        for (int d = 0; d <= box.d; ++d) {
            int m0 = top + 1;
            for (int m = top; m >= 0 && tables[static_cast<std::size_t>(m)].at(w, d) == x.at(w, d); --m)
                m0 = m;
            r.index[{w, d}] = m0;
            if (m0 > box.d) {
                r.stable = false;
                r.failures.push_back("cell " + Bidegree{w, d}.str() + ": Npow(" + std::to_string(top) + ") has " +
                                     std::to_string(tables.back().at(w, d)) + ", Xalpha has " +
                                     std::to_string(x.at(w, d)));
            }
        }
    return r;
}

}  // namespace subtle

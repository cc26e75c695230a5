#include "subtle/maps.hpp"

#include <sstream>

#include "subtle/error.hpp"
#include "subtle/gf2.hpp"
#include "subtle/rings.hpp"

namespace subtle {

Element Homomorphism::apply(const Polynomial& p) const
{
    Element total = target.zero();
    for (const auto& m : p) {
        Element acc = target.normal_form({target.unit_monomial()});
        for (std::size_t i = 0; i < m.exp.size(); ++i)
            for (int e = 0; e < m.exp[i]; ++e)
                acc = target.normal_form(multiply(acc.polynomial(), images[i].polynomial()));
        total += acc;
    }
    return total;
}

const Element& Homomorphism::image(std::string_view gen) const
{
    auto i = source.index_of(gen);
    if (!i)
        throw Error(ErrorKind::UnknownGenerator, "'" + std::string(gen) + "' not in " + source.label());
    return images[*i];
}

namespace {

bool is_base(const GenSpec& g) { return g.origin == GenOrigin::milnor || g.origin == GenOrigin::tau; }

}  // namespace

Homomorphism hom_define(const Presentation& source, const Presentation& target,
                        const std::map<std::string, Element>& images, std::string label)
{
    Homomorphism h{.label = label.empty() ? source.label() + " -> " + target.label() : std::move(label),
                   .source = source,
                   .target = target};
    for (const auto& [name, _] : images)
        if (!source.index_of(name))
            throw Error(ErrorKind::UnknownGenerator, "'" + name + "' is not a generator of " + source.label());
    for (const auto& g : source.generators()) {
        Element img;
        if (auto it = images.find(g.name); it != images.end()) {
            if (!(it->second.presentation() == target))
                throw Error(ErrorKind::InvalidArgument, "image of " + g.name + " lives outside " + target.label());
            img = it->second;
        } else if (is_base(g) && target.index_of(g.name)) {
            img = target.gen(g.name);
        } else {
            throw Error(ErrorKind::InvalidArgument, "no image for generator " + g.name);
        }
        if (!img.is_zero() && img.bidegree() != g.deg)
            throw Error(ErrorKind::BidegreeMismatch, g.name + " has bidegree " + g.deg.str() + " but its image " +
                                                         img.str() + " does not");
        h.images.push_back(std::move(img));
    }
    return h;
}

Homomorphism hom_define(const Presentation& source, const Presentation& target,
                        const std::map<std::string, std::string>& images, std::string label)
{
    std::map<std::string, Element> parsed;
    for (const auto& [name, text] : images)
        parsed.emplace(name, target.normal_form(target.parse_raw(text)));
    return hom_define(source, target, parsed, std::move(label));
}

nlohmann::json HomReport::to_json() const
{
    nlohmann::json cells_j = nlohmann::json::array();
    for (const auto& c : cells)
        cells_j.push_back({c.cell.w, c.cell.d, c.rank, c.source_dim, c.target_dim});
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& [r, img] : failing_relations)
        fails.push_back({{"relation", r}, {"image", img}});
    return {{"map", label},
            {"box", {box.w, box.d}},
            {"well_defined", well_defined},
            {"failing_relations", fails},
            {"surjective", surjective},
            {"injective", injective},
            {"per_bidegree", cells_j}};
}

std::string HomReport::to_text() const
{
    std::ostringstream os;
    os << "map: " << label << "\n";
    os << "box: (" << box.w << ")[" << box.d << "]\n";
    os << "well_defined: " << (well_defined ? "true" : "false") << "\n";
    for (const auto& [r, img] : failing_relations)
        os << "  relation " << r << " maps to " << img << "\n";
    // only the count and the first offending cell of each kind
    auto summary = [&](const char* name, bool ok, auto bad) {
        os << name << ": " << (ok ? "true" : "false");
        std::size_t count = 0;
        const CellRank* first = nullptr;
        for (const auto& c : cells)
            if (bad(c) && count++ == 0)
                first = &c;
        if (first)
            os << " (" << count << (count == 1 ? " cell" : " cells") << ", first " << first->cell.str() << ": rank "
               << first->rank << " source " << first->source_dim << " target " << first->target_dim << ")";
        os << "\n";
    };
    summary("surjective", surjective, [](const CellRank& c) { return c.rank != c.target_dim; });
    summary("injective", injective, [](const CellRank& c) { return c.rank != c.source_dim; });
    return os.str();
}

HomReport hom_verify(Homomorphism& h, Bidegree box)
{
    HomReport r;
    r.label = h.label;
    r.box = box;
    for (const auto& rel : h.source.relations()) {
        if (!rel.front().deg.within(box))
            continue;
        const auto img = h.apply(rel);
        if (!img.is_zero()) {
            r.well_defined = false;
            r.failing_relations.emplace_back(h.source.format(rel), img.str());
        }
    }
    const auto src = h.source.standard_basis(box);
    const auto tgt = h.target.standard_basis(box);
    r.image_table = PoincareTable(box.w, box.d);
    static const std::vector<Monomial> none;
    for (int w = 0; w <= box.w; ++w)
        for (int d = 0; d <= box.d; ++d) {
            const Bidegree b{w, d};
            const auto& s = src.count(b) ? src.at(b) : none;
            const auto& t = tgt.count(b) ? tgt.at(b) : none;
            gf2::Matrix m(s.size(), t.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                for (auto c : coordinates(h.apply(Polynomial{s[i]}).polynomial(), t))
                    m.row(i).flip(c);
            const auto rk = s.empty() || t.empty() ? 0 : gf2::rank(m);
            r.cells.push_back({b, rk, s.size(), t.size()});
            r.image_table.set(w, d, rk);
            r.surjective &= rk == t.size();
            r.injective &= rk == s.size();
        }
    h.verified_box = box;
    h.well_defined = r.well_defined;
    h.surjective_on_box = r.well_defined && r.surjective;
    h.injective_on_box = r.well_defined && r.injective;
    return r;
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f)
{
    if (!(f.target == g.source))
        throw Error(ErrorKind::ShapeMismatch, "cannot compose " + g.label + " after " + f.label);
    Homomorphism h{.label = g.label + " o " + f.label, .source = f.source, .target = g.target};
    for (const auto& img : f.images)
        h.images.push_back(g.apply(img));
    return h;
}

Homomorphism comp_map(const FieldModel& model, int n, int bound)
{
    if (n < 1)
        throw Error(ErrorKind::OutOfRange, "comparison map needs n >= 1");
    const auto src = build_BOhtilde(model, n, bound);
    const auto tgt = build_BUn(model, n, bound);
    std::map<std::string, std::string> img;
    for (int i = 1; i <= n; ++i)
        img[u_name(2 * i)] = c_name(i);
    for (int l = 0; l < n; ++l)
        img[u_name(2 * l + 1)] = l % 2 == 0 ? "0" : d_name(l);
    if (n % 2 == 1)
        img[v_name(2 * n + 1)] = d_name(n);
    return hom_define(src, tgt, img, "comp:" + std::to_string(n));
}

IdealGens comp_kernel_ideal(const FieldModel& model, const Presentation& source, int n)
{
    auto name = [&](int k) -> std::optional<std::string> {
        if (n % 2 == 1 && k == 2 * n + 1)
            return v_name(k);
        if (k >= 1 && k <= 2 * n)
            return u_name(k);
        return std::nullopt;
    };
    const int top = (n - 1) / 2;
    const auto a = "(" + model.alpha().str() + ")";
    std::vector<std::string> gens;
    for (int j = 0; j <= top; ++j) {
        const auto u1 = name(4 * j + 1), u2 = name(4 * j + 2), u3 = name(4 * j + 3);
        if (u1)
            gens.push_back(*u1);
        for (int i = 0; i < j; ++i) {
            const auto x3 = name(4 * i + 3), x2 = name(4 * i + 2);
            if (u2 && u3 && x2 && x3)
                gens.push_back(*x3 + "*" + *u2 + " + " + *u3 + "*" + *x2);
        }
        if (u2 && u3) {
            gens.push_back("tau*" + *u3 + " + " + a + "*" + *u2);
            const Bidegree d3 = source.gen(*u3).bidegree().value_or(Bidegree{});
            const int room = (source.bound() - d3.total()) / 2;
            if (room >= 0)
                for (const auto& x : model.ann_alpha(std::min(room, model.max_degree() - 1)).gens)
                    gens.push_back("(" + x.str() + ")*" + *u3);
        }
    }
    IdealGens out;
    out.degree_bound = source.bound();
    for (const auto& g : gens) {
        const auto raw = source.parse_raw(g);
        if (raw.empty() || raw.front().deg.total() > source.bound())
            continue;
        auto e = source.normal_form(raw);
        if (!e.is_zero())
            out.gens.push_back(std::move(e));
    }
    return out;
}

nlohmann::json KernelReport::to_json() const
{
    return {{"box", {box.w, box.d}},
            {"match", match()},
            {"generators_vanish", generators_vanish},
            {"nonvanishing", nonvanishing},
            {"tables_match", tables_match},
            {"first_mismatch",
             first_mismatch ? nlohmann::json({first_mismatch->w, first_mismatch->d}) : nlohmann::json(nullptr)},
            {"quotient_table", quotient_table.to_json()},
            {"image_table", image_table.to_json()}};
}

std::string KernelReport::to_text() const
{
    std::ostringstream os;
    os << "box: (" << box.w << ")[" << box.d << "]\n";
    os << "kernel match: " << (match() ? "true" : "false") << "\n";
    for (const auto& g : nonvanishing)
        os << "  generator does not vanish: " << g << "\n";
    if (first_mismatch)
        os << "  first table mismatch at " << first_mismatch->str() << ": quotient "
           << quotient_table.at(*first_mismatch) << ", image " << image_table.at(*first_mismatch) << "\n";
    return os.str();
}

KernelReport kernel_match(Homomorphism& h, const IdealGens& ideal, Bidegree box)
{
    KernelReport r;
    r.box = box;
    for (const auto& g : ideal.gens)
        if (!h.apply(g).is_zero()) {
            r.generators_vanish = false;
            r.nonvanishing.push_back(g.str());
        }
    r.quotient_table = quotient(h.source, ideal).table(box.w, box.d);
    r.image_table = hom_verify(h, box).image_table;
    r.first_mismatch = first_difference(r.quotient_table, r.image_table);
    r.tables_match = !r.first_mismatch;
    return r;
}

Homomorphism twist_iso(const FieldModel& model, int n, int bound)
{
    if (n < 1)
        throw Error(ErrorKind::OutOfRange, "twist isomorphism needs n >= 1");
    std::vector<GenSpec> us;
    for (int i = 1; i <= 2 * n; ++i)
        us.push_back({u_name(i), {i / 2, i}, GenOrigin::cls});
    const auto x = build_Xalpha(model, bound, us);
    std::map<std::string, std::string> img{{"mu", "mu"}};
    for (int i = 1; i <= n; ++i) {
        img[u_name(2 * i)] = u_name(2 * i);
        img[u_name(2 * i - 1)] = u_name(2 * i - 1) + " + mu" + (i == 1 ? "" : "*" + u_name(2 * i - 2));
    }
    return hom_define(x, x, img, "pq:" + std::to_string(n));
}

nlohmann::json SpecializationReport::to_json() const
{
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& [r, img] : relations)
        rels.push_back({{"relation", r}, {"image", img}});
    nlohmann::json split = nlohmann::json::array();
    for (const auto& [c, z] : split_classes)
        split.push_back({{"class", c}, {"vanishes", z}});
    return {{"map", map.label},
            {"well_defined", well_defined},
            {"relations", rels},
            {"failing", failing},
            {"split_classes", split},
            {"split_compatible", split_compatible}};
}

SpecializationReport specialize_classes(const Presentation& ring, const std::map<std::string, std::string>& assignments,
                                        const Presentation& target)
{
    std::map<std::string, std::string> img = assignments;
    for (const auto& g : ring.generators())
        if (!is_base(g) && !img.count(g.name))
            img[g.name] = "0";
    SpecializationReport r{hom_define(ring, target, img, ring.label() + " at h"), {}, true, {}, {}, true};
    for (const auto& rel : ring.relations()) {
        const auto e = r.map.apply(rel);
        const auto name = ring.format(rel);
        r.relations.emplace_back(name, e.str());
        if (!e.is_zero()) {
            r.well_defined = false;
            r.failing.push_back(name);
        }
    }
    for (int k = 1; ring.index_of(c_name(k)); k *= 2) {
        const bool zero = r.map.image(c_name(k)).is_zero();
        r.split_classes.emplace_back(c_name(k), zero);
        r.split_compatible &= zero;
    }
    r.map.well_defined = r.well_defined;
    return r;
}

nlohmann::json OddFormReport::to_json() const
{
    nlohmann::json imgs = nlohmann::json::array();
    for (const auto& [c, e] : images)
        imgs.push_back({{"class", c}, {"image", e}});
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& [r, ok] : relations)
        rels.push_back({{"relation", r}, {"holds", ok}});
    return {{"n", n}, {"images", imgs}, {"relations", rels}, {"holds", holds}};
}

OddFormReport odd_form_relations(const FieldModel& model, int n, int bound)
{
    if (n < 1 || n % 2 == 0)
        throw Error(ErrorKind::OutOfRange, "odd-dimensional relations need odd n >= 1");
    const auto bo = build_BO(model, 2 * n, bound);
    auto twist = twist_iso(model, n, bound);
    const auto& xu = twist.source;
    std::map<std::string, std::string> ident;
    for (int i = 1; i <= 2 * n; ++i)
        ident[u_name(i)] = u_name(i);
    const auto into = hom_define(bo, xu, ident, "BO_2n -> X[u]");

    const auto xc = build_X_BU(model, n, bound);
    std::map<std::string, std::string> cmp{{"mu", "mu"}};
    for (int i = 1; i <= n; ++i)
        cmp[u_name(2 * i)] = c_name(i);
    for (int l = 0; l < n; ++l)
        cmp[u_name(2 * l + 1)] = l % 2 == 0 ? "0" : "mu*" + c_name(l);
    const auto down = hom_define(xu, xc, cmp, "X[u] -> X[c]");
    const auto total = compose(down, compose(twist, into));

    OddFormReport r;
    r.n = n;
    for (int i = 1; i <= 2 * n; ++i)
        r.images.emplace_back(u_name(i), total.image(u_name(i)).str());
    for (int j = 0; j <= (n - 1) / 2; ++j) {
        const int a = 4 * j + 1;
        const Element lhs = total.image(u_name(a));
        const Element rhs = j == 0 ? xc.gen("mu") : xc.gen("mu") * total.image(u_name(4 * j));
        const bool ok = lhs == rhs;
        r.relations.emplace_back(u_name(a) + " = mu*" + (j == 0 ? std::string("1") : u_name(4 * j)), ok);
        r.holds &= ok;
        if (j >= 1 && 4 * j - 1 <= 2 * n) {
            const bool zero = total.image(u_name(4 * j - 1)).is_zero();
            r.relations.emplace_back(u_name(4 * j - 1) + " = 0", zero);
            r.holds &= zero;
        }
    }
    return r;
}

Homomorphism hom_from_json(const FieldModel& model, const nlohmann::json& j, int bound)
{
    try {
        const auto src = build_block(model, BlockId::parse(j.at("source").get<std::string>()), bound);
        const auto tgt = build_block(model, BlockId::parse(j.at("target").get<std::string>()), bound);
        const auto images = j.at("images").get<std::map<std::string, std::string>>();
        return hom_define(src, tgt, images, j.value("label", std::string{}));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("map descriptor: ") + e.what());
    }
}

}  // namespace subtle

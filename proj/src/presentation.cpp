#include "subtle/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "subtle/error.hpp"
#include "subtle/gf2.hpp"

namespace subtle {

std::string_view to_string(GenOrigin origin)
{
    switch (origin) {
    case GenOrigin::milnor: return "milnor";
    case GenOrigin::tau: return "tau";
    case GenOrigin::cls: return "class";
    case GenOrigin::module_generator: return "module_generator";
    }
    return "?";
}

namespace detail {

struct PresentationData {
    std::string label;
    std::uint64_t id = 0;
    std::vector<GenSpec> gens;
    std::vector<Bidegree> degs;
    std::unordered_map<std::string, std::size_t> index;
    Shape shape = Shape::ring;
    int bound = 0;
    std::size_t module_begin = 0;
    std::vector<Polynomial> relations;
    std::vector<Polynomial> groebner;
    bool free_over_base = true;
};

}  // namespace detail

namespace {

std::atomic<std::uint64_t> next_id{1};

constexpr std::size_t max_pairs = 2'000'000;

int rank_of(GenOrigin o) { return static_cast<int>(o); }

Monomial make_unit(std::size_t n) { return Monomial{{0, 0}, std::vector<std::uint8_t>(n, 0)}; }

int modcount(const detail::PresentationData& d, const Monomial& m)
{
    int c = 0;
    for (std::size_t i = d.module_begin; i < m.exp.size(); ++i)
        c += m.exp[i];
    return c;
}

std::optional<std::size_t> module_slot(const detail::PresentationData& d, const Monomial& m)
{
    for (std::size_t i = d.module_begin; i < m.exp.size(); ++i)
        if (m.exp[i])
            return i;
    return std::nullopt;
}

Polynomial reduce(Polynomial p, const std::vector<Polynomial>& basis)
{
    Polynomial result;
    std::size_t pos = 0;
    while (pos < p.size()) {
        const Monomial& lt = p[pos];
        const Polynomial* hit = nullptr;
        for (const auto& g : basis)
            if (divides(g.front(), lt)) {
                hit = &g;
                break;
            }
        if (!hit) {
            result.push_back(lt);
            ++pos;
            continue;
        }
        Polynomial tail(p.begin() + static_cast<std::ptrdiff_t>(pos), p.end());
        p = add(tail, multiply(quotient(lt, hit->front()), *hit));
        pos = 0;
    }
    return result;
}

// Homogeneous Buchberger over F_2, processed by increasing total degree and
// truncated at `bound`. Module leading terms on different module generators
// never pair, and the product criterion discards coprime pairs.
std::vector<Polynomial> buchberger(const detail::PresentationData& d, const std::vector<Polynomial>& input)
{
    struct Pair {
        std::size_t i, j;
    };
    const int bound = d.bound;
    std::map<int, std::vector<Polynomial>> inputs;
    for (const auto& r : input)
        if (!r.empty())
            inputs[r.front().deg.total()].push_back(r);
    std::map<int, std::vector<Pair>> buckets;
    std::vector<Polynomial> g;
    std::size_t pair_count = 0;

    auto insert = [&](Polynomial h) {
        const std::size_t k = g.size();
        g.push_back(std::move(h));
        const Monomial& lk = g[k].front();
        const auto sk = module_slot(d, lk);
        for (std::size_t i = 0; i < k; ++i) {
            const Monomial& li = g[i].front();
            if (coprime(li, lk))
                continue;
            const auto si = module_slot(d, li);
            if (si && sk && *si != *sk)
                continue;
            const Monomial l = lcm(li, lk, d.degs);
            const int t = l.deg.total();
            if (t > bound)
                continue;
            if (++pair_count > max_pairs)
                throw Error(ErrorKind::ResourceLimit, "critical pair limit exceeded in " + d.label);
            buckets[t].push_back({i, k});
        }
    };

    // every pair lands strictly above the degrees already processed
    while (!inputs.empty() || !buckets.empty()) {
        int t = inputs.empty() ? buckets.begin()->first : inputs.begin()->first;
        if (!buckets.empty())
            t = std::min(t, buckets.begin()->first);
        if (auto it = inputs.find(t); it != inputs.end()) {
            for (auto& r : it->second) {
                auto h = reduce(std::move(r), g);
                if (!h.empty())
                    insert(std::move(h));
            }
            inputs.erase(it);
        }
        if (auto it = buckets.find(t); it != buckets.end()) {
            // pairs appended during this loop have degree t as well
            std::vector<Pair>& bucket = it->second;
            for (std::size_t q = 0; q < bucket.size(); ++q) {
                const Pair pr = bucket[q];
                const Monomial l = lcm(g[pr.i].front(), g[pr.j].front(), d.degs);
                Polynomial s = add(multiply(quotient(l, g[pr.i].front()), g[pr.i]),
                                   multiply(quotient(l, g[pr.j].front()), g[pr.j]));
                auto h = reduce(std::move(s), g);
                if (!h.empty())
                    insert(std::move(h));
            }
            buckets.erase(t);
        }
    }

    // minimal, then fully interreduced, sorted by leading term
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j || !divides(g[j].front(), g[i].front()))
                continue;
            // equal leading terms: keep the earliest
            redundant = !(g[j].front() == g[i].front()) || j < i;
        }
        if (!redundant)
            minimal.push_back(g[i]);
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const Polynomial& a, const Polynomial& b) { return compare(a.front(), b.front()) < 0; });
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        Polynomial tail(minimal[i].begin() + 1, minimal[i].end());
        std::vector<Polynomial> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        Polynomial r{minimal[i].front()};
        auto rt = reduce(std::move(tail), others);
        r.insert(r.end(), rt.begin(), rt.end());
        minimal[i] = std::move(r);
    }
    return minimal;
}

Bidegree degree_of(const std::vector<std::uint8_t>& exp, const std::vector<Bidegree>& degs)
{
    Bidegree b{};
    for (std::size_t i = 0; i < exp.size(); ++i)
        b += Bidegree{degs[i].w * exp[i], degs[i].d * exp[i]};
    return b;
}

// Recursive-descent parser for F_2 polynomial strings over named generators.
class Parser {
public:
    Parser(std::string_view text, const detail::PresentationData& d) : s_(text), d_(d) {}

    Polynomial run()
    {
        auto p = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw Error(ErrorKind::ParseError, why + " in \"" + std::string(s_) + "\"");
    }

    Polynomial expr()
    {
        Polynomial acc = term();
        while (eat('+') || eat('-'))
            acc = add(acc, term());
        return acc;
    }
    Polynomial term()
    {
        Polynomial acc = factor();
        while (eat('*'))
            acc = checked(multiply(acc, factor()));
        return acc;
    }
    Polynomial factor()
    {
        Polynomial base = atom();
        if (eat('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
            Polynomial r{make_unit(d_.gens.size())};
            for (int k = 0; k < e; ++k)
                r = checked(multiply(r, base));
            return r;
        }
        return base;
    }
    Polynomial atom()
    {
        skip();
        if (eat('(')) {
            auto p = expr();
            if (!eat(')'))
                fail("expected ')'");
            return p;
        }
        if (pos_ >= s_.size())
            fail("unexpected end");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            const auto digits = s_.substr(start, pos_ - start);
            const bool odd = (digits.back() - '0') % 2 == 1;
            return odd ? Polynomial{make_unit(d_.gens.size())} : Polynomial{};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name(s_.substr(start, pos_ - start));
            auto it = d_.index.find(name);
            if (it == d_.index.end())
                throw Error(ErrorKind::UnknownGenerator, "'" + name + "' in \"" + std::string(s_) + "\"");
            Monomial m = make_unit(d_.gens.size());
            m.exp[it->second] = 1;
            m.deg = d_.degs[it->second];
            return {m};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
    Polynomial checked(Polynomial p) const
    {
        for (const auto& m : p)
            if (modcount(d_, m) > 1)
                throw Error(ErrorKind::ParseError,
                            "product of two module generators in \"" + std::string(s_) + "\"");
        return p;
    }

    std::string_view s_;
    const detail::PresentationData& d_;
    std::size_t pos_ = 0;
};

void enumerate(const detail::PresentationData& d, std::size_t i, Monomial& cur, int mods, Bidegree box,
               bool prune, const std::function<void(const Monomial&)>& emit)
{
    if (i == d.gens.size()) {
        const bool ok = d.shape == Shape::module_without_unit ? mods == 1 : true;
        if (ok)
            emit(cur);
        return;
    }
    enumerate(d, i + 1, cur, mods, box, prune, emit);
    const bool is_mod = i >= d.module_begin;
    const Bidegree step = d.degs[i];
    const Bidegree saved = cur.deg;
    int e = 0;
    while (true) {
        if (is_mod && (e >= 1 || mods >= 1))
            break;
        ++e;
        cur.exp[i] = static_cast<std::uint8_t>(e);
        cur.deg += step;
        if (!cur.deg.within(box))
            break;
        if (prune) {
            bool hit = false;
            for (const auto& g : d.groebner)
                if (divides(g.front(), cur)) {
                    hit = true;
                    break;
                }
            if (hit)
                break;
        }
        enumerate(d, i + 1, cur, mods + (is_mod ? 1 : 0), box, prune, emit);
    }
    cur.exp[i] = 0;
    cur.deg = saved;
}

std::map<Bidegree, std::vector<Monomial>> collect(const detail::PresentationData& d, Bidegree box, bool prune)
{
    std::map<Bidegree, std::vector<Monomial>> out;
    if (!box.nonnegative())
        return out;
    Monomial cur = make_unit(d.gens.size());
    if (prune)
        for (const auto& g : d.groebner)
            if (divides(g.front(), cur))
                return out;
    enumerate(d, 0, cur, 0, box, prune, [&](const Monomial& m) { out[m.deg].push_back(m); });
    for (auto& [b, v] : out)
        std::sort(v.begin(), v.end(), [](const Monomial& x, const Monomial& y) { return compare(x, y) > 0; });
    return out;
}

std::shared_ptr<detail::PresentationData> blank(std::string label, std::vector<GenSpec> gens, int bound, Shape shape)
{
    auto d = std::make_shared<detail::PresentationData>();
    d->label = std::move(label);
    d->id = next_id.fetch_add(1);
    d->shape = shape;
    d->bound = bound;
    d->gens = std::move(gens);
    d->module_begin = d->gens.size();
    for (std::size_t i = 0; i < d->gens.size(); ++i) {
        const auto& g = d->gens[i];
        if (g.name.empty())
            throw Error(ErrorKind::NameClash, "empty generator name");
        if (!d->index.emplace(g.name, i).second)
            throw Error(ErrorKind::NameClash, "duplicate generator '" + g.name + "'");
        if (!g.deg.nonnegative() || g.deg.total() == 0)
            throw Error(ErrorKind::InvalidArgument, "generator '" + g.name + "' has bidegree " + g.deg.str());
        if (g.origin == GenOrigin::milnor && g.deg.w != g.deg.d)
            throw Error(ErrorKind::InvalidArgument, "Milnor generator '" + g.name + "' must have w = d");
        if (i > 0 && rank_of(d->gens[i - 1].origin) > rank_of(g.origin))
            throw Error(ErrorKind::InvalidArgument, "generators not in canonical order at '" + g.name + "'");
        if (g.origin == GenOrigin::module_generator) {
            if (shape == Shape::ring)
                throw Error(ErrorKind::InvalidArgument, "module generator '" + g.name + "' in a ring");
            d->module_begin = std::min(d->module_begin, i);
        }
        d->degs.push_back(g.deg);
    }
    return d;
}

void finish(detail::PresentationData& d, std::vector<Polynomial> relations)
{
    if (d.bound < 0)
        throw Error(ErrorKind::BoundTooSmall, "negative truncation bound");
    for (auto& r : relations) {
        if (r.empty())
            continue;
        if (!is_homogeneous(r))
            throw Error(ErrorKind::NonHomogeneousRelation, "relation has terms of bidegrees " +
                                                               r.front().deg.str() + " and " +
                                                               r.back().deg.str() + " in " + d.label);
        if (r.front().deg.total() > d.bound)
            throw Error(ErrorKind::BoundTooSmall, "relation of total degree " +
                                                      std::to_string(r.front().deg.total()) +
                                                      " exceeds bound " + std::to_string(d.bound));
        for (const auto& m : r) {
            if (modcount(d, m) > 1)
                throw Error(ErrorKind::InvalidArgument, "relation multiplies module generators");
            for (std::size_t i = 0; i < m.exp.size(); ++i)
                if (m.exp[i] && d.gens[i].origin != GenOrigin::milnor && d.gens[i].origin != GenOrigin::tau)
                    d.free_over_base = false;
        }
        d.relations.push_back(std::move(r));
    }
    d.groebner = buchberger(d, d.relations);
}

}  // namespace

// ---- Element ---------------------------------------------------------------

Presentation Element::presentation() const
{
    if (!owner_)
        throw Error(ErrorKind::InvalidArgument, "element has no owning presentation");
    return Presentation(owner_);
}

std::optional<Bidegree> Element::bidegree() const noexcept
{
    if (poly_.empty() || !is_homogeneous())
        return std::nullopt;
    return poly_.front().deg;
}

std::string Element::str() const { return owner_ ? presentation().format(poly_) : "0"; }

Element Element::operator+(const Element& o) const
{
    if (owner_ != o.owner_)
        throw Error(ErrorKind::InvalidArgument, "adding elements of different presentations");
    return Element(owner_, add(poly_, o.poly_));
}

Element Element::operator*(const Element& o) const
{
    if (owner_ != o.owner_)
        throw Error(ErrorKind::InvalidArgument, "multiplying elements of different presentations");
    return presentation().normal_form(multiply(poly_, o.poly_));
}

// ---- Presentation ---------------------------------------------------------

// with no relations every bound is certified
Presentation::Presentation() : data_(blank("F2", {}, 1 << 20, Shape::ring)) {}

Presentation Presentation::create(std::string label, std::vector<GenSpec> gens,
                                  const std::vector<std::string>& relations, int bound, Shape shape)
{
    std::stable_sort(gens.begin(), gens.end(),
                     [](const GenSpec& a, const GenSpec& b) { return rank_of(a.origin) < rank_of(b.origin); });
    auto d = blank(std::move(label), std::move(gens), bound, shape);
    std::vector<Polynomial> rels;
    for (const auto& r : relations)
        rels.push_back(Parser(r, *d).run());
    finish(*d, std::move(rels));
    return Presentation(std::move(d));
}

Presentation Presentation::from_polynomials(std::string label, std::vector<GenSpec> gens,
                                            std::vector<Polynomial> relations, int bound, Shape shape)
{
    auto d = blank(std::move(label), std::move(gens), bound, shape);
    for (const auto& r : relations)
        for (const auto& m : r)
            if (m.exp.size() != d->gens.size())
                throw Error(ErrorKind::InvalidArgument, "relation over a different generator list");
    finish(*d, std::move(relations));
    return Presentation(std::move(d));
}

const std::string& Presentation::label() const noexcept { return data_->label; }
std::uint64_t Presentation::id() const noexcept { return data_->id; }
const std::vector<GenSpec>& Presentation::generators() const noexcept { return data_->gens; }
std::span<const Bidegree> Presentation::gen_degrees() const noexcept { return data_->degs; }
Shape Presentation::shape() const noexcept { return data_->shape; }
int Presentation::bound() const noexcept { return data_->bound; }
const std::vector<Polynomial>& Presentation::relations() const noexcept { return data_->relations; }
const std::vector<Polynomial>& Presentation::groebner() const noexcept { return data_->groebner; }
bool Presentation::is_free_over_base() const noexcept { return data_->free_over_base && !is_module(); }

std::optional<std::size_t> Presentation::index_of(std::string_view name) const
{
    auto it = data_->index.find(std::string(name));
    if (it == data_->index.end())
        return std::nullopt;
    return it->second;
}

Monomial Presentation::unit_monomial() const { return make_unit(data_->gens.size()); }

Monomial Presentation::gen_monomial(std::size_t i) const
{
    Monomial m = unit_monomial();
    m.exp.at(i) = 1;
    m.deg = data_->degs[i];
    return m;
}

int Presentation::module_generator_count(const Monomial& m) const noexcept { return modcount(*data_, m); }

Polynomial Presentation::parse_raw(std::string_view text) const { return Parser(text, *data_).run(); }

void Presentation::check_bound(const Polynomial& p) const
{
    for (const auto& m : p) {
        if (m.exp.size() != data_->gens.size())
            throw Error(ErrorKind::InvalidArgument, "polynomial over a different generator list");
        if (m.deg.total() > data_->bound)
            throw Error(ErrorKind::ExceedsBound, "term of bidegree " + m.deg.str() + " exceeds bound " +
                                                     std::to_string(data_->bound) + " of " + data_->label);
        if (modcount(*data_, m) > 1)
            throw Error(ErrorKind::InvalidArgument, "term multiplies module generators in " + data_->label);
    }
}

Element Presentation::normal_form(const Polynomial& p) const
{
    check_bound(p);
    return Element(data_, reduce(p, data_->groebner));
}

Polynomial Presentation::import(const Polynomial& p, const Presentation& from) const
{
    std::vector<std::size_t> map(from.generators().size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        auto j = index_of(from.generators()[i].name);
        if (!j)
            throw Error(ErrorKind::UnknownGenerator, "'" + from.generators()[i].name + "' not in " + label());
        map[i] = *j;
    }
    std::vector<Monomial> terms;
    for (const auto& m : p) {
        Monomial t = unit_monomial();
        for (std::size_t i = 0; i < m.exp.size(); ++i)
            t.exp[map[i]] = static_cast<std::uint8_t>(t.exp[map[i]] + m.exp[i]);
        t.deg = degree_of(t.exp, data_->degs);
        terms.push_back(std::move(t));
    }
    return canonicalize(std::move(terms));
}

Polynomial Presentation::import(const Element& e) const { return import(e.polynomial(), e.presentation()); }

Element Presentation::zero() const { return Element(data_, {}); }

Element Presentation::one() const
{
    if (data_->shape == Shape::module_without_unit)
        throw Error(ErrorKind::InvalidArgument, label() + " has no unit component");
    return Element(data_, {unit_monomial()});
}

Element Presentation::gen(std::string_view name) const
{
    auto i = index_of(name);
    if (!i)
        throw Error(ErrorKind::UnknownGenerator, "'" + std::string(name) + "' not in " + label());
    return normal_form({gen_monomial(*i)});
}

std::vector<Monomial> Presentation::monomials(Bidegree b) const
{
    auto all = collect(*data_, b, false);
    auto it = all.find(b);
    return it == all.end() ? std::vector<Monomial>{} : std::move(it->second);
}

std::vector<Monomial> Presentation::standard_monomials(Bidegree b) const
{
    if (b.total() > data_->bound)
        throw Error(ErrorKind::ExceedsBound, "bidegree " + b.str() + " exceeds bound of " + label());
    auto all = collect(*data_, b, true);
    auto it = all.find(b);
    return it == all.end() ? std::vector<Monomial>{} : std::move(it->second);
}

std::map<Bidegree, std::vector<Monomial>> Presentation::standard_basis(Bidegree box) const
{
    if (box.total() > data_->bound)
        throw Error(ErrorKind::ExceedsBound, "box " + box.str() + " exceeds bound " + std::to_string(bound()) +
                                                 " of " + label());
    return collect(*data_, box, true);
}

std::map<Bidegree, std::vector<Monomial>> Presentation::monomial_basis(Bidegree box) const
{
    return collect(*data_, box, false);
}

PoincareTable Presentation::table(int wmax, int dmax) const
{
    PoincareTable t(wmax, dmax);
    for (const auto& [b, v] : standard_basis({wmax, dmax}))
        t.set(b.w, b.d, v.size());
    if (is_free_over_base()) {
        std::vector<Bidegree> cls;
        for (const auto& g : data_->gens)
            if (g.origin == GenOrigin::cls)
                cls.push_back(g.deg);
        t.set_free_generators(std::move(cls));
    }
    return t;
}

Presentation Presentation::with_bound(int bound) const
{
    if (bound <= data_->bound)
        return *this;
    auto d = blank(data_->label, data_->gens, bound, data_->shape);
    finish(*d, data_->relations);
    return Presentation(std::move(d));
}

Presentation Presentation::with_relations(std::string label, const std::vector<Polynomial>& extra) const
{
    auto d = blank(label.empty() ? data_->label : std::move(label), data_->gens, data_->bound, data_->shape);
    auto rels = data_->relations;
    rels.insert(rels.end(), extra.begin(), extra.end());
    finish(*d, std::move(rels));
    return Presentation(std::move(d));
}

std::string Presentation::format(const Monomial& m) const
{
    std::string out;
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
        if (!m.exp[i])
            continue;
        if (!out.empty())
            out += '*';
        out += data_->gens[i].name;
        if (m.exp[i] > 1)
            out += '^' + std::to_string(m.exp[i]);
    }
    return out.empty() ? "1" : out;
}

std::string Presentation::format(const Polynomial& p) const
{
    if (p.empty())
        return "0";
    std::string out;
    for (const auto& m : p) {
        if (!out.empty())
            out += " + ";
        out += format(m);
    }
    return out;
}

// ---- ideal operations -----------------------------------------------------

Presentation quotient(const Presentation& p, const IdealGens& ideal, std::string label)
{
    std::vector<Polynomial> extra;
    for (const auto& g : ideal.gens)
        extra.push_back(p.import(g));
    for (const auto& e : extra)
        if (!e.empty() && !is_homogeneous(e))
            throw Error(ErrorKind::NonHomogeneousRelation, "ideal generator " + p.format(e) + " is not homogeneous");
    return p.with_relations(label.empty() ? p.label() + "/I" : std::move(label), extra);
}

std::vector<std::size_t> coordinates(const Polynomial& p, const std::vector<Monomial>& basis)
{
    std::vector<std::size_t> out;
    out.reserve(p.size());
    for (const auto& m : p) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m,
                                   [](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
        if (it == basis.end() || !(*it == m))
            throw Error(ErrorKind::InvalidArgument, "term outside the standard basis");
        out.push_back(static_cast<std::size_t>(it - basis.begin()));
    }
    return out;
}

IdealGens colon_ideal(const Presentation& p, const IdealGens& ideal, const Element& f, int bound)
{
    if (f.is_zero())
        throw Error(ErrorKind::ZeroElement, "colon by an element that reduces to 0");
    const auto fdeg = f.bidegree();
    if (!fdeg)
        throw Error(ErrorKind::NonHomogeneousRelation, "colon by an inhomogeneous element");
    const Presentation q = quotient(p, ideal, p.label() + "/I");
    const Polynomial fp = p.import(f);

    std::vector<Bidegree> cells;
    for (int t = 0; t <= bound; ++t)
        for (int w = 0; w <= t; ++w)
            if (t + fdeg->total() <= p.bound())
                cells.push_back({w, t - w});

    IdealGens out;
    out.degree_bound = bound;
    for (const Bidegree b : cells) {
        const auto source = p.standard_monomials(b);
        if (source.empty())
            continue;
        const auto target = q.standard_monomials(b + *fdeg);
        gf2::Matrix m(source.size(), target.size());
        for (std::size_t i = 0; i < source.size(); ++i) {
            const auto img = q.normal_form(multiply(source[i], fp));
            for (auto c : coordinates(img.polynomial(), target))
                m.row(i).flip(c);
        }
        auto kernel = gf2::left_kernel(m);
        if (kernel.empty())
            continue;

        gf2::Echelon covered;
        for (const auto& g : out.gens) {
            const Bidegree gd = *g.bidegree();
            const Bidegree rest = b - gd;
            if (!rest.nonnegative())
                continue;
            for (const auto& mono : p.standard_monomials(rest)) {
                const auto img = p.normal_form(multiply(mono, g.polynomial()));
                gf2::BitVector v(source.size());
                for (auto c : coordinates(img.polynomial(), source))
                    v.flip(c);
                covered.insert(std::move(v));
            }
        }
        for (auto& k : kernel) {
            if (!covered.insert(k))
                continue;
            std::vector<Monomial> terms;
            for (std::size_t i = 0; i < source.size(); ++i)
                if (k.get(i))
                    terms.push_back(source[i]);
            out.gens.push_back(p.normal_form(canonicalize(std::move(terms))));
        }
    }
    return out;
}

}  // namespace subtle

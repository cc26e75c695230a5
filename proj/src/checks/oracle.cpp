#include <algorithm>
#include <map>
#include <random>

#include "subtle/checks.hpp"
#include "subtle/error.hpp"

namespace subtle::checks {

namespace {

using Exps = std::vector<int>;

/// Rows of bits with a pivot table; the rank is the number of rows kept.
class XorBasis {
public:
    explicit XorBasis(std::size_t width) : words_((width + 63) / 64) {}

    bool insert(std::vector<std::uint64_t> row)
    {
        for (std::size_t k = 0; k < words_; ++k)
            while (row[k]) {
                const std::size_t bit = k * 64 + static_cast<std::size_t>(__builtin_ctzll(row[k]));
                auto it = pivot_.find(bit);
                if (it == pivot_.end()) {
                    pivot_.emplace(bit, std::move(row));
                    return true;
                }
                for (std::size_t j = 0; j < words_; ++j)
                    row[j] ^= it->second[j];
            }
        return false;
    }
    std::size_t rank() const noexcept { return pivot_.size(); }
    std::vector<std::uint64_t> blank() const { return std::vector<std::uint64_t>(words_, 0); }

private:
    std::size_t words_;
    std::map<std::size_t, std::vector<std::uint64_t>> pivot_;
};

struct GenInfo {
    Bidegree deg;
    bool module = false;
};

std::vector<GenInfo> gen_info(const Presentation& p)
{
    std::vector<GenInfo> g;
    for (const auto& s : p.generators())
        g.push_back({s.deg, s.origin == GenOrigin::module_generator});
    return g;
}

// exponent vectors of bidegree b using at most `max_module` module generators
void enumerate(const std::vector<GenInfo>& gens, std::size_t i, Bidegree rest, int max_module, Exps& cur,
               std::vector<Exps>& out)
{
    if (rest == Bidegree{}) {
        out.push_back(cur);
        return;
    }
    if (i == gens.size())
        return;
    const auto g = gens[i].deg;
    for (int e = 0;; ++e) {
        const Bidegree left{rest.w - e * g.w, rest.d - e * g.d};
        if (!left.nonnegative() || (gens[i].module && e > max_module))
            break;
        cur[i] = e;
        enumerate(gens, i + 1, left, max_module - (gens[i].module ? e : 0), cur, out);
        cur[i] = 0;
        if (g.total() == 0)
            break;
    }
}

std::vector<Exps> monomials_of(const std::vector<GenInfo>& gens, Bidegree b, int max_module)
{
    std::vector<Exps> out;
    if (!b.nonnegative())
        return out;
    Exps cur(gens.size(), 0);
    enumerate(gens, 0, b, max_module, cur, out);
    return out;
}

int module_count(const std::vector<GenInfo>& gens, const Exps& e)
{
    int n = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].module)
            n += e[i];
    return n;
}

Exps exps_of(const Monomial& m) { return Exps(m.exp.begin(), m.exp.end()); }

/// The cell (b) of p: admissible monomials and the span of relation multiples.
struct DenseCell {
    std::map<Exps, std::size_t> index;
    XorBasis relations{0};

    std::vector<std::uint64_t> row_of(const std::vector<Exps>& terms) const
    {
        auto row = relations.blank();
        for (const auto& t : terms) {
            auto it = index.find(t);
            if (it != index.end())
                row[it->second / 64] ^= std::uint64_t{1} << (it->second % 64);
        }
        return row;
    }
};

DenseCell dense_cell(const Presentation& p, Bidegree b)
{
    const auto gens = gen_info(p);
    const Shape shape = p.shape();
    const int max_module = shape == Shape::ring ? 0 : 1;
    const int min_module = shape == Shape::module_without_unit ? 1 : 0;
    DenseCell c;
    for (auto& e : monomials_of(gens, b, max_module))
        if (module_count(gens, e) >= min_module)
            c.index.emplace(std::move(e), c.index.size());
    c.relations = XorBasis(c.index.size());
    for (const auto& r : p.relations()) {
        if (r.empty())
            continue;
        const Bidegree rd = r.front().deg;
        const int rc = module_count(gens, exps_of(r.front()));
        for (const auto& m : monomials_of(gens, b - rd, max_module - rc)) {
            std::vector<Exps> terms;
            for (const auto& t : r) {
                Exps e = exps_of(t);
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] += m[i];
                terms.push_back(std::move(e));
            }
            c.relations.insert(c.row_of(terms));
        }
    }
    return c;
}

}  // namespace

DenseReport dense_oracle(const Presentation& p, Bidegree box)
{
    DenseReport r;
    r.label = p.label();
    const auto t = p.table(box.w, box.d);
    for (int w = 0; w <= box.w; ++w)
        for (int d = 0; d <= box.d; ++d) {
            const auto c = dense_cell(p, {w, d});
            const std::uint64_t dim = c.index.size() - c.relations.rank();
            ++r.cells;
            if (dim != t.at(w, d))
                r.mismatches.push_back({{w, d}, dim, t.at(w, d)});
        }
    return r;
}

std::uint64_t dense_km_dim(const FieldModel& model, int k)
{
    const auto c = dense_cell(model.km(), {k, k});
    return c.index.size() - c.relations.rank();
}

std::uint64_t dense_alpha_rank(const FieldModel& model, int k)
{
    const auto& km = model.km();
    auto c = dense_cell(km, {k + 1, k + 1});
    const std::size_t before = c.relations.rank();
    const auto gens = gen_info(km);
    for (const auto& m : monomials_of(gens, {k, k}, 0)) {
        std::vector<Exps> terms;
        for (const auto& t : model.alpha().polynomial()) {
            Exps e = exps_of(t);
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += m[i];
            terms.push_back(std::move(e));
        }
        c.relations.insert(c.row_of(terms));
    }
    return c.relations.rank() - before;
}

PoincareTable npow_direct(const FieldModel& model, int m, Bidegree box)
{
    PoincareTable t(box.w, box.d);
    std::vector<std::uint64_t> km, quot;
    for (int k = 0; k <= box.w + box.d; ++k) {
        km.push_back(dense_km_dim(model, k));
        quot.push_back(m > 0 ? dense_alpha_rank(model, k) : 0);
    }
    for (int w = 0; w <= box.w; ++w)
        for (int d = 0; d <= box.d; ++d) {
            // K^M_d tau^(w-d)
            std::uint64_t v = d <= w ? km[static_cast<std::size_t>(d)] : 0;
            if (d > w && d - w <= m)
                v += quot[static_cast<std::size_t>(w)];
            t.set(w, d, v);
        }
    return t;
}

PoincareTable bu_decomposition(const FieldModel& model, int n, Bidegree box)
{
    PoincareTable out(box.w, box.d);
    std::map<int, PoincareTable> cache;
    auto npow = [&](int m) -> const PoincareTable& {
        auto it = cache.find(m);
        if (it == cache.end())
            it = cache.emplace(m, npow_direct(model, m, box)).first;
        return it->second;
    };
    std::function<void(int, Bidegree, int)> rec = [&](int i, Bidegree at, int odd) {
        if (!at.within(box))
            return;
        if (i > n) {
            const auto& t = npow(odd);
            for (int w = at.w; w <= box.w; ++w)
                for (int d = at.d; d <= box.d; ++d)
                    out.add(w, d, t.at(w - at.w, d - at.d));
            return;
        }
        for (int e = 0; Bidegree{at.w + e * i, at.d + 2 * e * i}.within(box); ++e)
            rec(i + 1, {at.w + e * i, at.d + 2 * e * i}, odd + (i % 2 ? e : 0));
    };
    rec(1, {0, 0}, 0);
    return out;
}

// ---------------------------------------------------------------- rewriting

namespace {

std::uint64_t next(std::uint64_t& s)
{
    // splitmix64
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int pick(std::uint64_t& s, int lo, int hi) { return lo + static_cast<int>(next(s) % static_cast<std::uint64_t>(hi - lo + 1)); }

MotiveExprPtr gen_expr(std::uint64_t& s, int atoms)
{
    auto e = std::make_shared<MotiveExpr>();
    if (atoms == 1) {
        e->kind = MotiveExpr::Kind::atom;
        static constexpr AtomBase bases[] = {AtomBase::T,  AtomBase::Ma, AtomBase::N,
                                             AtomBase::N,  AtomBase::Mt, AtomBase::Xa,
                                             AtomBase::Xt, AtomBase::N};
        e->base = bases[next(s) % 8];
        if (e->base == AtomBase::N)
            e->exponent = pick(s, -3, 3);
    } else {
        const int left = pick(s, 1, atoms - 1);
        e->kind = next(s) % 3 == 0 ? MotiveExpr::Kind::sum : MotiveExpr::Kind::tensor;
        e->children = {gen_expr(s, left), gen_expr(s, atoms - left)};
    }
    if (next(s) % 4 == 0) {
        auto t = std::make_shared<MotiveExpr>();
        t->kind = MotiveExpr::Kind::twist;
        t->twist = {pick(s, -2, 3), pick(s, -3, 4)};
        t->children = {e};
        return t;
    }
    return e;
}

struct RawAtom {
    AtomBase base;
    int exponent;
    Bidegree twist;
};
using RawProduct = std::vector<RawAtom>;

std::vector<RawProduct> expand(const MotiveExpr& e)
{
    using K = MotiveExpr::Kind;
    switch (e.kind) {
    case K::zero: return {};
    case K::atom: return {{{e.base, e.exponent, {}}}};
    case K::twist: {
        auto v = expand(*e.children.front());
        for (auto& p : v)
            p.front().twist += e.twist;
        return v;
    }
    case K::sum: {
        std::vector<RawProduct> v;
        for (const auto& c : e.children)
            for (auto& p : expand(*c))
                v.push_back(std::move(p));
        return v;
    }
    case K::tensor: {
        std::vector<RawProduct> v{RawProduct{{AtomBase::T, 1, {}}}};
        for (const auto& c : e.children) {
            std::vector<RawProduct> nv;
            for (const auto& a : v)
                for (const auto& b : expand(*c)) {
                    RawProduct p = a;
                    p.insert(p.end(), b.begin(), b.end());
                    nv.push_back(std::move(p));
                }
            v = std::move(nv);
        }
        return v;
    }
    case K::cone: break;
    }
    throw Error(ErrorKind::UnsupportedAtom, "cones are outside the rewriting oracle");
}

bool is(const RawAtom& a, AtomBase b) { return a.base == b; }

// Fires the rule on (x, y) if one matches. Returns false when nothing applies;
// sets `dead` when the product becomes 0.
bool fire(RawProduct& p, std::size_t i, std::size_t j, bool& dead)
{
    RawAtom& x = p[i];
    RawAtom& y = p[j];
    auto keep_x = [&](Bidegree extra) {
        x.twist += y.twist + extra;
        p.erase(p.begin() + static_cast<std::ptrdiff_t>(j));
        return true;
    };
    if (is(y, AtomBase::T))
        return keep_x({});
    if (is(x, AtomBase::N) && is(y, AtomBase::N)) {
        x.exponent += y.exponent;
        if (x.exponent == 0)
            x.base = AtomBase::T;
        return keep_x({});
    }
    if (is(x, AtomBase::Ma) && is(y, AtomBase::Xa))
        return keep_x({});
    if (is(x, AtomBase::Xa) && is(y, AtomBase::N))
        return keep_x({});
    if (is(x, AtomBase::Ma) && is(y, AtomBase::N))
        return keep_x({});
    if (is(x, AtomBase::Mt) && is(y, AtomBase::N))
        return keep_x({0, y.exponent});
    if ((is(x, AtomBase::Mt) && is(y, AtomBase::Xa)) || (is(x, AtomBase::Ma) && is(y, AtomBase::Mt))) {
        dead = true;
        return true;
    }
    return false;
}

}  // namespace

MotiveExprPtr random_motive_expr(std::uint64_t& state, int max_atoms)
{
    return gen_expr(state, pick(state, 1, max_atoms));
}

FormalMotive rewrite_stepwise(const MotiveExpr& e, std::uint64_t& state)
{
    FormalMotive out;
    auto products = expand(e);
    // reduce the summands in a random order too
    for (std::size_t k = products.size(); k > 1; --k)
        std::swap(products[k - 1], products[next(state) % k]);
    for (auto& p : products) {
        for (auto& a : p)
            if (is(a, AtomBase::N) && a.exponent == 0)
                a.base = AtomBase::T;
        bool dead = false;
        while (!dead && p.size() > 1) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < p.size(); ++j)
                    if (i != j)
                        pairs.emplace_back(i, j);
            for (std::size_t k = pairs.size(); k > 1; --k)
                std::swap(pairs[k - 1], pairs[next(state) % k]);
            bool fired = false;
            for (auto [i, j] : pairs)
                if (fire(p, i, j, dead)) {
                    fired = true;
                    break;
                }
            if (!fired)
                break;
        }
        if (dead)
            continue;
        MotiveTerm t;
        for (const auto& a : p) {
            t.twist += a.twist;
            switch (a.base) {
            case AtomBase::T: break;
            case AtomBase::Ma: ++t.ma; break;
            case AtomBase::Mt: ++t.mt; break;
            case AtomBase::Xa: ++t.xa; break;
            case AtomBase::Xt: ++t.xt; break;
            case AtomBase::N: t.n += a.exponent; break;
            }
        }
        // an irreducible product must already be a normal form
        const auto r = reduce_term(t);
        if (!r || !(*r == t))
            throw Error(ErrorKind::InvalidArgument, "stepwise rewriting stopped at " + t.str() +
                                                        ", which the normal form reduces further");
        out.add_term(t);
    }
    return out;
}

}  // namespace subtle::checks

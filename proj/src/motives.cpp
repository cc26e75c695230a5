#include "subtle/motives.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "subtle/error.hpp"
#include "subtle/gf2.hpp"
#include "subtle/rings.hpp"

namespace subtle {

namespace {

std::string suffix(Bidegree t)
{
    if (t == Bidegree{})
        return {};
    return t.str();
}

const char* base_name(AtomBase b)
{
    switch (b) {
    case AtomBase::T: return "T";
    case AtomBase::Ma: return "Ma";
    case AtomBase::N: return "N";
    case AtomBase::Mt: return "Mt";
    case AtomBase::Xa: return "Xa";
    case AtomBase::Xt: return "Xt";
    }
    return "?";
}

}  // namespace

std::string MotiveTerm::str() const
{
    std::vector<std::string> parts;
    for (int i = 0; i < ma; ++i)
        parts.emplace_back("Ma");
    for (int i = 0; i < mt; ++i)
        parts.emplace_back("Mt");
    for (int i = 0; i < xa; ++i)
        parts.emplace_back("Xa");
    for (int i = 0; i < xt; ++i)
        parts.emplace_back("Xt");
    if (n != 0)
        parts.push_back("N^" + std::to_string(n));
    std::string s;
    for (const auto& p : parts)
        s += (s.empty() ? "" : "*") + p;
    if (s.empty())
        s = "T";
    return s + suffix(twist);
}

std::optional<MotiveTerm> reduce_term(MotiveTerm t)
{
    if (t.mt > 0 && (t.ma > 0 || t.xa > 0))
        return std::nullopt;
    if (t.ma > 0) {
        t.xa = 0;
        t.n = 0;
    } else if (t.xa > 0) {
        t.n = 0;
    } else if (t.mt > 0) {
        t.twist.d += t.n;
        t.n = 0;
    }
    return t;
}

FormalMotive FormalMotive::atom(AtomBase base, int exponent, Bidegree twist)
{
    MotiveTerm t;
    t.twist = twist;
    switch (base) {
    case AtomBase::T: break;
    case AtomBase::Ma: t.ma = 1; break;
    case AtomBase::N: t.n = exponent; break;
    case AtomBase::Mt: t.mt = 1; break;
    case AtomBase::Xa: t.xa = 1; break;
    case AtomBase::Xt: t.xt = 1; break;
    }
    FormalMotive m;
    m.add_term(t);
    return m;
}

void FormalMotive::add_term(MotiveTerm t, std::uint64_t mult)
{
    if (mult == 0)
        return;
    if (auto r = reduce_term(t))
        terms_[*r] += mult;
}

std::size_t FormalMotive::atom_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& [t, k] : terms_)
        n += k;
    return n;
}

std::string FormalMotive::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [t, k] : terms_)
        for (std::uint64_t i = 0; i < k; ++i)
            s += (s.empty() ? "" : " + ") + t.str();
    return s;
}

FormalMotive FormalMotive::twisted(Bidegree by) const
{
    FormalMotive r;
    for (const auto& [key, k] : terms_) {
        auto t = key;
        t.twist += by;
        r.terms_[t] += k;
    }
    return r;
}

FormalMotive& FormalMotive::operator+=(const FormalMotive& o)
{
    for (const auto& [t, k] : o.terms_)
        terms_[t] += k;
    return *this;
}

FormalMotive motive_tensor(const FormalMotive& a, const FormalMotive& b)
{
    FormalMotive r;
    for (const auto& [x, i] : a.terms())
        for (const auto& [y, j] : b.terms()) {
            MotiveTerm t{x.twist + y.twist, x.ma + y.ma, x.mt + y.mt, x.xa + y.xa, x.xt + y.xt, x.n + y.n};
            r.add_term(t, i * j);
        }
    return r;
}

const std::vector<RewriteRule>& rewrite_rules()
{
    static const std::vector<RewriteRule> rules{
        {"T*x", "x", "unit"},
        {"N^a*N^b", "N^(a+b)", "exponents add, N^0 is T"},
        {"Ma*Xa", "Ma", "Xa absorbed by Ma"},
        {"N^k*Xa", "Xa", "N absorbed by Xa"},
        {"Ma*N^k", "Ma", "N absorbed by Ma"},
        {"Mt*N^k", "Mt[k]", "N acts on Mt as a shift"},
        {"Mt*Xa", "0", "completion: Xa*Mt is a cone of an isomorphism"},
        {"Ma*Mt", "0", "completion: Ma*Mt is a cone of an isomorphism"},
    };
    return rules;
}

// ---------------------------------------------------------------- expressions

std::string MotiveExpr::str() const
{
    switch (kind) {
    case Kind::zero: return "0";
    case Kind::atom: {
        if (!label.empty())
            return label;
        if (base == AtomBase::N)
            return "N^" + std::to_string(exponent);
        return base_name(base);
    }
    case Kind::twist: {
        const auto& c = *children.front();
        const bool wrap = c.kind == Kind::sum || c.kind == Kind::tensor;
        return (wrap ? "(" + c.str() + ")" : c.str()) + twist.str();
    }
    case Kind::sum:
    case Kind::tensor: {
        std::string s;
        for (const auto& c : children) {
            const bool wrap = kind == Kind::tensor && c->kind == Kind::sum;
            s += (s.empty() ? "" : (kind == Kind::sum ? " + " : " * ")) + (wrap ? "(" + c->str() + ")" : c->str());
        }
        return s;
    }
    case Kind::cone:
        return "Cone[-1](" + children[0]->str() + " --" + map_label + "--> " + children[1]->str() + ")";
    }
    return "?";
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    MotiveExprPtr parse()
    {
        auto e = sum();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }
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
    int integer()
    {
        skip();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == digits)
            fail("integer expected");
        try {
            return std::stoi(std::string(s_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            fail("integer out of range");
        }
    }
    MotiveExprPtr node(MotiveExpr::Kind k, std::vector<MotiveExprPtr> ch)
    {
        if (ch.size() == 1)
            return ch.front();
        auto e = std::make_shared<MotiveExpr>();
        e->kind = k;
        e->children = std::move(ch);
        return e;
    }
    MotiveExprPtr sum()
    {
        std::vector<MotiveExprPtr> ch{product()};
        while (eat('+'))
            ch.push_back(product());
        return node(MotiveExpr::Kind::sum, std::move(ch));
    }
    MotiveExprPtr product()
    {
        std::vector<MotiveExprPtr> ch{factor()};
        while (eat('*'))
            ch.push_back(factor());
        return node(MotiveExpr::Kind::tensor, std::move(ch));
    }
    MotiveExprPtr factor()
    {
        auto e = primary();
        while (true) {
            skip();
            if (pos_ >= s_.size() || s_[pos_] != '(')
                return e;
            ++pos_;
            const int i = integer();
            if (!eat(')') || !eat('['))
                fail("twist suffix must read (i)[j]");
            const int j = integer();
            if (!eat(']'))
                fail("']' expected");
            auto t = std::make_shared<MotiveExpr>();
            t->kind = MotiveExpr::Kind::twist;
            t->twist = {i, j};
            t->children = {e};
            e = t;
        }
    }
    MotiveExprPtr primary()
    {
        if (eat('(')) {
            auto e = sum();
            if (!eat(')'))
                fail("')' expected");
            return e;
        }
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        const std::string word(s_.substr(start, pos_ - start));
        auto e = std::make_shared<MotiveExpr>();
        e->kind = MotiveExpr::Kind::atom;
        static const std::map<std::string, AtomBase> atoms{{"T", AtomBase::T},   {"Ma", AtomBase::Ma},
                                                           {"N", AtomBase::N},   {"Mt", AtomBase::Mt},
                                                           {"Xa", AtomBase::Xa}, {"Xt", AtomBase::Xt}};
        if (word == "0") {
            e->kind = MotiveExpr::Kind::zero;
            return e;
        }
        auto it = atoms.find(word);
        if (it == atoms.end())
            fail(word.empty() ? "atom expected" : "unknown atom '" + word + "'");
        e->base = it->second;
        if (e->base == AtomBase::N && eat('^'))
            e->exponent = integer();
        return e;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

MotiveExprPtr motive_parse_expr(std::string_view text) { return ExprParser(text).parse(); }

FormalMotive motive_evaluate(const MotiveExpr& e)
{
    using K = MotiveExpr::Kind;
    switch (e.kind) {
    case K::zero: return {};
    case K::atom:
        if (!e.label.empty())
            throw Error(ErrorKind::UnsupportedAtom, "'" + e.label + "' has no normal form");
        return FormalMotive::atom(e.base, e.exponent);
    case K::twist: return motive_evaluate(*e.children.front()).twisted(e.twist);
    case K::sum: {
        FormalMotive r;
        for (const auto& c : e.children)
            r += motive_evaluate(*c);
        return r;
    }
    case K::tensor: {
        FormalMotive r = FormalMotive::unit();
        for (const auto& c : e.children)
            r = motive_tensor(r, motive_evaluate(*c));
        return r;
    }
    case K::cone:
        if (!e.zero_map)
            throw Error(ErrorKind::UnsupportedAtom, "cone along " + e.map_label + " cannot be expanded");
        return motive_evaluate(*e.children[0]) + motive_evaluate(*e.children[1]).twisted({0, -1});
    }
    return {};
}

FormalMotive motive_parse(std::string_view text) { return motive_evaluate(*motive_parse_expr(text)); }

FormalMotive affine_quadric_motive(int n)
{
    if (n <= 0)
        throw Error(ErrorKind::OutOfRange, "affine quadric needs n >= 1");
    const Bidegree t{n, 2 * n - 1};
    return FormalMotive::unit() + FormalMotive::atom(n % 2 ? AtomBase::N : AtomBase::T, 1, t);
}

TorsorMotive torsor_motive(int n, bool split)
{
    if (n < 0)
        throw Error(ErrorKind::OutOfRange, "torsor motive needs n >= 0");
    auto leaf = [&] {
        auto e = std::make_shared<MotiveExpr>();
        e->kind = MotiveExpr::Kind::atom;
        if (!split)
            e->label = "Xh";
        return e;
    };
    auto twist = [](MotiveExprPtr c, Bidegree t) {
        auto e = std::make_shared<MotiveExpr>();
        e->kind = MotiveExpr::Kind::twist;
        e->twist = t;
        e->children = {std::move(c)};
        return e;
    };
    auto tensor = [](std::vector<MotiveExprPtr> ch) {
        auto e = std::make_shared<MotiveExpr>();
        e->kind = MotiveExpr::Kind::tensor;
        e->children = std::move(ch);
        return e;
    };
    std::vector<MotiveExprPtr> cones;
    // even indices first, then odd ones, each ascending
    for (int parity : {0, 1})
        for (int i = 1; i <= n; ++i) {
            if (i % 2 != parity)
                continue;
            auto c = std::make_shared<MotiveExpr>();
            c->kind = MotiveExpr::Kind::cone;
            c->zero_map = split;
            const std::string cls = (parity ? "~c_" : "c_") + std::to_string(i);
            c->map_label = split ? "0" : cls + "(h)";
            MotiveExprPtr target = leaf();
            if (parity) {
                auto nn = std::make_shared<MotiveExpr>();
                nn->kind = MotiveExpr::Kind::atom;
                nn->base = AtomBase::N;
                target = split ? MotiveExprPtr(nn) : tensor({nn, target});
            }
            c->children = {leaf(), twist(target, {i, 2 * i})};
            cones.push_back(c);
        }
    TorsorMotive r;
    if (cones.empty()) {
        auto t = std::make_shared<MotiveExpr>();
        t->kind = MotiveExpr::Kind::atom;
        r.tree = t;
    } else if (cones.size() == 1) {
        r.tree = cones.front();
    } else {
        r.tree = tensor(cones);
    }
    if (split)
        r.expanded = motive_evaluate(*r.tree);
    return r;
}

// ---------------------------------------------------------------- cohomology

namespace {

std::size_t cell_rank(const std::vector<std::vector<std::size_t>>& images, std::size_t cols)
{
    gf2::Matrix m(0, cols);
    for (const auto& img : images) {
        gf2::BitVector row(cols);
        for (auto c : img)
            row.flip(c);
        m.push_row(std::move(row));
    }
    return gf2::rank(m);
}

}  // namespace

MotiveCohomology rost_cohomology(const FieldModel& model, Bidegree box)
{
    if (!model.has_alpha())
        throw Error(ErrorKind::MissingAlpha, "Ma needs a quadratic extension; model '" + model.name() + "' has no alpha");
    const int bound = box.total() + 2;
    const auto h = build_H(model, bound);
    const auto n = build_Npow(model, 1, bound);
    const auto mu = n.gen(mu_name(1));
    // delta: H(w)[d] -> N(w)[d+1], x -> x mu
    auto delta_rank = [&](Bidegree src) -> std::pair<std::size_t, bool> {
        if (src.d < 0)
            return {0, false};
        const auto basis = h.standard_monomials(src);
        const auto tgt = n.standard_monomials(src + Bidegree{0, 1});
        std::vector<std::vector<std::size_t>> images;
        for (const auto& m : basis) {
            const auto img = n.normal_form(n.import(Polynomial{m}, h)) * mu;
            images.push_back(coordinates(img.polynomial(), tgt));
        }
        return {cell_rank(images, tgt.size()), !basis.empty() && !tgt.empty()};
    };
    MotiveCohomology r{PoincareTable(box.w, box.d), {}, {}};
    for (int w = 0; w <= box.w; ++w)
        for (int d = 0; d <= box.d; ++d) {
            const auto [in_rank, in_open] = delta_rank({w, d - 1});
            const auto [out_rank, out_open] = delta_rank({w, d});
            const auto dim_n = n.standard_monomials({w, d}).size();
            const auto dim_h = h.standard_monomials({w, d}).size();
            r.table.set(w, d, (dim_n - in_rank) + (dim_h - out_rank));
            if (in_open || out_open)
                r.ambiguous.push_back({w, d});
        }
    return r;
}

MotiveCohomology motive_cohomology(const FieldModel& model, const FormalMotive& m, Bidegree box)
{
    MotiveCohomology r{PoincareTable(box.w, box.d), {}, {}};
    for (const auto& [t, mult] : m.terms()) {
        const int atoms = t.ma + t.mt + t.xa + t.xt + (t.n != 0);
        if (atoms > 1 || t.ma > 1 || t.mt > 1 || t.xa > 1 || t.xt > 1)
            throw Error(ErrorKind::UnsupportedAtom, "no table for the product " + t.str());
        // negative twists read cells beyond the box
        const Bidegree big{box.w + std::max(0, -t.twist.w), box.d + std::max(0, -t.twist.d)};
        PoincareTable base;
        std::vector<Bidegree> amb;
        if (t.ma) {
            auto c = rost_cohomology(model, big);
            base = c.table;
            amb = c.ambiguous;
        } else if (t.mt) {
            base = block_table(model, {BlockId::Kind::Mtilde}, big);
        } else if (t.xa) {
            base = block_table(model, {BlockId::Kind::Xalpha}, big);
        } else if (t.xt) {
            base = block_table(model, {BlockId::Kind::Xtilde}, big);
        } else if (t.n == -1) {
            base = nbar_table(model, big);
        } else if (t.n < -1) {
            throw Error(ErrorKind::UnsupportedAtom, "no table for " + t.str());
        } else if (t.n > 0) {
            base = block_table(model, {BlockId::Kind::Npow, 0, t.n}, big);
        } else {
            base = block_table(model, {BlockId::Kind::H}, big);
        }
        int clipped = 0;
        const auto moved = base.shifted(t.twist, &clipped).reboxed(box);
        if (clipped)
            r.warnings.push_back(t.str() + ": " + std::to_string(clipped) + " nonzero cells clipped below the box origin");
        for (auto b : amb) {
            const Bidegree at = b + t.twist;
            if (at.nonnegative() && at.within(box) &&
                std::find(r.ambiguous.begin(), r.ambiguous.end(), at) == r.ambiguous.end())
                r.ambiguous.push_back(at);
        }
        for (std::uint64_t k = 0; k < mult; ++k)
            r.table += moved;
    }
    std::sort(r.ambiguous.begin(), r.ambiguous.end());
    return r;
}

}  // namespace subtle

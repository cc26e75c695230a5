#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "subtle/bidegree.hpp"
#include "subtle/milnor.hpp"
#include "subtle/table.hpp"

namespace subtle {

enum class AtomBase { T, Ma, N, Mt, Xa, Xt };

/// One tensor product of atoms in normal form, with its total twist (i)[j].
/// N carries an integer exponent; N^0 is T and N^-1 is the dual cone.
struct MotiveTerm {
    Bidegree twist{};
    int ma = 0;
    int mt = 0;
    int xa = 0;
    int xt = 0;
    int n = 0;

    bool is_unit_atom() const noexcept { return ma + mt + xa + xt == 0 && n == 0; }
    std::string str() const;
    /// Twist first, then by atoms, so T leads among terms with equal twist.
    std::strong_ordering operator<=>(const MotiveTerm& o) const noexcept
    {
        auto key = [](const MotiveTerm& t) {
            return std::tuple(t.twist, t.ma, t.mt, t.xa, t.xt, t.n < 0 ? -t.n : t.n, t.n);
        };
        return key(*this) <=> key(o);
    }
    bool operator==(const MotiveTerm&) const = default;
};

/// Direct sum of terms with natural multiplicities, always normalized.
class FormalMotive {
public:
    FormalMotive() = default;
    static FormalMotive atom(AtomBase base, int exponent = 1, Bidegree twist = {});
    static FormalMotive unit() { return atom(AtomBase::T); }

    const std::map<MotiveTerm, std::uint64_t>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t atom_count() const noexcept;
    /// Summands joined by " + ", repeated by multiplicity; "0" when empty.
    std::string str() const;

    FormalMotive twisted(Bidegree by) const;
    FormalMotive& operator+=(const FormalMotive& o);
    friend FormalMotive operator+(FormalMotive a, const FormalMotive& b) { return a += b; }
    friend bool operator==(const FormalMotive&, const FormalMotive&) = default;

    /// Adds a term after reducing it (the term may vanish).
    void add_term(MotiveTerm t, std::uint64_t mult = 1);

private:
    std::map<MotiveTerm, std::uint64_t> terms_;
};

/// The reduction of a raw product of atoms. Absorptions: Ma and Xa kill N;
/// Ma kills Xa; Mt turns N^k into a shift [k]; Mt meets Ma or Xa in 0.
std::optional<MotiveTerm> reduce_term(MotiveTerm raw);

FormalMotive motive_tensor(const FormalMotive& a, const FormalMotive& b);

struct RewriteRule {
    std::string left;
    std::string right;
    std::string reason;
};
/// The rule list the normal form implements, in the order they are tried
/// by the stepwise rewriter in the checks.
const std::vector<RewriteRule>& rewrite_rules();

/// Expression tree as parsed, or as built for torsor motives.
struct MotiveExpr {
    enum class Kind { atom, sum, tensor, twist, cone, zero };
    Kind kind = Kind::zero;
    AtomBase base = AtomBase::T;
    int exponent = 1;
    /// Printed label for atoms outside the grammar (for example Xh).
    std::string label;
    Bidegree twist{};
    std::vector<std::shared_ptr<const MotiveExpr>> children;
    /// Cone edges: the map's name, and whether it is known to be zero.
    std::string map_label;
    bool zero_map = false;

    std::string str() const;
};
using MotiveExprPtr = std::shared_ptr<const MotiveExpr>;

/// Grammar: atoms T, Ma, N^k (N alone means N^1), Mt, Xa, Xt and 0;
/// suffix (i)[j]; + for direct sum, * for tensor; parentheses.
MotiveExprPtr motive_parse_expr(std::string_view text);
/// Normal form of a tree. Cones along zero maps split as source + target[-1];
/// other cones and atoms without a base throw UnsupportedAtom.
FormalMotive motive_evaluate(const MotiveExpr& e);
FormalMotive motive_parse(std::string_view text);

/// T + N(n)[2n-1] for odd n, T + T(n)[2n-1] for even n.
FormalMotive affine_quadric_motive(int n);

struct TorsorMotive {
    MotiveExprPtr tree;
    /// Present only when the form is split and every cone map vanishes.
    std::optional<FormalMotive> expanded;
};
TorsorMotive torsor_motive(int n, bool split);

struct MotiveCohomology {
    PoincareTable table;
    std::vector<std::string> warnings;
    /// Cells of Ma-summands whose dimension is not forced by the neighbouring
    /// dimensions alone and needed the connecting map.
    std::vector<Bidegree> ambiguous;
};

/// Table of a normal-form motive: additive over sums, the twist (i)[j] moves
/// entries by (+i, +j). Supported summands are single atoms T, N^k (k >= -1),
/// Mt, Xa, Xt and Ma; Ma is obtained from T -> Ma -> N with connecting map
/// x -> x mu.
MotiveCohomology motive_cohomology(const FieldModel& model, const FormalMotive& m, Bidegree box);

/// H(Ma) on a box, with the list of cells the connecting map decided.
MotiveCohomology rost_cohomology(const FieldModel& model, Bidegree box);

}  // namespace subtle

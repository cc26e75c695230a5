#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subtle/bidegree.hpp"
#include "subtle/polynomial.hpp"
#include "subtle/table.hpp"

namespace subtle {

enum class GenOrigin { milnor, tau, cls, module_generator };

std::string_view to_string(GenOrigin origin);

struct GenSpec {
    std::string name;
    Bidegree deg;
    GenOrigin origin = GenOrigin::cls;
};

/// A ring, or an H-module given by module generators. Module monomials carry
/// at most one module generator; without a unit component they carry exactly
/// one (the bare ring part is then not part of the module).
enum class Shape { ring, module_with_unit, module_without_unit };

class Presentation;

namespace detail {
struct PresentationData;
}

/// Element of a presentation, always held in normal form.
class Element {
public:
    Element() = default;

    Presentation presentation() const;
    const Polynomial& polynomial() const noexcept { return poly_; }
    bool is_zero() const noexcept { return poly_.empty(); }
    bool is_homogeneous() const noexcept { return subtle::is_homogeneous(poly_); }
    /// Bidegree of a nonzero homogeneous element.
    std::optional<Bidegree> bidegree() const noexcept;
    std::string str() const;

    Element operator+(const Element& o) const;
    Element operator*(const Element& o) const;
    Element& operator+=(const Element& o) { return *this = *this + o; }
    friend bool operator==(const Element& a, const Element& b) { return a.owner_ == b.owner_ && a.poly_ == b.poly_; }

private:
    friend class Presentation;
    Element(std::shared_ptr<const detail::PresentationData> owner, Polynomial p)
        : owner_(std::move(owner)), poly_(std::move(p))
    {
    }

    std::shared_ptr<const detail::PresentationData> owner_;
    Polynomial poly_;
};

/// Finite list of homogeneous generators of an ideal (or submodule), with
/// the total degree up to which the list is known to be complete.
struct IdealGens {
    std::vector<Element> gens;
    int degree_bound = 0;
};

/// Finitely presented bigraded F_2-algebra (or module) with a Groebner basis
/// truncated at total degree w + d <= bound. Immutable; copies share state.
class Presentation {
public:
    /// The ground field F_2 with no generators.
    Presentation();

    /// Generators are stably ordered milnor < tau < class < module_generator;
    /// relation strings are parsed against that list.
    static Presentation create(std::string label, std::vector<GenSpec> gens, const std::vector<std::string>& relations,
                               int bound, Shape shape = Shape::ring);
    /// Relations as polynomials over `gens`, which must already be in
    /// canonical order (as returned by generators() of a sibling).
    static Presentation from_polynomials(std::string label, std::vector<GenSpec> gens,
                                         std::vector<Polynomial> relations, int bound, Shape shape = Shape::ring);

    const std::string& label() const noexcept;
    std::uint64_t id() const noexcept;
    const std::vector<GenSpec>& generators() const noexcept;
    std::span<const Bidegree> gen_degrees() const noexcept;
    Shape shape() const noexcept;
    bool is_module() const noexcept { return shape() != Shape::ring; }
    int bound() const noexcept;
    const std::vector<Polynomial>& relations() const noexcept;
    const std::vector<Polynomial>& groebner() const noexcept;
    /// No relation involves a class or module generator.
    bool is_free_over_base() const noexcept;

    std::optional<std::size_t> index_of(std::string_view name) const;
    Monomial unit_monomial() const;
    Monomial gen_monomial(std::size_t i) const;
    int module_generator_count(const Monomial& m) const noexcept;

    Polynomial parse_raw(std::string_view text) const;
    Element parse(std::string_view text) const { return normal_form(parse_raw(text)); }
    Element normal_form(const Polynomial& p) const;
    /// Rewrites an element of another presentation here, matching generators by name.
    Polynomial import(const Element& e) const;
    Polynomial import(const Polynomial& p, const Presentation& from) const;

    Element zero() const;
    Element one() const;
    Element gen(std::string_view name) const;

    /// All admissible monomials of bidegree b, ignoring relations.
    std::vector<Monomial> monomials(Bidegree b) const;
    /// Monomials of bidegree b not divisible by any Groebner leading term.
    std::vector<Monomial> standard_monomials(Bidegree b) const;
    /// Standard monomials for every cell of the box at once (sorted descending).
    std::map<Bidegree, std::vector<Monomial>> standard_basis(Bidegree box) const;
    /// Same, but every admissible monomial (used for free-algebra enumeration).
    std::map<Bidegree, std::vector<Monomial>> monomial_basis(Bidegree box) const;

    PoincareTable table(int wmax, int dmax) const;

    /// Recomputes the Groebner basis up to a larger bound; returns *this when
    /// the bound is not larger.
    Presentation with_bound(int bound) const;
    /// Same generators, relations extended by `extra`.
    Presentation with_relations(std::string label, const std::vector<Polynomial>& extra) const;

    std::string format(const Monomial& m) const;
    std::string format(const Polynomial& p) const;

    friend bool operator==(const Presentation& a, const Presentation& b) { return a.data_ == b.data_; }

private:
    friend class Element;
    explicit Presentation(std::shared_ptr<const detail::PresentationData> d) : data_(std::move(d)) {}
    void check_bound(const Polynomial& p) const;

    std::shared_ptr<const detail::PresentationData> data_;
};

/// p / I: same generators, relations extended by I, new Groebner basis.
Presentation quotient(const Presentation& p, const IdealGens& ideal, std::string label = {});

/// Generators of (I : f) = { x : x f in I }, computed per bidegree as the
/// kernel of multiplication by f on p / I, certified up to total degree
/// `bound` for x.
IdealGens colon_ideal(const Presentation& p, const IdealGens& ideal, const Element& f, int bound);

/// Coordinates of a homogeneous element in the standard monomial basis of
/// its cell; `basis` must be the sorted standard monomials of that bidegree.
std::vector<std::size_t> coordinates(const Polynomial& p, const std::vector<Monomial>& basis);

}  // namespace subtle

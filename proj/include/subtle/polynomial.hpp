#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subtle/bidegree.hpp"

namespace subtle {

/// Exponent vector over a presentation's generator list, with its bidegree
/// cached. Generators are indexed in the presentation's fixed order.
struct Monomial {
    Bidegree deg{};
    std::vector<std::uint8_t> exp;

    bool is_one() const noexcept;
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
};

/// Monomial order: total degree w+d, then weight, then lexicographic with
/// the highest-indexed generator most significant. Returns <0, 0, >0.
int compare(const Monomial& a, const Monomial& b) noexcept;

inline bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

Monomial operator*(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b) noexcept;
/// b / a, assuming divides(a, b).
Monomial quotient(const Monomial& b, const Monomial& a);
Monomial lcm(const Monomial& a, const Monomial& b, std::span<const Bidegree> gen_degs);
bool coprime(const Monomial& a, const Monomial& b) noexcept;

/// F_2-polynomial: strictly decreasing list of distinct monomials.
using Polynomial = std::vector<Monomial>;

Polynomial add(const Polynomial& a, const Polynomial& b);
void add_to(Polynomial& a, const Polynomial& b);
Polynomial multiply(const Monomial& m, const Polynomial& p);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
/// Sorts and cancels pairs, turning an arbitrary monomial list into a Polynomial.
Polynomial canonicalize(std::vector<Monomial> terms);

/// True when every term has the same bidegree (the zero polynomial counts).
bool is_homogeneous(const Polynomial& p) noexcept;

}  // namespace subtle

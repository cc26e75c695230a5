#include "subtle/polynomial.hpp"

#include <algorithm>
#include <cassert>

namespace subtle {

bool Monomial::is_one() const noexcept
{
    return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
}

int compare(const Monomial& a, const Monomial& b) noexcept
{
    const int ta = a.deg.total(), tb = b.deg.total();
    if (ta != tb)
        return ta < tb ? -1 : 1;
    if (a.deg.w != b.deg.w)
        return a.deg.w < b.deg.w ? -1 : 1;
    for (std::size_t i = a.exp.size(); i-- > 0;)
        if (a.exp[i] != b.exp[i])
            return a.exp[i] < b.exp[i] ? -1 : 1;
    return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    assert(a.exp.size() == b.exp.size());
    Monomial r{a.deg + b.deg, a.exp};
    for (std::size_t i = 0; i < r.exp.size(); ++i)
        r.exp[i] = static_cast<std::uint8_t>(r.exp[i] + b.exp[i]);
    return r;
}

bool divides(const Monomial& a, const Monomial& b) noexcept
{
    if (a.deg.w > b.deg.w || a.deg.d > b.deg.d)
        return false;
    for (std::size_t i = 0; i < a.exp.size(); ++i)
        if (a.exp[i] > b.exp[i])
            return false;
    return true;
}

Monomial quotient(const Monomial& b, const Monomial& a)
{
    Monomial r{b.deg - a.deg, b.exp};
    for (std::size_t i = 0; i < r.exp.size(); ++i)
        r.exp[i] = static_cast<std::uint8_t>(r.exp[i] - a.exp[i]);
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b, std::span<const Bidegree> gen_degs)
{
    Monomial r{a.deg, a.exp};
    for (std::size_t i = 0; i < r.exp.size(); ++i)
        if (b.exp[i] > r.exp[i]) {
            const int extra = b.exp[i] - r.exp[i];
            r.deg += Bidegree{gen_degs[i].w * extra, gen_degs[i].d * extra};
            r.exp[i] = b.exp[i];
        }
    return r;
}

bool coprime(const Monomial& a, const Monomial& b) noexcept
{
    for (std::size_t i = 0; i < a.exp.size(); ++i)
        if (a.exp[i] && b.exp[i])
            return false;
    return true;
}

Polynomial add(const Polynomial& a, const Polynomial& b)
{
    Polynomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const int c = compare(a[i], b[j]);
        if (c > 0)
            r.push_back(a[i++]);
        else if (c < 0)
            r.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    r.insert(r.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    r.insert(r.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return r;
}

void add_to(Polynomial& a, const Polynomial& b) { a = add(a, b); }

Polynomial multiply(const Monomial& m, const Polynomial& p)
{
    Polynomial r;
    r.reserve(p.size());
    for (const auto& t : p)
        r.push_back(m * t);
    return r;
}

Polynomial canonicalize(std::vector<Monomial> terms)
{
    std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
    Polynomial r;
    r.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        while (j < terms.size() && compare(terms[i], terms[j]) == 0)
            ++j;
        if ((j - i) % 2 == 1)
            r.push_back(std::move(terms[i]));
        i = j;
    }
    return r;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b)
{
    std::vector<Monomial> terms;
    terms.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b)
            terms.push_back(x * y);
    return canonicalize(std::move(terms));
}

bool is_homogeneous(const Polynomial& p) noexcept
{
    for (const auto& t : p)
        if (t.deg != p.front().deg)
            return false;
    return true;
}

}  // namespace subtle

#pragma once

#include <compare>
#include <string>

namespace subtle {

/// Motivic bidegree, written (w)[d]: weight w, cohomological degree d.
/// tau sits at (1)[0], a Milnor symbol of degree n at (n)[n].
struct Bidegree {
    int w = 0;
    int d = 0;

    constexpr int total() const noexcept { return w + d; }

    constexpr Bidegree operator+(Bidegree o) const noexcept { return {w + o.w, d + o.d}; }
    constexpr Bidegree operator-(Bidegree o) const noexcept { return {w - o.w, d - o.d}; }
    constexpr Bidegree& operator+=(Bidegree o) noexcept
    {
        w += o.w;
        d += o.d;
        return *this;
    }

    /// Componentwise partial order.
    constexpr bool within(Bidegree box) const noexcept { return w <= box.w && d <= box.d; }
    constexpr bool nonnegative() const noexcept { return w >= 0 && d >= 0; }

    friend constexpr auto operator<=>(const Bidegree&, const Bidegree&) = default;

    std::string str() const { return "(" + std::to_string(w) + ")[" + std::to_string(d) + "]"; }
};

}  // namespace subtle

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subtle/bidegree.hpp"

namespace subtle {

/// Bigraded F_2-dimension counts on the box 0 <= w <= wmax, 0 <= d <= dmax.
class PoincareTable {
public:
    PoincareTable() = default;
    PoincareTable(int wmax, int dmax);

    int wmax() const noexcept { return wmax_; }
    int dmax() const noexcept { return dmax_; }
    Bidegree box() const noexcept { return {wmax_, dmax_}; }

    /// 0 outside the box.
    std::uint64_t at(int w, int d) const noexcept;
    std::uint64_t at(Bidegree b) const noexcept { return at(b.w, b.d); }
    void set(int w, int d, std::uint64_t v);
    void add(int w, int d, std::uint64_t v);

    /// Bidegrees of the free class generators when this is the table of a
    /// polynomial algebra freely generated over its base ring.
    const std::optional<std::vector<Bidegree>>& free_generators() const noexcept { return free_generators_; }
    void set_free_generators(std::vector<Bidegree> gens) { free_generators_ = std::move(gens); }

    /// Twist by (i)[j]: entry (w,d) of the result is entry (w-i, d-j) of this.
    /// Cells that would land outside the box are dropped; `clipped` counts
    /// the nonzero cells pushed below the box origin.
    PoincareTable shifted(Bidegree by, int* clipped = nullptr) const;
    /// Same entries re-boxed; cells outside this table's box read as 0.
    PoincareTable reboxed(Bidegree box) const;

    PoincareTable& operator+=(const PoincareTable& o);
    friend PoincareTable operator+(PoincareTable a, const PoincareTable& b) { return a += b; }
    /// Counts only; generator metadata is ignored.
    friend bool operator==(const PoincareTable& a, const PoincareTable& b)
    {
        return a.wmax_ == b.wmax_ && a.dmax_ == b.dmax_ && a.counts_ == b.counts_;
    }

    /// {"box": [W, D], "entries": [[w, d, count], ...]}, lexicographic.
    nlohmann::json to_json() const;
    static PoincareTable from_json(const nlohmann::json& j);
    /// Grid with weights as rows and degrees as columns.
    std::string to_text() const;

    /// First cell where the two tables differ, if any.
    friend std::optional<Bidegree> first_difference(const PoincareTable& a, const PoincareTable& b);

private:
    int wmax_ = 0;
    int dmax_ = 0;
    std::vector<std::uint64_t> counts_ = std::vector<std::uint64_t>(1, 0);
    std::optional<std::vector<Bidegree>> free_generators_;
};

std::optional<Bidegree> first_difference(const PoincareTable& a, const PoincareTable& b);

/// Table of (free polynomial algebra over H) tensor_H (module): convolves
/// `m` against the monomials in the free table's class generators.
PoincareTable table_tensor(const PoincareTable& free, const PoincareTable& m);

}  // namespace subtle

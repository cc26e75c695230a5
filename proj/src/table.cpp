#include "subtle/table.hpp"

#include <iomanip>
#include <sstream>

#include "subtle/error.hpp"

namespace subtle {

PoincareTable::PoincareTable(int wmax, int dmax) : wmax_(wmax), dmax_(dmax)
{
    if (wmax < 0 || dmax < 0)
        throw Error(ErrorKind::InvalidArgument, "table box must be nonnegative");
    counts_.assign(static_cast<std::size_t>(wmax + 1) * static_cast<std::size_t>(dmax + 1), 0);
}

std::uint64_t PoincareTable::at(int w, int d) const noexcept
{
    if (w < 0 || d < 0 || w > wmax_ || d > dmax_)
        return 0;
    return counts_[static_cast<std::size_t>(w) * static_cast<std::size_t>(dmax_ + 1) + static_cast<std::size_t>(d)];
}

void PoincareTable::set(int w, int d, std::uint64_t v)
{
    if (w < 0 || d < 0 || w > wmax_ || d > dmax_)
        throw Error(ErrorKind::ExceedsBound, "cell " + Bidegree{w, d}.str() + " outside table box");
    counts_[static_cast<std::size_t>(w) * static_cast<std::size_t>(dmax_ + 1) + static_cast<std::size_t>(d)] = v;
}

void PoincareTable::add(int w, int d, std::uint64_t v) { set(w, d, at(w, d) + v); }

PoincareTable PoincareTable::shifted(Bidegree by, int* clipped) const
{
    PoincareTable r(wmax_, dmax_);
    int lost = 0;
    for (int w = 0; w <= wmax_; ++w)
        for (int d = 0; d <= dmax_; ++d) {
            const auto v = at(w, d);
            if (!v)
                continue;
            const int tw = w + by.w, td = d + by.d;
            if (tw < 0 || td < 0) {
                ++lost;
                continue;
            }
            if (tw <= wmax_ && td <= dmax_)
                r.set(tw, td, v);
        }
    if (clipped)
        *clipped = lost;
    return r;
}

PoincareTable PoincareTable::reboxed(Bidegree box) const
{
    PoincareTable r(box.w, box.d);
    for (int w = 0; w <= box.w; ++w)
        for (int d = 0; d <= box.d; ++d)
            r.set(w, d, at(w, d));
    return r;
}

PoincareTable& PoincareTable::operator+=(const PoincareTable& o)
{
    if (o.wmax_ != wmax_ || o.dmax_ != dmax_)
        throw Error(ErrorKind::ShapeMismatch, "adding tables with different boxes");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] += o.counts_[i];
    free_generators_.reset();
    return *this;
}

nlohmann::json PoincareTable::to_json() const
{
    nlohmann::json entries = nlohmann::json::array();
    for (int w = 0; w <= wmax_; ++w)
        for (int d = 0; d <= dmax_; ++d)
            entries.push_back({w, d, at(w, d)});
    return {{"box", {wmax_, dmax_}}, {"entries", entries}};
}

PoincareTable PoincareTable::from_json(const nlohmann::json& j)
{
    PoincareTable t(j.at("box").at(0).get<int>(), j.at("box").at(1).get<int>());
    for (const auto& e : j.at("entries"))
        t.set(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::uint64_t>());
    return t;
}

std::string PoincareTable::to_text() const
{
    std::uint64_t widest = 0;
    for (auto c : counts_)
        widest = std::max(widest, c);
    const int cell = std::max({3, static_cast<int>(std::to_string(widest).size()) + 1,
                               static_cast<int>(std::to_string(dmax_).size()) + 1});
    std::ostringstream os;
    os << "w\\d";
    for (int d = 0; d <= dmax_; ++d)
        os << std::setw(cell) << d;
    os << '\n';
    for (int w = 0; w <= wmax_; ++w) {
        os << std::setw(3) << w;
        for (int d = 0; d <= dmax_; ++d)
            os << std::setw(cell) << at(w, d);
        os << '\n';
    }
    return os.str();
}

std::optional<Bidegree> first_difference(const PoincareTable& a, const PoincareTable& b)
{
    const int W = std::max(a.wmax_, b.wmax_), D = std::max(a.dmax_, b.dmax_);
    for (int w = 0; w <= W; ++w)
        for (int d = 0; d <= D; ++d)
            if (a.at(w, d) != b.at(w, d))
                return Bidegree{w, d};
    return std::nullopt;
}

namespace {

void convolve(const std::vector<Bidegree>& gens, std::size_t from, Bidegree offset, const PoincareTable& m,
              PoincareTable& out)
{
    if (!offset.within(out.box()))
        return;
    if (from == gens.size()) {
        for (int w = offset.w; w <= out.wmax(); ++w)
            for (int d = offset.d; d <= out.dmax(); ++d)
                out.add(w, d, m.at(w - offset.w, d - offset.d));
        return;
    }
    // choose the exponent of gens[from], then recurse
    const Bidegree g = gens[from];
    for (Bidegree o = offset; o.within(out.box()); o += g) {
        convolve(gens, from + 1, o, m, out);
        if (g.total() == 0)
            throw Error(ErrorKind::ShapeMismatch, "free generator of bidegree (0)[0]");
    }
}

}  // namespace

PoincareTable table_tensor(const PoincareTable& free, const PoincareTable& m)
{
    if (!free.free_generators())
        throw Error(ErrorKind::ShapeMismatch, "free table carries no generator metadata");
    PoincareTable out(m.wmax(), m.dmax());
    convolve(*free.free_generators(), 0, {0, 0}, m, out);
    return out;
}

}  // namespace subtle

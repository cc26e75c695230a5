#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "subtle/checks.hpp"
#include "subtle/error.hpp"
#include "subtle/maps.hpp"
#include "subtle/motives.hpp"
#include "subtle/rings.hpp"
#include "subtle/steenrod.hpp"

namespace subtle::checks {

std::string CriterionResult::line() const
{
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title;
    if (!detail.empty())
        os << " [" << detail << "]";
    return os.str();
}

nlohmann::json CriterionResult::to_json() const
{
    return {{"id", id}, {"title", title}, {"pass", pass}, {"detail", detail}, {"data", data}};
}

namespace {

const std::vector<FieldModel>& models()
{
    static const std::vector<FieldModel> m{FieldModel::builtin(BuiltinTag::real),
                                           FieldModel::builtin(BuiltinTag::finite_field)};
    return m;
}

Bidegree box_for(const SuiteConfig& c, Bidegree fallback) { return c.box.value_or(fallback); }

int bound_for(Bidegree box) { return box.total() + 2; }

/// Collects failures and finishes the result with a timing and summary.
class Run {
public:
    Run(int id, std::string title) : start_(std::chrono::steady_clock::now())
    {
        r_.id = id;
        r_.title = std::move(title);
        r_.data["failures"] = nlohmann::json::array();
    }

    void check(bool ok, const std::string& what)
    {
        ++cases_;
        if (!ok) {
            r_.data["failures"].push_back(what);
            if (first_.empty())
                first_ = what;
        }
    }
    void note(const std::string& key, nlohmann::json v) { r_.data[key] = std::move(v); }

    CriterionResult finish(const std::string& scope)
    {
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        r_.seconds = s;
        r_.pass = first_.empty() && cases_ > 0;
        std::ostringstream os;
        os << cases_ << " checks, " << scope;
        if (!first_.empty())
            os << "; first failure: " << first_;
        else if (cases_ == 0)
            os << "; nothing was checked";
        r_.detail = os.str();
        r_.data["checks"] = cases_;
        r_.data["seconds"] = s;
        return r_;
    }

    template <class F>
    void guard(const std::string& what, F&& f)
    {
        try {
            f();
        } catch (const std::exception& e) {
            check(false, what + ": " + e.what());
        }
    }

private:
    CriterionResult r_;
    std::size_t cases_ = 0;
    std::string first_;
    std::chrono::steady_clock::time_point start_;
};

std::string box_str(Bidegree b) { return "box " + b.str(); }

}  // namespace

CriterionResult criterion_bu_decomposition(const SuiteConfig& c)
{
    Run run(1, "H(BU_n) presentation equals the sum of H(N^odd) c^I");
    const auto box = box_for(c, {8, 8});
    for (const auto& m : models())
        for (int n = 1; n <= 3; ++n)
            run.guard(m.name() + " n=" + std::to_string(n), [&] {
                const auto t = build_BUn(m, n, bound_for(box)).table(box.w, box.d);
                const auto oracle = bu_decomposition(m, n, box);
                const auto diff = first_difference(t, oracle);
                run.check(!diff, m.name() + " n=" + std::to_string(n) +
                                     (diff ? " differs at " + diff->str() + ": " + std::to_string(t.at(*diff)) +
                                                 " vs " + std::to_string(oracle.at(*diff))
                                           : ""));
            });
    return run.finish(box_str(box));
}

CriterionResult criterion_kernel(const SuiteConfig& c)
{
    Run run(2, "kernel of H(BO_2n) -> H(BU_n) is the stated ideal");
    const auto box = box_for(c, {8, 8});
    for (const auto& m : models())
        for (int n = 1; n <= 3; ++n)
            run.guard(m.name() + " n=" + std::to_string(n), [&] {
                auto h = comp_map(m, n, bound_for(box));
                const auto ideal = comp_kernel_ideal(m, h.source, n);
                const auto k = kernel_match(h, ideal, box);
                std::string why;
                if (!k.generators_vanish)
                    why = " generator " + k.nonvanishing.front() + " survives";
                else if (k.first_mismatch)
                    why = " tables differ at " + k.first_mismatch->str();
                run.check(k.match(), m.name() + " n=" + std::to_string(n) + why);
            });
    return run.finish(box_str(box));
}

CriterionResult criterion_diagonal(const SuiteConfig& c)
{
    Run run(3, "H(N^n) agrees with H(N^(n-1)) off the line d = w + n");
    const auto box = box_for(c, {8, 8});
    for (const auto& m : models()) {
        std::vector<std::uint64_t> quot;
        for (int w = 0; w <= box.w; ++w)
            quot.push_back(dense_alpha_rank(m, w));
        PoincareTable prev = build_H(m, bound_for(box)).table(box.w, box.d);
        for (int n = 1; n <= 5; ++n)
            run.guard(m.name() + " n=" + std::to_string(n), [&] {
                const auto cur = build_Npow(m, n, bound_for(box)).table(box.w, box.d);
                std::string bad;
                for (int w = 0; w <= box.w && bad.empty(); ++w)
                    for (int d = 0; d <= box.d && bad.empty(); ++d) {
                        // above the line the new summand K^M/Ann mu_n appears exactly on d = w + n
                        const std::uint64_t want =
                            prev.at(w, d) + (d > w + n - 1 && d == w + n ? quot[static_cast<std::size_t>(w)] : 0);
                        if (cur.at(w, d) != want)
                            bad = " at " + Bidegree{w, d}.str() + ": " + std::to_string(cur.at(w, d)) + " vs " +
                                  std::to_string(want);
                    }
                run.check(bad.empty(), m.name() + " n=" + std::to_string(n) + bad);
                prev = cur;
            });
    }
    return run.finish(box_str(box));
}

CriterionResult criterion_colimit(const SuiteConfig& c)
{
    Run run(4, "H(N^m) stabilizes to H(X_alpha) for m >= D");
    const auto box = box_for(c, {6, 6});
    for (const auto& m : models())
        run.guard(m.name(), [&] {
            const auto r = check_colimit(m, box);
            run.check(r.stable, m.name() + " colimit" + (r.failures.empty() ? "" : ": " + r.failures.front()));
            const auto x = build_Xalpha(m, bound_for(box)).table(box.w, box.d);
            for (int k = box.d; k <= box.d + 1; ++k) {
                const auto t = build_Npow(m, k, bound_for(box)).table(box.w, box.d);
                const auto diff = first_difference(t, x);
                run.check(!diff, m.name() + " m=" + std::to_string(k) + (diff ? " differs at " + diff->str() : ""));
            }
        });
    return run.finish(box_str(box));
}

CriterionResult criterion_twist(const SuiteConfig& c)
{
    Run run(5, "twist of H(X_alpha)[u] is a bijective involution");
    const auto box = box_for(c, {6, 6});
    for (const auto& m : models())
        for (int n = 1; n <= 2; ++n)
            run.guard(m.name() + " n=" + std::to_string(n), [&] {
                auto t = twist_iso(m, n, bound_for(box));
                const auto r = hom_verify(t, box);
                std::string why;
                for (const auto& cell : r.cells)
                    if (cell.rank != cell.source_dim || cell.rank != cell.target_dim) {
                        why = " not bijective at " + cell.cell.str();
                        break;
                    }
                run.check(r.well_defined && r.surjective && r.injective,
                          m.name() + " n=" + std::to_string(n) + (r.well_defined ? why : " not well defined"));
                const auto tt = compose(t, t);
                for (std::size_t i = 0; i < tt.images.size(); ++i) {
                    const auto& g = t.source.generators()[i].name;
                    run.check(tt.images[i] == t.source.gen(g), m.name() + " n=" + std::to_string(n) +
                                                                   " twist twice moves " + g);
                }
            });
    return run.finish(box_str(box));
}

CriterionResult criterion_groebner_oracle(const SuiteConfig& c)
{
    Run run(6, "Groebner tables match dense row reduction");
    const auto box = box_for(c, {6, 6});
    static const char* blocks[] = {"H",    "BO:1",   "BO:2",   "BO:3",   "BU:1",    "BU:2",  "BU:3",
                                   "BOp:1", "BOp:2", "BOh:1",  "BOh:2",  "Npow:1",  "Npow:2", "Npow:3",
                                   "Mtilde", "Xalpha", "Xtilde", "XBU:1", "XBU:2"};
    std::vector<FieldModel> all = models();
    all.push_back(FieldModel::builtin(BuiltinTag::quadratically_closed));
    nlohmann::json rings = nlohmann::json::array();
    for (const auto& m : all)
        for (const char* b : blocks) {
            const auto id = BlockId::parse(b);
            Presentation p;
            try {
                p = build_block(m, id, bound_for(box));
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::MissingAlpha)
                    continue;
                run.check(false, m.name() + " " + b + ": " + e.what());
                continue;
            }
            run.guard(m.name() + " " + b, [&] {
                const auto r = dense_oracle(p, box);
                rings.push_back(m.name() + " " + p.label());
                std::string why;
                if (!r.ok()) {
                    const auto& x = r.mismatches.front();
                    why = " at " + x.cell.str() + ": dense " + std::to_string(x.dense) + " vs " +
                          std::to_string(x.groebner);
                }
                run.check(r.ok(), m.name() + " " + p.label() + why);
            });
        }
    run.note("rings", rings);
    return run.finish(box_str(box));
}

CriterionResult criterion_motives(const SuiteConfig& c)
{
    Run run(7, "motive rewriting is confluent, N is invertible, torsors match quadrics");
    std::uint64_t state = c.seed;
    for (int i = 0; i < 1000; ++i) {
        const auto e = random_motive_expr(state, 6);
        run.guard("expression " + e->str(), [&] {
            const auto direct = motive_evaluate(*e);
            std::uint64_t s1 = state ^ 0x5bd1e995u, s2 = state + 7;
            const auto a = rewrite_stepwise(*e, s1), b = rewrite_stepwise(*e, s2);
            const bool ok = a == direct && b == direct && motive_parse(direct.str()) == direct;
            run.check(ok, e->str() + " -> " + direct.str() + " / " + a.str() + " / " + b.str());
        });
    }
    for (int k = -5; k <= 5; ++k)
        run.check(motive_tensor(FormalMotive::atom(AtomBase::N, k), FormalMotive::atom(AtomBase::N, -k)) ==
                      FormalMotive::unit(),
                  "N^" + std::to_string(k) + " * N^" + std::to_string(-k));
    for (int n = 0; n <= 3; ++n)
        run.guard("torsor n=" + std::to_string(n), [&] {
            FormalMotive prod = FormalMotive::unit();
            for (int i = 1; i <= n; ++i)
                prod = motive_tensor(prod, affine_quadric_motive(i));
            const auto t = torsor_motive(n, true);
            run.check(t.expanded && *t.expanded == prod, "torsor n=" + std::to_string(n));
        });
    run.note("seed", c.seed);
    return run.finish("1000 random expressions, seed " + std::to_string(c.seed));
}

CriterionResult criterion_sq1(const SuiteConfig& c)
{
    Run run(8, "Sq1 satisfies Leibniz and squares to zero; the mu u_2 witness");
    const auto box = box_for(c, {5, 5});
    for (const auto& m : models())
        for (const char* b : {"BO:4", "BOp:1"})
            run.guard(m.name() + " " + b, [&] {
                const auto p = build_block(m, BlockId::parse(b), box.total() + 3);
                auto der = sq1_define(m, p);
                const auto r = sq1_check(der, box);
                std::string why;
                if (!r.consistent)
                    why = " no admissible values";
                else if (!r.descends)
                    why = " Sq1(" + r.failing_relations.front().first + ") = " + r.failing_relations.front().second;
                else if (!r.square_zero)
                    why = " " + r.square_zero_failures.front();
                else if (!r.leibniz)
                    why = " Leibniz fails on " + r.leibniz_failures.front();
                run.check(r.ok(), m.name() + " " + p.label() + why);
            });
    run.guard("witness", [&] {
        const auto& real = models().front();
        const auto x = build_Xalpha(real, 8, {{u_name(1), {0, 1}}, {u_name(2), {1, 2}}});
        const auto der = sq1_define(real, x);
        const auto img = sq1_apply(der, x.parse("mu*u_2"));
        run.check(img == x.parse("mu^2*u_2 + mu*u_1*u_2") && !img.is_zero(), "Sq1(mu*u_2) = " + img.str());
        run.note("witness", img.str());
    });
    return run.finish(box_str(box));
}

CriterionResult criterion_specialization(const SuiteConfig& c)
{
    Run run(9, "universal relations vanish at the zero specialization");
    const int bound = box_for(c, {6, 6}).total() + 2;
    for (const auto& m : models()) {
        const auto x = build_Xalpha(m, bound);
        for (int n = 1; n <= 4; ++n)
            run.guard(m.name() + " n=" + std::to_string(n), [&] {
                const auto r = specialize_classes(build_BUn(m, n, bound), {}, x);
                run.check(r.well_defined, m.name() + " BU_" + std::to_string(n) + " relations" +
                                              (r.failing.empty() ? "" : ": " + r.failing.front()));
                run.check(r.split_compatible, m.name() + " BU_" + std::to_string(n) + " splitting classes");
            });
        run.guard(m.name() + " negative control", [&] {
            // keeping c_1 but killing d_1 breaks tau d_1 = alpha c_1, since alpha c_1 = tau d_1 != 0
            const auto bu1 = build_BUn(m, 1, bound);
            const auto bad = specialize_classes(bu1, {{c_name(1), c_name(1)}, {d_name(1), "0"}}, bu1);
            const std::string rel = "tau*d_1 + " + m.alpha().str() + "*c_1";
            run.check(!bad.well_defined && bad.failing.size() == 1 && bad.failing.front() == rel,
                      m.name() + " negative control should fail on " + rel);
            run.check(!bad.split_compatible, m.name() + " negative control should not be split-compatible");
        });
        for (int n : {1, 3})
            run.guard(m.name() + " odd n=" + std::to_string(n), [&] {
                const auto r = odd_form_relations(m, n, std::max(bound, 4 * n + 2));
                run.check(r.holds, m.name() + " odd-form relations n=" + std::to_string(n));
            });
    }
    return run.finish("bound " + std::to_string(bound));
}

std::vector<GoldenCase> load_golden(const std::string& dir)
{
    namespace fs = std::filesystem;
    std::vector<GoldenCase> out;
    if (!fs::is_directory(dir))
        return out;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".args")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    for (const auto& f : files) {
        GoldenCase g;
        g.name = f.stem().string();
        std::istringstream lines(slurp(f));
        for (std::string l; std::getline(lines, l);)
            if (!l.empty()) {
                // @GOLDEN@ names the golden directory itself
                for (auto at = l.find("@GOLDEN@"); at != std::string::npos; at = l.find("@GOLDEN@"))
                    l.replace(at, 8, dir);
                g.argv.push_back(l);
            }
        auto expected = f;
        expected.replace_extension(".out");
        g.expected = slurp(expected);
        auto code = f;
        code.replace_extension(".exit");
        if (fs::exists(code))
            g.exit_code = std::stoi(slurp(code));
        out.push_back(std::move(g));
    }
    return out;
}

CriterionResult criterion_golden(const SuiteConfig& c)
{
    Run run(10, "pinned commands reproduce their golden outputs");
    const auto cases = load_golden(c.golden_dir);
    if (!c.runner)
        run.check(false, "no command runner");
    if (cases.empty())
        run.check(false, "no golden cases in '" + c.golden_dir + "'");
    for (const auto& g : cases)
        if (c.runner)
            run.guard(g.name, [&] {
                std::string out;
                const int code = c.runner(g.argv, out);
                std::string why;
                if (code != g.exit_code)
                    why = ": exit " + std::to_string(code) + ", expected " + std::to_string(g.exit_code);
                else if (out != g.expected) {
                    std::size_t at = 0;
                    while (at < out.size() && at < g.expected.size() && out[at] == g.expected[at])
                        ++at;
                    why = ": output differs at byte " + std::to_string(at);
                }
                run.check(why.empty(), g.name + why);
            });
    return run.finish(std::to_string(cases.size()) + " cases");
}

std::vector<CriterionResult> run_all(const SuiteConfig& c)
{
    return {criterion_bu_decomposition(c), criterion_kernel(c),   criterion_diagonal(c),
            criterion_colimit(c),          criterion_twist(c),    criterion_groebner_oracle(c),
            criterion_motives(c),          criterion_sq1(c),      criterion_specialization(c),
            criterion_golden(c)};
}

}  // namespace subtle::checks

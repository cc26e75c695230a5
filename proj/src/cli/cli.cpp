#include "subtle/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "subtle/checks.hpp"
#include "subtle/error.hpp"
#include "subtle/maps.hpp"
#include "subtle/milnor.hpp"
#include "subtle/motives.hpp"
#include "subtle/rings.hpp"
#include "subtle/steenrod.hpp"

namespace subtle::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int bound_for(Bidegree box) { return box.total() + 2; }

json box_json(Bidegree b) { return json::array({b.w, b.d}); }

std::string box_line(Bidegree b) { return "box: " + b.str() + "\n"; }

/// Result of one subcommand: rendered text, JSON, and the exit status.
struct Output {
    std::string text;
    json data;
    int status = 0;
};

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : sep) + x;
    return s;
}

Output field_show(const FieldModel& m, const RunConfig& c)
{
    Output o;
    o.data = m.to_json();
    json dims = json::array();
    std::vector<std::string> d;
    for (int n = 0; n <= c.box.d; ++n) {
        dims.push_back(m.dim(n));
        d.push_back(std::to_string(m.dim(n)));
    }
    o.data["km_dims"] = dims;
    o.data["box"] = box_json(c.box);
    std::vector<std::string> gens, rels;
    for (const auto& g : m.km().generators())
        gens.push_back(g.name);
    for (const auto& r : m.km().relations())
        rels.push_back(m.km().format(r));
    std::ostringstream os;
    os << "model: " << m.name() << "\n";
    os << "generators: " << (gens.empty() ? "(none)" : join(gens, ", ")) << "\n";
    os << "relations: " << (rels.empty() ? "(none)" : join(rels, ", ")) << "\n";
    os << "alpha: " << (m.has_alpha() ? m.alpha().str() : "(none)") << "\n";
    os << "{-1}: " << (m.minus_one() ? m.minus_one()->str() : "(none)") << "\n";
    os << "dim K^M_n/2 for n = 0.." << c.box.d << ": " << join(d, " ") << "\n";
    os << box_line(c.box);
    o.text = os.str();
    return o;
}

std::string shape_name(Shape s)
{
    switch (s) {
    case Shape::ring: return "ring";
    case Shape::module_with_unit: return "module";
    case Shape::module_without_unit: return "module without unit";
    }
    return "?";
}

Output ring_build(const FieldModel& m, const BlockId& id, const RunConfig& c)
{
    if (id.table_only())
        throw Error(ErrorKind::InvalidArgument, id.str() + " exists only as a table; use ring table");
    const auto p = build_block(m, id, bound_for(c.box));
    Output o;
    json gens = json::array();
    std::ostringstream os;
    os << "ring: " << p.label() << "\n";
    os << "block: " << id.str() << "\n";
    os << "shape: " << shape_name(p.shape()) << "\n";
    os << "generators:";
    for (const auto& g : p.generators()) {
        os << " " << g.name << g.deg.str();
        gens.push_back({{"name", g.name}, {"bidegree", box_json(g.deg)}, {"kind", std::string(to_string(g.origin))}});
    }
    os << "\n";
    json rels = json::array(), gb = json::array();
    os << "relations (" << p.relations().size() << "):\n";
    for (const auto& r : p.relations()) {
        os << "  " << p.format(r) << "\n";
        rels.push_back(p.format(r));
    }
    os << "groebner basis (" << p.groebner().size() << "):\n";
    for (const auto& g : p.groebner()) {
        os << "  " << p.format(g) << "\n";
        gb.push_back(p.format(g));
    }
    os << "bound: " << p.bound() << "\n" << box_line(c.box);
    o.text = os.str();
    o.data = {{"ring", p.label()},        {"block", id.str()}, {"shape", shape_name(p.shape())},
              {"generators", gens},       {"relations", rels}, {"groebner", gb},
              {"bound", p.bound()},       {"box", box_json(c.box)}};
    return o;
}

std::string block_label(const FieldModel& m, const BlockId& id, Bidegree box)
{
    if (id.table_only())
        return id.str();
    return build_block(m, id, std::max(1, box.total() + 2)).label();
}

Output ring_table(const FieldModel& m, const BlockId& id, const RunConfig& c)
{
    const auto t = block_table(m, id, c.box);
    Output o;
    o.data = t.to_json();
    o.data["ring"] = block_label(m, id, c.box);
    o.data["model"] = m.name();
    o.text = "ring: " + block_label(m, id, c.box) + "\nmodel: " + m.name() + "\n" + box_line(c.box) + t.to_text();
    return o;
}

Homomorphism map_for(const FieldModel& m, const std::string& map_arg, const RunConfig& c)
{
    const int bound = bound_for(c.box);
    auto numbered = [&](const std::string& prefix) -> std::optional<int> {
        if (map_arg.rfind(prefix, 0) != 0)
            return std::nullopt;
        try {
            std::size_t used = 0;
            const int n = std::stoi(map_arg.substr(prefix.size()), &used);
            if (used + prefix.size() == map_arg.size())
                return n;
        } catch (...) {
        }
        throw UsageError("malformed map '" + map_arg + "'");
    };
    if (auto n = numbered("comp:"))
        return comp_map(m, *n, bound);
    if (auto n = numbered("pq:"))
        return twist_iso(m, *n, bound);
    std::ifstream in(map_arg);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read map file '" + map_arg + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, "map file '" + map_arg + "': " + e.what());
    }
    return hom_from_json(m, j, bound);
}

Output hom_verify_cmd(const FieldModel& m, const std::string& map_arg, const RunConfig& c)
{
    auto h = map_for(m, map_arg, c);
    const auto r = hom_verify(h, c.box);
    Output o{r.to_text(), r.to_json(), r.well_defined ? 0 : 1};
    return o;
}

Output hom_kernel_cmd(const FieldModel& m, const std::string& map_arg, const RunConfig& c)
{
    if (map_arg.rfind("comp:", 0) != 0)
        throw UsageError("hom kernel expects comp:n");
    auto h = map_for(m, map_arg, c);
    const int n = std::stoi(map_arg.substr(5));
    const auto ideal = comp_kernel_ideal(m, h.source, n);
    const auto r = kernel_match(h, ideal, c.box);
    json gens = json::array();
    std::string text = "map: " + h.label + "\nideal:";
    for (const auto& g : ideal.gens) {
        gens.push_back(g.str());
        text += " " + g.str() + ";";
    }
    if (!ideal.gens.empty())
        text.pop_back();
    text += "\n" + r.to_text();
    Output o{text, r.to_json(), r.match() ? 0 : 1};
    o.data["map"] = h.label;
    o.data["ideal"] = gens;
    return o;
}

Output sq1_cmd(const FieldModel& m, const BlockId& id, const std::optional<std::string>& values, const RunConfig& c)
{
    const auto p = build_block(m, id, c.box.total() + 2);
    std::map<std::string, std::string> overrides;
    if (values) {
        std::ifstream in(*values);
        if (!in)
            throw Error(ErrorKind::Io, "cannot read derivation file '" + *values + "'");
        json j;
        try {
            in >> j;
            for (const auto& [k, v] : j.at("values").items())
                overrides[k] = v.get<std::string>();
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, "derivation file '" + *values + "': " + e.what());
        }
    }
    auto der = sq1_define(m, p, overrides);
    const auto r = sq1_check(der, c.box);
    Output o{"ring: " + p.label() + "\n" + r.to_text(), r.to_json(), r.ok() ? 0 : 1};
    o.data["ring"] = p.label();
    return o;
}

Output motive_cmd(const FieldModel& m, const std::string& expr, bool table, const RunConfig& c)
{
    const auto f = motive_parse(expr);
    Output o;
    o.data = {{"input", expr}, {"normal_form", f.str()}, {"summands", f.atom_count()}};
    o.text = f.str() + "\n";
    if (table) {
        const auto h = motive_cohomology(m, f, c.box);
        o.data["model"] = m.name();
        o.data["table"] = h.table.to_json();
        o.data["warnings"] = h.warnings;
        json amb = json::array();
        for (auto b : h.ambiguous)
            amb.push_back(box_json(b));
        o.data["ambiguous"] = amb;
        o.text += "model: " + m.name() + "\n" + box_line(c.box) + h.table.to_text();
        for (const auto& w : h.warnings)
            o.text += "warning: " + w + "\n";
        if (!h.ambiguous.empty()) {
            o.text += "decided by the connecting map:";
            for (auto b : h.ambiguous)
                o.text += " " + b.str();
            o.text += "\n";
        }
    }
    return o;
}

Output verify_all(const RunConfig& c)
{
    checks::SuiteConfig sc;
    if (c.box_given)
        sc.box = c.box;
    sc.seed = c.seed;
    sc.golden_dir = SUBTLE_GOLDEN_DIR;
    sc.runner = [](const std::vector<std::string>& argv, std::string& out) {
        std::ostringstream o, e;
        const int code = run(argv, o, e);
        out = o.str();
        return code;
    };
    const auto results = checks::run_all(sc);
    Output o;
    json arr = json::array();
    int passed = 0;
    for (const auto& r : results) {
        o.text += r.line() + "\n";
        auto j = r.to_json();
        j["data"].erase("seconds");
        arr.push_back(j);
        passed += r.pass;
    }
    o.text += std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed\n";
    o.data = {{"criteria", arr}, {"passed", passed}, {"total", results.size()}, {"seed", c.seed}};
    if (c.box_given)
        o.data["box"] = box_json(c.box);
    o.status = passed == static_cast<int>(results.size()) ? 0 : 1;
    return o;
}

void apply_config_file(const std::string& path, RunConfig& c)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file '" + path + "'");
    json j;
    try {
        in >> j;
        if (j.contains("model"))
            c.model = j.at("model").get<std::string>();
        if (j.contains("box")) {
            c.box = {j.at("box").at(0).get<int>(), j.at("box").at(1).get<int>()};
            c.box_given = true;
        }
        if (j.contains("format")) {
            const auto f = j.at("format").get<std::string>();
            if (f != "text" && f != "json")
                throw UsageError("config format must be text or json");
            c.format = f == "json" ? Format::json : Format::text;
        }
        if (j.contains("seed"))
            c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out"))
            c.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Motivic cohomology rings with subtle characteristic classes", "subtle"};
    app.require_subcommand(1);

    std::optional<std::string> model, format, out_path, config;
    std::vector<int> box;
    std::optional<std::uint64_t> seed;
    auto global = [&](CLI::App* a) {
        a->fallthrough();
    };
    app.add_option("--model", model, "built-in model name or JSON descriptor path");
    app.add_option("--box", box, "box W D")->expected(2);
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--out", out_path, "write the report to this file");
    app.add_option("--config", config, "JSON file presetting the flags");

    auto* field = app.add_subcommand("field", "field model");
    global(field);
    field->require_subcommand(1);
    auto* field_show_cmd = field->add_subcommand("show", "describe the model");
    global(field_show_cmd);

    auto* ring = app.add_subcommand("ring", "rings and modules");
    global(ring);
    ring->require_subcommand(1);
    std::string block;
    auto* ring_build_cmd = ring->add_subcommand("build", "presentation and Groebner basis");
    global(ring_build_cmd);
    ring_build_cmd->add_option("block", block, "block id")->required();
    auto* ring_table_cmd = ring->add_subcommand("table", "Poincare table on the box");
    global(ring_table_cmd);
    ring_table_cmd->add_option("block", block, "block id")->required();

    auto* hom = app.add_subcommand("hom", "homomorphisms");
    global(hom);
    hom->require_subcommand(1);
    std::string map_spec;
    auto* hom_verify_sub = hom->add_subcommand("verify", "check a map on the box");
    global(hom_verify_sub);
    hom_verify_sub->add_option("map", map_spec, "map file, comp:n or pq:n")->required();
    auto* hom_kernel_sub = hom->add_subcommand("kernel", "identify the kernel of comp:n");
    global(hom_kernel_sub);
    hom_kernel_sub->add_option("map", map_spec, "comp:n")->required();

    auto* sq1 = app.add_subcommand("sq1", "Sq1 derivation");
    global(sq1);
    sq1->require_subcommand(1);
    std::optional<std::string> values;
    auto* sq1_check_sub = sq1->add_subcommand("check", "descent, square zero and Leibniz on the box");
    global(sq1_check_sub);
    sq1_check_sub->add_option("block", block, "block id")->required();
    sq1_check_sub->add_option("--values", values, "JSON {\"values\": {gen: element}} overriding defaults");

    auto* motive = app.add_subcommand("motive", "formal motives");
    global(motive);
    motive->require_subcommand(1);
    std::string expr;
    bool with_table = false;
    auto* motive_eval_sub = motive->add_subcommand("eval", "normal form of an expression");
    global(motive_eval_sub);
    motive_eval_sub->add_option("expr", expr, "expression")->required();
    motive_eval_sub->add_flag("--table", with_table, "also print the cohomology table");

    auto* verify = app.add_subcommand("verify", "acceptance suite");
    global(verify);
    verify->require_subcommand(1);
    auto* verify_all_sub = verify->add_subcommand("all", "run every criterion");
    global(verify_all_sub);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    RunConfig c;
    try {
        if (config)
            apply_config_file(*config, c);
        if (model)
            c.model = *model;
        if (!box.empty()) {
            c.box = {box[0], box[1]};
            c.box_given = true;
        }
        if (format)
            c.format = *format == "json" ? Format::json : Format::text;
        if (seed)
            c.seed = *seed;
        if (out_path)
            c.out = *out_path;
        if (!c.box.nonnegative())
            throw UsageError("box must be nonnegative");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Output o;
    try {
        auto load = [&] { return FieldModel::load(c.model); };
        if (*field_show_cmd)
            o = field_show(load(), c);
        else if (*ring_build_cmd)
            o = ring_build(load(), BlockId::parse(block), c);
        else if (*ring_table_cmd)
            o = ring_table(load(), BlockId::parse(block), c);
        else if (*hom_verify_sub)
            o = hom_verify_cmd(load(), map_spec, c);
        else if (*hom_kernel_sub)
            o = hom_kernel_cmd(load(), map_spec, c);
        else if (*sq1_check_sub)
            o = sq1_cmd(load(), BlockId::parse(block), values, c);
        else if (*motive_eval_sub)
            o = motive_cmd(load(), expr, with_table, c);
        else if (*verify_all_sub)
            o = verify_all(c);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string rendered = c.format == Format::json ? o.data.dump(2) + "\n" : o.text;
    if (c.out) {
        std::ofstream f(*c.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << *c.out << "'\n";
            return 2;
        }
        f << rendered;
    } else {
        out << rendered;
    }
    if (o.status == 1)
        err << "verification failed\n";
    return o.status;
}

}  // namespace subtle::cli

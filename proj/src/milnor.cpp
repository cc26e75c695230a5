#include "subtle/milnor.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "subtle/error.hpp"

namespace subtle {

std::string_view to_string(BuiltinTag tag)
{
    switch (tag) {
    case BuiltinTag::real: return "real";
    case BuiltinTag::finite_field: return "finite_field";
    case BuiltinTag::quadratically_closed: return "quadratically_closed";
    case BuiltinTag::custom: return "custom";
    }
    return "custom";
}

ModelDescriptor ModelDescriptor::from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw Error(ErrorKind::ParseError, "model descriptor must be a JSON object");
    ModelDescriptor d;
    try {
        if (j.contains("builtin") && !j.at("builtin").is_null())
            d.builtin = j.at("builtin").get<std::string>();
        if (j.contains("generators"))
            d.generators = j.at("generators").get<std::vector<std::string>>();
        if (j.contains("relations"))
            d.relations = j.at("relations").get<std::vector<std::string>>();
        if (j.contains("alpha") && !j.at("alpha").is_null())
            d.alpha = j.at("alpha").get<std::string>();
        if (j.contains("minus_one") && !j.at("minus_one").is_null())
            d.minus_one = j.at("minus_one").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("model descriptor: ") + e.what());
    }
    return d;
}

nlohmann::json ModelDescriptor::to_json() const
{
    nlohmann::json j;
    j["builtin"] = builtin ? nlohmann::json(*builtin) : nlohmann::json(nullptr);
    j["generators"] = generators;
    j["relations"] = relations;
    j["alpha"] = alpha ? nlohmann::json(*alpha) : nlohmann::json(nullptr);
    j["minus_one"] = minus_one ? nlohmann::json(*minus_one) : nlohmann::json(nullptr);
    return j;
}

namespace {

struct Expansion {
    BuiltinTag tag;
    std::vector<std::string> gens;
    std::vector<std::string> rels;
    std::optional<std::string> alpha;
    std::optional<std::string> minus_one;
};

Expansion expand_builtin(const std::string& name)
{
    if (name == "real")
        return {BuiltinTag::real, {"rho"}, {}, "rho", "rho"};
    if (name == "finite_field")
        return {BuiltinTag::finite_field, {"s"}, {"s^2"}, "s", "0"};
    if (name == "quadratically_closed")
        return {BuiltinTag::quadratically_closed, {}, {}, std::nullopt, "0"};
    throw Error(ErrorKind::InvalidArgument, "unknown built-in model '" + name + "'");
}

}  // namespace

FieldModel FieldModel::build(const ModelDescriptor& desc, int max_degree)
{
    FieldModel m;
    m.desc_ = desc;
    m.max_degree_ = max_degree;
    Expansion ex{BuiltinTag::custom, desc.generators, desc.relations, desc.alpha, desc.minus_one};
    if (desc.builtin) {
        ex = expand_builtin(*desc.builtin);
        if (!desc.generators.empty() || !desc.relations.empty())
            throw Error(ErrorKind::InvalidArgument, "built-in models take no extra generators or relations");
        if (desc.alpha)
            ex.alpha = desc.alpha;
        if (desc.minus_one)
            ex.minus_one = desc.minus_one;
        m.name_ = *desc.builtin;
    } else {
        m.name_ = "custom";
    }
    m.tag_ = ex.tag;

    std::vector<GenSpec> gens;
    for (const auto& g : ex.gens)
        gens.push_back({g, {1, 1}, GenOrigin::milnor});
    m.km_ = Presentation::create("K^M/2", gens, ex.rels, 2 * max_degree);

    auto degree_one = [&](const std::string& text, const char* what) {
        Element e = m.km_.parse(text);
        if (!e.is_zero() && e.bidegree() != Bidegree{1, 1})
            throw Error(ErrorKind::BidegreeMismatch, std::string(what) + " must have Milnor degree 1");
        return e;
    };
    if (ex.alpha) {
        Element a = degree_one(*ex.alpha, "alpha");
        if (a.is_zero())
            throw Error(ErrorKind::AlphaIsSquare, "{alpha} = " + *ex.alpha + " reduces to 0");
        m.alpha_ = a;
    }
    if (ex.minus_one)
        m.minus_one_ = degree_one(*ex.minus_one, "minus_one");
    return m;
}

FieldModel FieldModel::builtin(BuiltinTag tag)
{
    if (tag == BuiltinTag::custom)
        throw Error(ErrorKind::InvalidArgument, "custom is not a built-in model");
    ModelDescriptor d;
    d.builtin = std::string(to_string(tag));
    return build(d);
}

FieldModel FieldModel::load(const std::string& name_or_path)
{
    if (name_or_path == "real" || name_or_path == "finite_field" || name_or_path == "quadratically_closed") {
        ModelDescriptor d;
        d.builtin = name_or_path;
        return build(d);
    }
    namespace fs = std::filesystem;
    std::vector<fs::path> candidates{fs::path(name_or_path)};
    if (const char* dir = std::getenv("SUBTLE_MODEL_DIR")) {
        candidates.push_back(fs::path(dir) / name_or_path);
        candidates.push_back(fs::path(dir) / (name_or_path + ".json"));
    }
    for (const auto& p : candidates) {
        std::error_code ec;
        if (!fs::is_regular_file(p, ec))
            continue;
        std::ifstream in(p);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, p.string() + ": " + e.what());
        }
        return build(ModelDescriptor::from_json(j));
    }
    throw Error(ErrorKind::Io, "model '" + name_or_path + "' not found");
}

const Element& FieldModel::alpha() const
{
    if (!alpha_)
        throw Error(ErrorKind::MissingAlpha, "model '" + name_ + "' has no nonsquare {alpha}");
    return *alpha_;
}

std::size_t FieldModel::dim(int n) const
{
    if (n < 0)
        return 0;
    if (n > max_degree_)
        throw Error(ErrorKind::ExceedsBound, "Milnor degree " + std::to_string(n) + " beyond model bound");
    return km_.standard_monomials({n, n}).size();
}

IdealGens FieldModel::ann_alpha(int degree) const { return km_annihilator(*this, alpha(), degree); }

nlohmann::json FieldModel::to_json() const
{
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : km_.generators())
        gens.push_back(g.name);
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : km_.relations())
        rels.push_back(km_.format(r));
    return {{"name", name_},
            {"tag", to_string(tag_)},
            {"generators", gens},
            {"relations", rels},
            {"alpha", alpha_ ? nlohmann::json(alpha_->str()) : nlohmann::json(nullptr)},
            {"minus_one", minus_one_ ? nlohmann::json(minus_one_->str()) : nlohmann::json(nullptr)}};
}

Element km_normal_form(const FieldModel& model, std::string_view e) { return model.km().parse(e); }

IdealGens km_annihilator(const FieldModel& model, const Element& f, int degree_bound)
{
    if (degree_bound < 0)
        throw Error(ErrorKind::InvalidArgument, "negative degree bound");
    if (f.is_zero())
        throw Error(ErrorKind::ZeroElement, "annihilator of 0 is everything");
    const auto deg = f.bidegree();
    if (!deg)
        throw Error(ErrorKind::NonHomogeneousRelation, "annihilator of an inhomogeneous element");
    if (degree_bound + deg->w > model.max_degree())
        throw Error(ErrorKind::ExceedsBound, "annihilator degree beyond model bound");
    auto gens = colon_ideal(model.km(), {}, f, 2 * degree_bound);
    gens.degree_bound = degree_bound;
    return gens;
}

}  // namespace subtle

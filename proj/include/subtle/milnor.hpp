#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subtle/presentation.hpp"

namespace subtle {

enum class BuiltinTag { real, finite_field, quadratically_closed, custom };

std::string_view to_string(BuiltinTag tag);

/// Raw descriptor of a base-field model, mirroring the model JSON file.
/// For built-ins, alpha and minus_one override the built-in designations.
struct ModelDescriptor {
    std::optional<std::string> builtin;
    std::vector<std::string> generators;
    std::vector<std::string> relations;
    std::optional<std::string> alpha;
    std::optional<std::string> minus_one;

    static ModelDescriptor from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// A finitely presented stand-in for K^M(k)/2 with the symbol {alpha} of the
/// quadratic extension and, optionally, the symbol {-1}.
class FieldModel {
public:
    /// Milnor degree up to which the internal Groebner basis is certified.
    static constexpr int default_degree = 24;

    static FieldModel build(const ModelDescriptor& desc, int max_degree = default_degree);
    static FieldModel builtin(BuiltinTag tag);
    /// A built-in name, a path to a JSON descriptor, or a file name looked up
    /// in $SUBTLE_MODEL_DIR.
    static FieldModel load(const std::string& name_or_path);

    BuiltinTag tag() const noexcept { return tag_; }
    const std::string& name() const noexcept { return name_; }
    const ModelDescriptor& descriptor() const noexcept { return desc_; }
    /// Presentation of K^M/2 with Milnor generators at (1)[1].
    const Presentation& km() const noexcept { return km_; }
    int max_degree() const noexcept { return max_degree_; }

    bool has_alpha() const noexcept { return alpha_.has_value(); }
    /// Throws MissingAlpha when the model carries no nonsquare.
    const Element& alpha() const;
    /// The designated {-1}; may be the zero element. Empty when undesignated.
    const std::optional<Element>& minus_one() const noexcept { return minus_one_; }

    /// dim_F2 of K^M_n/2.
    std::size_t dim(int n) const;
    /// Generators of Ann({alpha}) valid through Milnor degree `degree`.
    IdealGens ann_alpha(int degree) const;

    nlohmann::json to_json() const;

private:
    BuiltinTag tag_ = BuiltinTag::custom;
    std::string name_;
    ModelDescriptor desc_;
    Presentation km_;
    int max_degree_ = 0;
    std::optional<Element> alpha_;
    std::optional<Element> minus_one_;
};

/// Reduced representative of a raw polynomial string in K^M/2.
Element km_normal_form(const FieldModel& model, std::string_view e);

/// Generators of { x : x f = 0 } through Milnor degree `degree_bound`.
IdealGens km_annihilator(const FieldModel& model, const Element& f, int degree_bound);

}  // namespace subtle

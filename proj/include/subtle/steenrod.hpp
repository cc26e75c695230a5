#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subtle/milnor.hpp"
#include "subtle/presentation.hpp"

namespace subtle {

/// Sq^1 shifts bidegree by (0)[1].
inline constexpr Bidegree sq1_shift{0, 1};

/// How a generator's value was obtained.
enum class Sq1Source { default_rule, override_value, solved };

std::string_view to_string(Sq1Source s);

struct SolvedGenerator {
    std::string name;
    /// Dimension of the affine space of admissible values.
    std::size_t solution_dim = 0;
};

/// Sq^1 as an F_2-derivation: values on the generators, extended by Leibniz.
struct Derivation {
    Presentation presentation;
    std::vector<Element> values;
    std::vector<Sq1Source> sources;
    /// False when the descent conditions admit no solution for the unknowns.
    bool consistent = true;
    std::vector<SolvedGenerator> solved;
    std::optional<Bidegree> verified_box;

    const Element& value(std::string_view gen) const;
};

/// Default values: Milnor symbols 0, tau the model's {-1}, mu -> mu^2,
/// u_2i -> u_{2i+1} + u_1 u_2i (u_{2i+1} read as v_{2i+1} when that is the
/// generator present, else as 0), u_{2i+1} -> u_1 u_{2i+1}. Generators with
/// neither a default nor an override are solved for from the requirement
/// that every relation is sent into the ideal; the free part is set to 0.
Derivation sq1_define(const FieldModel& model, const Presentation& p,
                      const std::map<std::string, std::string>& overrides = {});

Element sq1_apply(const Derivation& der, const Element& e);
Element sq1_apply(const Derivation& der, const Polynomial& p);

struct Sq1Report {
    Bidegree box;
    bool consistent = true;
    bool descends = true;
    std::vector<std::pair<std::string, std::string>> failing_relations;
    bool square_zero = true;
    std::vector<std::string> square_zero_failures;
    bool leibniz = true;
    std::vector<std::string> leibniz_failures;
    std::size_t monomials_checked = 0;
    std::size_t pairs_checked = 0;
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<SolvedGenerator> solved;

    bool ok() const noexcept { return consistent && descends && square_zero && leibniz; }
    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Descent on relations, Sq^1 Sq^1 = 0 on generators and on the standard
/// basis of the box, and Leibniz on all basis pairs whose product stays in
/// the box. Needs bound >= W + D + 2.
Sq1Report sq1_check(Derivation& der, Bidegree box);

}  // namespace subtle

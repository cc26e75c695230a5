#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subtle/milnor.hpp"
#include "subtle/presentation.hpp"
#include "subtle/table.hpp"

namespace subtle {

/// Algebra (or H-module) map given by generator images. Base generators
/// (Milnor symbols and tau) default to themselves when the target has them.
struct Homomorphism {
    std::string label;
    Presentation source;
    Presentation target;
    /// Indexed like source.generators().
    std::vector<Element> images;

    std::optional<Bidegree> verified_box;
    bool well_defined = false;
    bool surjective_on_box = false;
    bool injective_on_box = false;

    Element apply(const Polynomial& p) const;
    Element apply(const Element& e) const { return apply(source.import(e)); }
    const Element& image(std::string_view gen) const;
};

/// Images given as element strings parsed in the target.
Homomorphism hom_define(const Presentation& source, const Presentation& target,
                        const std::map<std::string, std::string>& images, std::string label = {});
Homomorphism hom_define(const Presentation& source, const Presentation& target,
                        const std::map<std::string, Element>& images, std::string label = {});

struct CellRank {
    Bidegree cell;
    std::size_t rank = 0;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
};

struct HomReport {
    std::string label;
    Bidegree box;
    bool well_defined = true;
    /// Source relations whose image is nonzero, with that image.
    std::vector<std::pair<std::string, std::string>> failing_relations;
    bool surjective = true;
    bool injective = true;
    std::vector<CellRank> cells;
    /// Table of the image of the map over the box.
    PoincareTable image_table;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Checks every source relation in the box and computes per-cell ranks;
/// records the outcome on `h`.
HomReport hom_verify(Homomorphism& h, Bidegree box);

/// g after f.
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

/// H(BO(h_n)) -> H(BU_n): u_2i -> c_i, u_{2l+1} -> 0 (l even), u_{2j+1} -> d_j
/// (j odd < n) and v_{2n+1} -> d_n (n odd).
Homomorphism comp_map(const FieldModel& model, int n, int bound);

/// The ideal of H(BO(h_n)) generated by u_{4j+1}, u_{4i+3}u_{4j+2} + u_{4j+3}u_{4i+2},
/// tau u_{4j+3} + {alpha} u_{4j+2} and Ann({alpha}) u_{4j+3}, 0 <= i, j <= [(n-1)/2],
/// reading u_{2n+1} as v_{2n+1}. Generators that vanish in the source are dropped.
IdealGens comp_kernel_ideal(const FieldModel& model, const Presentation& source, int n);

struct KernelReport {
    Bidegree box;
    bool generators_vanish = true;
    std::vector<std::string> nonvanishing;
    bool tables_match = true;
    std::optional<Bidegree> first_mismatch;
    PoincareTable quotient_table;
    PoincareTable image_table;

    bool match() const noexcept { return generators_vanish && tables_match; }
    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Certifies ker h = (I) on the box: I maps to 0 and source/(I) has the
/// same table as the image of h.
KernelReport kernel_match(Homomorphism& h, const IdealGens& ideal, Bidegree box);

/// H(X_alpha)[u_1..u_2n] -> itself: u_2i -> u_2i, u_{2i-1} -> u_{2i-1} + mu u_{2i-2}.
Homomorphism twist_iso(const FieldModel& model, int n, int bound);

struct SpecializationReport {
    Homomorphism map;
    /// (relation, image) for every source relation.
    std::vector<std::pair<std::string, std::string>> relations;
    bool well_defined = true;
    std::vector<std::string> failing;
    /// c_{2^r} classes present in the source and whether each is assigned 0.
    std::vector<std::pair<std::string, bool>> split_classes;
    bool split_compatible = true;

    nlohmann::json to_json() const;
};

/// Evaluates the universal relations of `ring` at the assigned class values.
/// Classes without an assignment are sent to 0.
SpecializationReport specialize_classes(const Presentation& ring, const std::map<std::string, std::string>& assignments,
                                        const Presentation& target);

struct OddFormReport {
    int n = 0;
    /// (class, image) of every u_i under the composite into H(X_alpha)[c].
    std::vector<std::pair<std::string, std::string>> images;
    /// Relations u_{4j+1} = mu u_{4j} and u_{4j-1} = 0, with outcome.
    std::vector<std::pair<std::string, bool>> relations;
    bool holds = true;

    nlohmann::json to_json() const;
};

/// Restriction H(BO_2n) -> H(X_alpha)[u] -> (twist) -> H(X_alpha)[c] along the
/// comparison map, where d_j becomes mu c_j.
OddFormReport odd_form_relations(const FieldModel& model, int n, int bound);

/// Map descriptor {"source", "target", "images"} with block ids.
Homomorphism hom_from_json(const FieldModel& model, const nlohmann::json& j, int bound);

}  // namespace subtle

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subtle/bidegree.hpp"
#include "subtle/milnor.hpp"
#include "subtle/motives.hpp"
#include "subtle/presentation.hpp"

namespace subtle::checks {

// ------------------------------------------------------------- dense oracle
//
// Everything here works from the raw generators and relations only: it
// enumerates monomials itself and eliminates with its own bit rows, so it
// shares no code with the Groebner engine or with gf2.hpp.

struct DenseMismatch {
    Bidegree cell;
    std::uint64_t dense = 0;
    std::uint64_t groebner = 0;
};

struct DenseReport {
    std::string label;
    std::size_t cells = 0;
    std::vector<DenseMismatch> mismatches;
    bool ok() const noexcept { return mismatches.empty(); }
};

/// Per cell dimension = #admissible monomials - rank of all monomial
/// multiples of the relations, compared with p.table().
DenseReport dense_oracle(const Presentation& p, Bidegree box);

/// dim K^M_k/2 by dense elimination.
std::uint64_t dense_km_dim(const FieldModel& model, int k);
/// dim of ({alpha} K^M_k) in K^M_{k+1}, i.e. of (K^M/Ann{alpha})_k.
std::uint64_t dense_alpha_rank(const FieldModel& model, int k);

/// H(N^m) as H plus one copy of K^M/Ann{alpha} on each line d = w + i,
/// 1 <= i <= m, from the dense K^M counts.
PoincareTable npow_direct(const FieldModel& model, int m, Bidegree box);
/// Sum over monomials c_1^i1...c_n^in of H(N^(i1 + i3 + ...)) shifted by
/// the monomial's bidegree.
PoincareTable bu_decomposition(const FieldModel& model, int n, Bidegree box);

// ------------------------------------------------------ rewriting oracle

/// Random tensor/sum expression with at most `max_atoms` atoms.
MotiveExprPtr random_motive_expr(std::uint64_t& state, int max_atoms);
/// Expands the tree and reduces every product by firing single pairwise
/// rules at positions chosen from `state` until none applies.
FormalMotive rewrite_stepwise(const MotiveExpr& e, std::uint64_t& state);

// ------------------------------------------------------ acceptance suite

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    nlohmann::json data;

    std::string line() const;
    nlohmann::json to_json() const;
};

/// Runs argv through the command-line front end and captures stdout.
using CommandRunner = std::function<int(const std::vector<std::string>& argv, std::string& out)>;

struct SuiteConfig {
    /// When set, every criterion runs on this box instead of its own default.
    std::optional<Bidegree> box;
    std::uint64_t seed = 20240611;
    std::string golden_dir;
    CommandRunner runner;
};

CriterionResult criterion_bu_decomposition(const SuiteConfig& c);
CriterionResult criterion_kernel(const SuiteConfig& c);
CriterionResult criterion_diagonal(const SuiteConfig& c);
CriterionResult criterion_colimit(const SuiteConfig& c);
CriterionResult criterion_twist(const SuiteConfig& c);
CriterionResult criterion_groebner_oracle(const SuiteConfig& c);
CriterionResult criterion_motives(const SuiteConfig& c);
CriterionResult criterion_sq1(const SuiteConfig& c);
CriterionResult criterion_specialization(const SuiteConfig& c);
CriterionResult criterion_golden(const SuiteConfig& c);

/// All ten in order.
std::vector<CriterionResult> run_all(const SuiteConfig& c);

/// One golden case: the argument vector lives in NAME.args (one argument per
/// line) and the expected stdout in NAME.out; NAME.exit optionally holds
/// the expected status.
struct GoldenCase {
    std::string name;
    std::vector<std::string> argv;
    std::string expected;
    /// From NAME.exit when present.
    int exit_code = 0;
};
std::vector<GoldenCase> load_golden(const std::string& dir);

}  // namespace subtle::checks

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "subtle/milnor.hpp"
#include "subtle/presentation.hpp"
#include "subtle/table.hpp"

namespace subtle {

/// Identifier of a cohomology ring or module: `H`, `BO:n`, `BU:n`, `BOp:n`,
/// `BOh:n`, `Npow:m`, `Mtilde`, `nbar`, `Xalpha`, `Xtilde`, `XBU:n`, `NpowBU:m:n`.
struct BlockId {
    enum class Kind { H, BO, BU, BOp, BOh, Npow, Mtilde, nbar, Xalpha, Xtilde, XBU, NpowBU };
    Kind kind = Kind::H;
    int n = 0;
    int m = 0;

    static BlockId parse(std::string_view text);
    std::string str() const;
    /// nbar and NpowBU exist only as tables.
    bool table_only() const noexcept { return kind == Kind::nbar || kind == Kind::NpowBU; }
    friend bool operator==(const BlockId&, const BlockId&) = default;
};

/// Names used by every builder.
std::string u_name(int i);
std::string c_name(int i);
std::string d_name(int j);
std::string v_name(int i);
std::string mu_name(int i);

Presentation build_H(const FieldModel& model, int bound);
/// Free H-algebra on u_1..u_n, u_i at ([i/2])[i].
Presentation build_BO(const FieldModel& model, int n, int bound);
/// c_i at (i)[2i], d_j (j odd) at (j)[2j+1], tied by tau d_j = {alpha} c_j,
/// Ann({alpha}) d_j = 0 and c_j' d_j = c_j d_j'.
Presentation build_BUn(const FieldModel& model, int n, int bound);
/// u_1..u_2n and v_{2n+1} with tau v = {alpha} u_2n and Ann({alpha}) v = 0; n >= 1.
Presentation build_BOpn(const FieldModel& model, int n, int bound);
Presentation build_BOhtilde(const FieldModel& model, int n, int bound);

/// H-module on mu_1..mu_m with tau mu_i = {alpha} mu_{i-1} (mu_0 = 1).
Presentation build_Npow(const FieldModel& model, int m, int bound);
/// Single diagonal module on mu with tau mu = 0 and Ann({alpha}) mu = 0.
Presentation build_Mtilde(const FieldModel& model, int bound);
/// Ring H[mu]/(tau mu + {alpha}, Ann({alpha}) mu), freely extended by `extra`.
Presentation build_Xalpha(const FieldModel& model, int bound, const std::vector<GenSpec>& extra = {});
/// Module on mu_i (i >= 1) with tau mu_1 = 0 and tau mu_i = {alpha} mu_{i-1}:
/// the cokernel of H into H(X_alpha).
Presentation build_Xtilde(const FieldModel& model, int bound);
/// H(X_alpha)[c_1..c_n].
Presentation build_X_BU(const FieldModel& model, int n, int bound);
/// A presentation for any non-table-only block.
Presentation build_block(const FieldModel& model, const BlockId& id, int bound);

/// H(nbar) as the ideal (tau, Ann({alpha})) of H.
PoincareTable nbar_table(const FieldModel& model, Bidegree box);
/// Direct-sum count H + sum_i (K^M/Ann) mu_i, independent of the module presentation.
PoincareTable npow_sum_table(const FieldModel& model, int m, Bidegree box);
/// Sum over c-monomials of H(N^(m + sum of odd-index exponents)) shifted by the monomial.
PoincareTable npow_bu_table(const FieldModel& model, int m, int n, Bidegree box);
/// Table of any block over the box, bound W + D.
PoincareTable block_table(const FieldModel& model, const BlockId& id, Bidegree box);

struct ColimitReport {
    Bidegree box;
    bool stable = true;
    /// Smallest m0 with Npow(m) = Xalpha at this cell for all m0 <= m <= D + 1.
    std::map<Bidegree, int> index;
    std::vector<std::string> failures;
    nlohmann::json to_json() const;
};

ColimitReport check_colimit(const FieldModel& model, Bidegree box);

}  // namespace subtle

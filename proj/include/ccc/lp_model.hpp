#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ccc/instance.hpp"
#include "ccc/lp_solution.hpp"
#include "ccc/simplex.hpp"

namespace ccc {

// Row kinds of the chromatic clustering LP, in canonical enumeration order:
//   metric_u   : x^c_{uv} >= x^c_u
//   metric_v   : x^c_{uv} >= x^c_v
//   triangle   : x^c_{ac} + x^c_{cb} >= x^c_{ab}   (a < b, c the third vertex)
//   vertex_sum : sum_c x^c_u = L - 1
//   c4         : sum_c x^c_{uv} >= L - 1
enum class RowKind : std::uint8_t { metric_u, metric_v, triangle, vertex_sum, c4 };

struct LpRow {
    RowKind kind;
    int a = 0;
    int b = 0;
    int w = 0;      // third vertex of a triangle row
    int color = 0;  // unused for vertex_sum / c4
};

// Explicit LP over variables x^c_u (node) and x^c_{uv} (pair), one per
// (vertex, color) and (unordered pair, color). Variable order is nodes by
// (u, c) then pairs by (pair_index, c); all bounds are [0, 1].
struct LpModel {
    int n = 0;
    int num_colors = 0;
    std::vector<Color> pair_colors;  // instance coloring, pair-indexed
    bool has_c4 = false;

    Eigen::VectorXd objective;
    double objective_constant = 0.0;
    std::vector<LpRow> rows;

    int num_node_vars() const { return n * num_colors; }
    int num_pair_vars() const { return static_cast<int>(pair_count(n)) * num_colors; }
    int num_vars() const { return num_node_vars() + num_pair_vars(); }

    int node_var(int u, int c) const { return u * num_colors + c; }
    int pair_var(std::size_t pair, int c) const {
        return num_node_vars() + static_cast<int>(pair) * num_colors + c;
    }
    int pair_var(int u, int v, int c) const { return pair_var(pair_index(n, u, v), c); }

    void row_entries(const LpRow& row,
                     std::vector<std::pair<int, double>>& entries) const;
    lp::Sense row_sense(const LpRow& row) const;
    double row_rhs(const LpRow& row) const;
    std::string row_name(const LpRow& row) const;
    std::string var_name(int var) const;

    double row_activity(const LpRow& row, const Eigen::VectorXd& x) const;

    bool structurally_equal(const LpModel& other) const;
};

LpModel build_ccc_lp(const CccInstance& inst);

// Adds one coupling row per pair; rejects a model that already carries them.
LpModel augment_c4(const LpModel& model);

// One-color classical relaxation over pair variables only (independent of
// build_ccc_lp; used as the reduction oracle). Requires a 1-color instance.
struct ClassicCcModel {
    int n = 0;
    Eigen::VectorXd objective;  // size pair_count(n)
    double objective_constant = 0.0;
    std::vector<bool> positive;  // pair-indexed: labeled vs gamma
};
ClassicCcModel build_classic_cc_lp(const CccInstance& inst);
double solve_classic_cc_lp(const ClassicCcModel& model, double eps_feas = 1e-7);

// 0/1 encoding of a clustering: x^c_u = 0 iff u's cluster has color c;
// x^c_{uv} = 0 iff u,v share a cluster of color c. Objective equals
// cost(inst, cl) exactly.
LpSolution integral_encoding(const CccInstance& inst, const Clustering& cl);

struct Violation {
    std::string what;
    double amount = 0.0;
};

struct ViolationReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double max_violation = 0.0;
    std::vector<Violation> sample;  // first few offenders

    bool empty() const { return violations == 0; }
    std::string to_string() const;
};

// Checks bounds, both metric families, all triangle orientations, the
// vertex-sum equalities and (optionally) the coupling rows, each within eps.
ViolationReport validate_solution(const CccInstance& inst, const LpSolution& sol,
                                  bool with_c4, double eps_feas);

}  // namespace ccc

#pragma once

#include <string>
#include <vector>

#include "ccc/lp_model.hpp"
#include "ccc/lp_solution.hpp"

namespace ccc {

// Named linear program in a solver-agnostic form; the exchange type behind
// the LP text format (CPLEX-style) used to bridge to external solvers.
struct GenericLp {
    std::vector<std::string> var_names;
    Eigen::VectorXd objective;
    double objective_constant = 0.0;
    Eigen::VectorXd upper;  // lower bounds are 0
    struct Row {
        std::string name;
        std::vector<std::pair<int, double>> entries;
        lp::Sense sense;
        double rhs;
    };
    std::vector<Row> rows;

    bool equals(const GenericLp& other) const;
};

GenericLp to_generic(const LpModel& model);

// Canonical, byte-deterministic text rendering (Minimize / Subject To /
// Bounds / End). render(import(text)) == text for our own exports.
std::string render_lp_text(const GenericLp& lp);
std::string export_lp_text(const LpModel& model);
GenericLp import_lp_text(const std::string& text);

// Solves an imported LP with the internal simplex (cold start, generic
// feasibility phase). Returns variable values in file order.
struct GenericSolveResult {
    lp::SolveStatus status;
    Eigen::VectorXd x;
    double objective = 0.0;
};
GenericSolveResult solve_generic(const GenericLp& lp, long max_iterations = 2'000'000);

// Solution exchange format: one `name value` line per variable, '#' comments.
std::string write_solution_text(const LpModel& model, const LpSolution& sol);
std::string write_solution_text(const std::vector<std::string>& names, const Eigen::VectorXd& x,
                                double objective);
// Reassembles an LpSolution for the model from a name/value document;
// objective is recomputed from the model. Unknown or missing names throw.
LpSolution read_solution_text(const LpModel& model, const std::string& text);

}  // namespace ccc

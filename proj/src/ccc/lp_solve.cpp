#include "ccc/lp_solve.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "ccc/simplex.hpp"

namespace ccc {

namespace {

LpSolution extract_solution(const LpModel& model, const Eigen::VectorXd& x, double eps_feas) {
    LpSolution sol;
    sol.n = model.n;
    sol.num_colors = model.num_colors;
    const int L = model.num_colors;
    sol.x_node.resize(model.n, L);
    for (int u = 0; u < model.n; ++u)
        for (int c = 0; c < L; ++c) sol.x_node(u, c) = x(model.node_var(u, c));
    const long num_pairs = static_cast<long>(pair_count(model.n));
    sol.x_pair.resize(num_pairs, L);
    for (long p = 0; p < num_pairs; ++p)
        for (int c = 0; c < L; ++c)
            sol.x_pair(p, c) = x(model.pair_var(static_cast<std::size_t>(p), c));
    sol.objective = model.objective.dot(x) + model.objective_constant;

    double worst = 0.0;
    std::vector<std::pair<int, double>> entries;
    for (const LpRow& row : model.rows) {
        const double act = model.row_activity(row, x);
        const double rhs = model.row_rhs(row);
        if (model.row_sense(row) == lp::Sense::eq) {
            worst = std::max(worst, std::abs(act - rhs));
        } else {
            worst = std::max(worst, rhs - act);
        }
    }
    for (long j = 0; j < x.size(); ++j)
        worst = std::max({worst, -x(j), x(j) - 1.0});
    sol.max_violation = std::max(worst, 0.0);
    sol.status = sol.max_violation <= eps_feas ? LpSolution::Status::optimal
                                               : LpSolution::Status::tolerance_warning;
    return sol;
}

}  // namespace

LpSolution solve(const LpModel& model, const SolveOptions& options) {
    const int num_vars = model.num_vars();
    lp::SimplexSolver::Options sx_opt;
    sx_opt.max_iterations = options.max_iterations;
    lp::SimplexSolver solver(model.objective, Eigen::VectorXd::Ones(num_vars), sx_opt);

    // feasible cold start: pair variables at 1, one node variable per vertex at 0
    std::vector<bool> at_upper(num_vars, true);
    for (int u = 0; u < model.n; ++u) at_upper[model.node_var(u, 0)] = false;
    solver.set_initial_at_upper(at_upper);

    const std::size_t num_rows = model.rows.size();
    std::vector<char> in_working(num_rows, 0);
    std::vector<int> serial_model_row;     // solver serial -> model row index
    std::vector<int> serial_round_added;   // solver serial -> round
    std::vector<std::pair<int, double>> entries;

    auto add_model_row = [&](std::size_t idx, int round) {
        const LpRow& row = model.rows[idx];
        model.row_entries(row, entries);
        const int serial =
            solver.add_row(entries, model.row_sense(row), model.row_rhs(row));
        if (static_cast<std::size_t>(serial) != serial_model_row.size())
            throw std::logic_error("unexpected solver row serial");
        serial_model_row.push_back(static_cast<int>(idx));
        serial_round_added.push_back(round);
        in_working[idx] = 1;
    };

    // vertex-sum equalities are always enforced
    for (std::size_t idx = 0; idx < num_rows; ++idx)
        if (model.rows[idx].kind == RowKind::vertex_sum) add_model_row(idx, 0);

    std::vector<std::pair<double, std::size_t>> violated;
    long total_iterations = 0;

    for (int round = 1; round <= options.max_rounds; ++round) {
        const lp::SolveStatus st = solver.solve();
        total_iterations = solver.iterations();
        if (st == lp::SolveStatus::infeasible) {
            LpSolution sol;
            sol.n = model.n;
            sol.num_colors = model.num_colors;
            sol.status = LpSolution::Status::infeasible;
            sol.iterations = total_iterations;
            return sol;
        }
        if (st != lp::SolveStatus::optimal)
            throw std::runtime_error(std::string("lp solve failed: ") + lp::to_string(st));

        const Eigen::VectorXd x = solver.structural_values();
        const double cut_tol = std::max(options.eps_feas * 0.1, 1e-9);
        violated.clear();
        for (std::size_t idx = 0; idx < num_rows; ++idx) {
            if (in_working[idx]) continue;
            const LpRow& row = model.rows[idx];
            const double gap = model.row_rhs(row) - model.row_activity(row, x);
            if (gap > cut_tol) violated.emplace_back(gap, idx);
        }
        if (options.verbose)
            std::fprintf(stderr, "round %d: m=%d iters=%ld violated=%zu obj=%.9f\n", round,
                         solver.num_rows(), total_iterations, violated.size(),
                         solver.objective_value() + model.objective_constant);
        if (violated.empty()) {
            LpSolution sol = extract_solution(model, x, options.eps_feas);
            sol.iterations = total_iterations;
            return sol;
        }

        const std::size_t batch =
            std::min<std::size_t>(violated.size(), static_cast<std::size_t>(options.cut_batch));
        std::partial_sort(violated.begin(), violated.begin() + batch, violated.end(),
                          [](const auto& a, const auto& b) {
                              if (a.first != b.first) return a.first > b.first;
                              return a.second < b.second;
                          });

        // retire rows that stayed slack for a while before growing the basis
        if (options.drop_slack_rows && round > 1 && round <= options.max_rounds / 2) {
            std::vector<int> droppable;
            for (int pos = 0; pos < solver.num_rows(); ++pos) {
                const int serial = solver.row_serial(pos);
                const int idx = serial_model_row[serial];
                if (model.rows[idx].kind == RowKind::vertex_sum) continue;
                if (round - serial_round_added[serial] < 2) continue;
                if (solver.slack_value(pos) < -1e-6) droppable.push_back(pos);
            }
            if (!droppable.empty()) {
                solver.remove_slack_rows(droppable);
                std::fill(in_working.begin(), in_working.end(), 0);
                for (int pos = 0; pos < solver.num_rows(); ++pos)
                    in_working[serial_model_row[solver.row_serial(pos)]] = 1;
            }
        }

        for (std::size_t k = 0; k < batch; ++k) add_model_row(violated[k].second, round);
    }
    throw std::runtime_error("lazy constraint loop did not converge");
}

}  // namespace ccc

#pragma once

#include "ccc/lp_model.hpp"
#include "ccc/lp_solution.hpp"

namespace ccc {

struct SolveOptions {
    double eps_feas = 1e-7;
    int max_rounds = 300;      // lazy-constraint rounds
    int cut_batch = 1500;      // most-violated rows added per round
    bool drop_slack_rows = true;
    long max_iterations = 2'000'000;
    bool verbose = false;
};

// Solves the model exactly (all rows enforced) via lazy constraint
// generation over the internal simplex. Deterministic: identical model and
// options give an identical solution.
LpSolution solve(const LpModel& model, const SolveOptions& options = {});

}  // namespace ccc

#pragma once

#include <Eigen/Core>

namespace ccc {

// Fractional point of the chromatic clustering LP. x_node(u, c) is the
// fractional non-assignment of vertex u to color c; x_pair(p, c) the
// fractional separation of pair p in color c, with p the canonical index of
// the unordered pair (see pair_index).
struct LpSolution {
    enum class Status {
        optimal,            // produced by the solver, feasible within tolerance
        infeasible,         // solver proved infeasibility (signals a builder bug)
        tolerance_warning,  // solved but some constraint violated beyond eps
        constructed,        // prescribed/encoded point, not the result of a solve
    };

    int n = 0;
    int num_colors = 0;
    Eigen::MatrixXd x_node;  // n x L
    Eigen::MatrixXd x_pair;  // P x L
    double objective = 0.0;
    Status status = Status::constructed;
    double max_violation = 0.0;
    long iterations = 0;

    // fractional affirmative affinity y = 1 - x
    double y_node(int u, int c) const { return 1.0 - x_node(u, c); }
    double y_pair(long p, int c) const { return 1.0 - x_pair(p, c); }
};

const char* to_string(LpSolution::Status s);

}  // namespace ccc

#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

namespace ccc::lp {

enum class Sense { le, ge, eq };

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(SolveStatus s);

// Bounded-variable primal simplex, revised form: dense LU of the basis plus
// product-form eta updates. Rows can be added (and slack rows removed)
// between solves; solve() restores feasibility with artificials first, so the
// solver doubles as the engine of a lazy-constraint loop.
//
// Minimizes obj . x subject to the rows and 0 <= x_j <= upper_j.
struct SimplexOptions {
    double tol_feas = 1e-9;    // bound/row feasibility
    double tol_cost = 1e-9;    // reduced-cost optimality
    double tol_pivot = 1e-8;   // smallest acceptable pivot element
    long max_iterations = 2'000'000;
    int refactor_interval = 384;  // etas between refactorizations
};

class SimplexSolver {
public:
    using Options = SimplexOptions;

    SimplexSolver(Eigen::VectorXd obj, Eigen::VectorXd upper, Options options = {});

    int num_structurals() const { return num_structurals_; }
    int num_rows() const { return static_cast<int>(rows_.size()); }

    // Nonbasic placement for untouched variables; call before the first solve.
    void set_initial_at_upper(const std::vector<bool>& at_upper);

    // entries are (structural var, coefficient); returns the row's serial id.
    int add_row(std::vector<std::pair<int, double>> entries, Sense sense, double rhs);

    // Removes rows (by position) whose slack is basic; other positions are
    // skipped. Returns the number of rows removed.
    int remove_slack_rows(const std::vector<int>& positions);

    SolveStatus solve();

    double objective_value() const;
    Eigen::VectorXd structural_values() const;
    double slack_value(int row_pos) const;
    int row_serial(int pos) const { return rows_[pos].serial; }
    long iterations() const { return iterations_; }
    double last_residual() const { return last_residual_; }

private:
    enum class VarStatus : std::uint8_t { nonbasic_lower, nonbasic_upper, basic, dead };

    struct Row {
        std::vector<std::pair<int, double>> entries;  // structural coefficients
        Sense sense;
        double rhs;
        int serial;
        int slack_var;
        int art_var = -1;  // latest artificial attached to this row, if any
        double art_sign = 1.0;
    };

    struct Eta {
        int pivot_row;
        Eigen::VectorXd eta;
    };

    int new_variable(double lower, double upper, VarStatus status);
    double bound_value(int var) const;
    double var_value(int var) const;
    void refactor();
    void compute_basic_values();
    Eigen::VectorXd apply_etas(Eigen::VectorXd w) const;
    Eigen::VectorXd ftran(const std::vector<std::pair<int, double>>& col_by_pos) const;
    Eigen::VectorXd btran(Eigen::VectorXd y) const;
    std::vector<std::pair<int, double>> column_by_pos(int var) const;
    bool restore_feasibility();
    SolveStatus run_phase_one();
    SolveStatus run_phase(const Eigen::VectorXd& cost, bool phase_one);
    void pin_artificials();
    double phase_one_value() const;

    int num_structurals_;
    Options opt_;
    Eigen::VectorXd structural_obj_;

    // per-variable arrays, indexed by var id (structurals, then slacks/artificials)
    std::vector<double> lower_, upper_;
    std::vector<VarStatus> status_;
    std::vector<int> var_basis_pos_;                       // -1 when nonbasic
    std::vector<std::pair<int, double>> aux_col_;          // (row serial, coef) per aux var
    std::vector<std::vector<std::pair<int, double>>> structural_cols_;  // (row serial, coef)

    std::vector<Row> rows_;  // by position
    std::vector<int> serial_to_pos_;
    int next_serial_ = 0;

    std::vector<int> basis_;  // position -> basic var id
    Eigen::VectorXd x_basic_;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    std::vector<Eta> etas_;
    bool factor_valid_ = false;

    long iterations_ = 0;
    double last_residual_ = 0.0;
};

}  // namespace ccc::lp

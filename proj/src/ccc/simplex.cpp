#include "ccc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccc::lp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

SimplexSolver::SimplexSolver(Eigen::VectorXd obj, Eigen::VectorXd upper, Options options)
    : num_structurals_(static_cast<int>(obj.size())),
      opt_(options),
      structural_obj_(std::move(obj)) {
    if (upper.size() != structural_obj_.size())
        throw std::invalid_argument("objective/upper bound size mismatch");
    lower_.assign(num_structurals_, 0.0);
    upper_.resize(num_structurals_);
    for (int j = 0; j < num_structurals_; ++j) upper_[j] = upper(j);
    status_.assign(num_structurals_, VarStatus::nonbasic_lower);
    var_basis_pos_.assign(num_structurals_, -1);
    structural_cols_.resize(num_structurals_);
}

void SimplexSolver::set_initial_at_upper(const std::vector<bool>& at_upper) {
    if (static_cast<int>(at_upper.size()) != num_structurals_)
        throw std::invalid_argument("initial placement size mismatch");
    for (int j = 0; j < num_structurals_; ++j) {
        if (at_upper[j]) {
            if (!std::isfinite(upper_[j]))
                throw std::invalid_argument("cannot start at an infinite bound");
            status_[j] = VarStatus::nonbasic_upper;
        }
    }
}

int SimplexSolver::new_variable(double lower, double upper, VarStatus status) {
    const int id = static_cast<int>(lower_.size());
    lower_.push_back(lower);
    upper_.push_back(upper);
    status_.push_back(status);
    var_basis_pos_.push_back(-1);
    if (id >= num_structurals_) aux_col_.push_back({-1, 0.0});
    return id;
}

int SimplexSolver::add_row(std::vector<std::pair<int, double>> entries, Sense sense, double rhs) {
    const int serial = next_serial_++;
    double slo = 0.0, shi = 0.0;
    switch (sense) {
        case Sense::le: slo = 0.0, shi = kInf; break;
        case Sense::ge: slo = -kInf, shi = 0.0; break;
        case Sense::eq: slo = 0.0, shi = 0.0; break;
    }
    const int slack = new_variable(slo, shi, VarStatus::basic);
    aux_col_[slack - num_structurals_] = {serial, 1.0};

    Row row;
    row.entries = std::move(entries);
    row.sense = sense;
    row.rhs = rhs;
    row.serial = serial;
    row.slack_var = slack;
    for (const auto& [j, c] : row.entries) {
        if (j < 0 || j >= num_structurals_) throw std::invalid_argument("row entry out of range");
        structural_cols_[j].emplace_back(serial, c);
    }
    const int pos = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    serial_to_pos_.push_back(pos);
    basis_.push_back(slack);
    var_basis_pos_[slack] = pos;
    factor_valid_ = false;
    return serial;
}

double SimplexSolver::bound_value(int var) const {
    if (status_[var] == VarStatus::nonbasic_lower) return lower_[var];
    if (status_[var] == VarStatus::nonbasic_upper) return upper_[var];
    return 0.0;
}

double SimplexSolver::var_value(int var) const {
    if (status_[var] == VarStatus::basic) return x_basic_(var_basis_pos_[var]);
    if (status_[var] == VarStatus::dead) return 0.0;
    return bound_value(var);
}

std::vector<std::pair<int, double>> SimplexSolver::column_by_pos(int var) const {
    std::vector<std::pair<int, double>> col;
    if (var < num_structurals_) {
        col.reserve(structural_cols_[var].size());
        for (const auto& [serial, coef] : structural_cols_[var]) {
            const int pos = serial_to_pos_[serial];
            if (pos >= 0) col.emplace_back(pos, coef);
        }
    } else {
        const auto& [serial, coef] = aux_col_[var - num_structurals_];
        if (serial >= 0) {
            const int pos = serial_to_pos_[serial];
            if (pos >= 0) col.emplace_back(pos, coef);
        }
    }
    return col;
}

void SimplexSolver::refactor() {
    const int m = num_rows();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (const auto& [pos, coef] : column_by_pos(basis_[i])) b(pos, i) = coef;
    lu_.compute(b);
    etas_.clear();
    factor_valid_ = true;
}

Eigen::VectorXd SimplexSolver::apply_etas(Eigen::VectorXd w) const {
    for (const Eta& e : etas_) {
        const double t = w(e.pivot_row);
        if (t != 0.0) {
            w += e.eta * t;
            w(e.pivot_row) = e.eta(e.pivot_row) * t;
        }
    }
    return w;
}

void SimplexSolver::compute_basic_values() {
    const int m = num_rows();
    Eigen::VectorXd rhs(m);
    for (int pos = 0; pos < m; ++pos) {
        const Row& row = rows_[pos];
        double acc = row.rhs;
        for (const auto& [j, c] : row.entries)
            if (status_[j] != VarStatus::basic) acc -= c * var_value(j);
        if (status_[row.slack_var] != VarStatus::basic) acc -= var_value(row.slack_var);
        if (row.art_var >= 0 && status_[row.art_var] != VarStatus::basic)
            acc -= row.art_sign * var_value(row.art_var);
        rhs(pos) = acc;
    }
    x_basic_ = apply_etas(lu_.solve(rhs));
}

Eigen::VectorXd SimplexSolver::ftran(const std::vector<std::pair<int, double>>& col) const {
    Eigen::VectorXd dense = Eigen::VectorXd::Zero(num_rows());
    for (const auto& [pos, coef] : col) dense(pos) += coef;
    return apply_etas(lu_.solve(dense));
}

Eigen::VectorXd SimplexSolver::btran(Eigen::VectorXd y) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it)
        y(it->pivot_row) = it->eta.dot(y);
    return lu_.transpose().solve(y);
}

bool SimplexSolver::restore_feasibility() {
    refactor();
    compute_basic_values();
    std::vector<int> victims;
    for (int pos = 0; pos < num_rows(); ++pos) {
        const int v = basis_[pos];
        const double x = x_basic_(pos);
        if (x < lower_[v] - opt_.tol_feas || x > upper_[v] + opt_.tol_feas) victims.push_back(pos);
    }
    if (victims.empty()) return false;
    for (int pos : victims) {
        const int v = basis_[pos];
        status_[v] =
            x_basic_(pos) > upper_[v] ? VarStatus::nonbasic_upper : VarStatus::nonbasic_lower;
        var_basis_pos_[v] = -1;
        const int art = new_variable(0.0, kInf, VarStatus::basic);
        aux_col_[art - num_structurals_] = {rows_[pos].serial, 1.0};
        rows_[pos].art_var = art;
        rows_[pos].art_sign = 1.0;
        basis_[pos] = art;
        var_basis_pos_[art] = pos;
    }
    refactor();
    compute_basic_values();
    // give each artificial the column sign that makes its value nonnegative;
    // flipping column signs negates exactly those basic entries
    bool flipped = false;
    for (int pos : victims) {
        if (x_basic_(pos) < 0.0) {
            rows_[pos].art_sign = -1.0;
            aux_col_[basis_[pos] - num_structurals_].second = -1.0;
            x_basic_(pos) = -x_basic_(pos);
            flipped = true;
        }
    }
    if (flipped) refactor();
    return true;
}

double SimplexSolver::phase_one_value() const {
    double total = 0.0;
    for (const Row& row : rows_)
        if (row.art_var >= 0 && upper_[row.art_var] > 0.0) total += var_value(row.art_var);
    return total;
}

void SimplexSolver::pin_artificials() {
    for (const Row& row : rows_)
        if (row.art_var >= 0) upper_[row.art_var] = 0.0;
}

SolveStatus SimplexSolver::run_phase_one() {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(static_cast<long>(lower_.size()));
    for (const Row& row : rows_)
        if (row.art_var >= 0 && upper_[row.art_var] > 0.0) phase1(row.art_var) = 1.0;
    const SolveStatus st = run_phase(phase1, true);
    if (st != SolveStatus::optimal) return st;
    if (phase_one_value() > 1e-7) return SolveStatus::infeasible;
    pin_artificials();
    return SolveStatus::optimal;
}

SolveStatus SimplexSolver::run_phase(const Eigen::VectorXd& cost, bool phase_one) {
    const int m = num_rows();
    int degenerate_streak = 0;
    bool bland = false;

    auto reduced_cost = [&](int var, const Eigen::VectorXd& y) {
        double d = cost(var);
        if (var < num_structurals_) {
            for (const auto& [serial, coef] : structural_cols_[var]) {
                const int pos = serial_to_pos_[serial];
                if (pos >= 0) d -= coef * y(pos);
            }
        } else {
            const auto& [serial, coef] = aux_col_[var - num_structurals_];
            if (serial >= 0) {
                const int pos = serial_to_pos_[serial];
                if (pos >= 0) d -= coef * y(pos);
            }
        }
        return d;
    };

    for (;;) {
        if (iterations_ >= opt_.max_iterations) return SolveStatus::iteration_limit;
        if (!factor_valid_ || static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
            refactor();
            compute_basic_values();
        }
        if (phase_one && phase_one_value() <= opt_.tol_feas) return SolveStatus::optimal;

        Eigen::VectorXd c_basic(m);
        for (int i = 0; i < m; ++i) c_basic(i) = cost(basis_[i]);
        const Eigen::VectorXd y = btran(std::move(c_basic));

        int enter = -1;
        double best_score = opt_.tol_cost;
        const int total_vars = static_cast<int>(lower_.size());
        for (int var = 0; var < total_vars; ++var) {
            const VarStatus st = status_[var];
            if (st == VarStatus::basic || st == VarStatus::dead) continue;
            if (upper_[var] - lower_[var] <= 0.0) continue;  // fixed/pinned
            const double d = reduced_cost(var, y);
            double score = 0.0;
            if (st == VarStatus::nonbasic_lower && d < -opt_.tol_cost) score = -d;
            if (st == VarStatus::nonbasic_upper && d > opt_.tol_cost) score = d;
            if (score > best_score) {
                best_score = score;
                enter = var;
                if (bland) break;
            }
        }
        if (enter < 0) return SolveStatus::optimal;

        const double dir = status_[enter] == VarStatus::nonbasic_lower ? 1.0 : -1.0;
        const Eigen::VectorXd w = ftran(column_by_pos(enter));

        // ratio test; t_best starts at the entering variable's own range
        double t_best = upper_[enter] - lower_[enter];
        int leave_pos = -1;
        bool leave_to_upper = false;
        double leave_pivot = 0.0;
        for (int i = 0; i < m; ++i) {
            const double rate = -dir * w(i);
            const int bv = basis_[i];
            double t;
            bool to_upper;
            if (rate > opt_.tol_pivot) {
                if (!std::isfinite(upper_[bv])) continue;
                t = (upper_[bv] - x_basic_(i)) / rate;
                to_upper = true;
            } else if (rate < -opt_.tol_pivot) {
                if (!std::isfinite(lower_[bv])) continue;
                t = (lower_[bv] - x_basic_(i)) / rate;
                to_upper = false;
            } else {
                continue;
            }
            if (t < 0.0) t = 0.0;

            bool better;
            if (leave_pos < 0) {
                better = t < t_best;
            } else if (t < t_best - 1e-12) {
                better = true;
            } else if (t <= t_best + 1e-12) {
                if (bland) {
                    better = bv < basis_[leave_pos];
                } else if (std::abs(w(i)) > std::abs(leave_pivot) + 1e-12) {
                    better = true;
                } else if (std::abs(std::abs(w(i)) - std::abs(leave_pivot)) <= 1e-12) {
                    better = bv < basis_[leave_pos];
                } else {
                    better = false;
                }
            } else {
                better = false;
            }
            if (better) {
                t_best = t;
                leave_pos = i;
                leave_to_upper = to_upper;
                leave_pivot = w(i);
            }
        }

        if (!std::isfinite(t_best)) return SolveStatus::unbounded;

        ++iterations_;
        if (leave_pos < 0) {
            // bound-to-bound flip, basis unchanged
            x_basic_ -= (dir * t_best) * w;
            status_[enter] = status_[enter] == VarStatus::nonbasic_lower
                                 ? VarStatus::nonbasic_upper
                                 : VarStatus::nonbasic_lower;
            degenerate_streak = 0;
            continue;
        }

        if (std::abs(leave_pivot) < opt_.tol_pivot && !etas_.empty()) {
            refactor();
            compute_basic_values();
            continue;
        }

        const double enter_value = dir > 0 ? lower_[enter] + t_best : upper_[enter] - t_best;
        x_basic_ -= (dir * t_best) * w;
        const int leaving = basis_[leave_pos];
        status_[leaving] = leave_to_upper ? VarStatus::nonbasic_upper : VarStatus::nonbasic_lower;
        var_basis_pos_[leaving] = -1;
        basis_[leave_pos] = enter;
        var_basis_pos_[enter] = leave_pos;
        status_[enter] = VarStatus::basic;
        x_basic_(leave_pos) = enter_value;

        Eta eta;
        eta.pivot_row = leave_pos;
        eta.eta = -w / leave_pivot;
        eta.eta(leave_pos) = 1.0 / leave_pivot;
        etas_.push_back(std::move(eta));

        if (t_best <= opt_.tol_feas) {
            if (++degenerate_streak > 120) bland = true;
        } else {
            degenerate_streak = 0;
            bland = false;
        }
    }
}

SolveStatus SimplexSolver::solve() {
    if (rows_.empty()) {
        for (int j = 0; j < num_structurals_; ++j) {
            if (structural_obj_(j) < 0.0) {
                if (!std::isfinite(upper_[j])) return SolveStatus::unbounded;
                status_[j] = VarStatus::nonbasic_upper;
            } else {
                status_[j] = VarStatus::nonbasic_lower;
            }
        }
        x_basic_.resize(0);
        last_residual_ = 0.0;
        return SolveStatus::optimal;
    }

    if (restore_feasibility()) {
        const SolveStatus st = run_phase_one();
        if (st != SolveStatus::optimal) return st;
    }

    SolveStatus st = SolveStatus::optimal;
    for (int repair = 0; repair < 3; ++repair) {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(static_cast<long>(lower_.size()));
        cost.head(num_structurals_) = structural_obj_;
        st = run_phase(cost, false);
        if (st != SolveStatus::optimal) return st;

        refactor();
        compute_basic_values();
        double worst = 0.0;
        for (int pos = 0; pos < num_rows(); ++pos) {
            const int v = basis_[pos];
            worst = std::max(worst, lower_[v] - x_basic_(pos));
            worst = std::max(worst, x_basic_(pos) - upper_[v]);
        }
        last_residual_ = std::max(worst, 0.0);
        if (last_residual_ <= 10 * opt_.tol_feas) break;
        if (restore_feasibility()) {
            const SolveStatus p1 = run_phase_one();
            if (p1 != SolveStatus::optimal) return p1;
        }
    }
    return st;
}

double SimplexSolver::objective_value() const {
    double total = 0.0;
    for (int j = 0; j < num_structurals_; ++j) total += structural_obj_(j) * var_value(j);
    return total;
}

Eigen::VectorXd SimplexSolver::structural_values() const {
    Eigen::VectorXd x(num_structurals_);
    for (int j = 0; j < num_structurals_; ++j) x(j) = var_value(j);
    return x;
}

double SimplexSolver::slack_value(int row_pos) const {
    return var_value(rows_[row_pos].slack_var);
}

int SimplexSolver::remove_slack_rows(const std::vector<int>& positions) {
    std::vector<bool> drop(rows_.size(), false);
    int count = 0;
    for (int pos : positions) {
        if (pos < 0 || pos >= num_rows()) continue;
        const Row& row = rows_[pos];
        if (status_[row.slack_var] != VarStatus::basic) continue;
        if (row.art_var >= 0 && status_[row.art_var] == VarStatus::basic) continue;
        if (drop[pos]) continue;
        drop[pos] = true;
        ++count;
    }
    if (count == 0) return 0;

    std::vector<Row> kept;
    kept.reserve(rows_.size() - count);
    for (int pos = 0; pos < num_rows(); ++pos) {
        Row& row = rows_[pos];
        if (!drop[pos]) {
            kept.push_back(std::move(row));
            continue;
        }
        for (const auto& [j, c] : row.entries) {
            auto& col = structural_cols_[j];
            col.erase(std::remove_if(col.begin(), col.end(),
                                     [&](const auto& e) { return e.first == row.serial; }),
                      col.end());
        }
        status_[row.slack_var] = VarStatus::dead;
        var_basis_pos_[row.slack_var] = -1;
        aux_col_[row.slack_var - num_structurals_] = {-1, 0.0};
        if (row.art_var >= 0) {
            status_[row.art_var] = VarStatus::dead;
            var_basis_pos_[row.art_var] = -1;
            aux_col_[row.art_var - num_structurals_] = {-1, 0.0};
        }
        serial_to_pos_[row.serial] = -1;
    }
    rows_ = std::move(kept);
    for (int pos = 0; pos < num_rows(); ++pos) serial_to_pos_[rows_[pos].serial] = pos;

    std::vector<int> new_basis;
    new_basis.reserve(rows_.size());
    for (int v : basis_)
        if (status_[v] == VarStatus::basic) new_basis.push_back(v);
    basis_ = std::move(new_basis);
    if (basis_.size() != rows_.size())
        throw std::logic_error("basis/row bookkeeping mismatch after row removal");
    std::fill(var_basis_pos_.begin(), var_basis_pos_.end(), -1);
    for (int i = 0; i < num_rows(); ++i) var_basis_pos_[basis_[i]] = i;
    factor_valid_ = false;
    return count;
}

}  // namespace ccc::lp

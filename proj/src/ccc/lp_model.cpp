#include "ccc/lp_model.hpp"

#include <sstream>
#include <stdexcept>

namespace ccc {

void LpModel::row_entries(const LpRow& row, std::vector<std::pair<int, double>>& entries) const {
    entries.clear();
    switch (row.kind) {
        case RowKind::metric_u:
            entries.emplace_back(pair_var(row.a, row.b, row.color), 1.0);
            entries.emplace_back(node_var(row.a, row.color), -1.0);
            break;
        case RowKind::metric_v:
            entries.emplace_back(pair_var(row.a, row.b, row.color), 1.0);
            entries.emplace_back(node_var(row.b, row.color), -1.0);
            break;
        case RowKind::triangle:
            entries.emplace_back(pair_var(row.a, row.w, row.color), 1.0);
            entries.emplace_back(pair_var(row.w, row.b, row.color), 1.0);
            entries.emplace_back(pair_var(row.a, row.b, row.color), -1.0);
            break;
        case RowKind::vertex_sum:
            for (int c = 0; c < num_colors; ++c) entries.emplace_back(node_var(row.a, c), 1.0);
            break;
        case RowKind::c4:
            for (int c = 0; c < num_colors; ++c)
                entries.emplace_back(pair_var(row.a, row.b, c), 1.0);
            break;
    }
}

lp::Sense LpModel::row_sense(const LpRow& row) const {
    return row.kind == RowKind::vertex_sum ? lp::Sense::eq : lp::Sense::ge;
}

double LpModel::row_rhs(const LpRow& row) const {
    switch (row.kind) {
        case RowKind::vertex_sum:
        case RowKind::c4: return num_colors - 1;
        default: return 0.0;
    }
}

std::string LpModel::row_name(const LpRow& row) const {
    std::ostringstream ss;
    switch (row.kind) {
        case RowKind::metric_u: ss << "mu_" << row.a << "_" << row.b << "_c" << row.color; break;
        case RowKind::metric_v: ss << "mv_" << row.a << "_" << row.b << "_c" << row.color; break;
        case RowKind::triangle:
            ss << "tr_" << row.a << "_" << row.b << "_" << row.w << "_c" << row.color;
            break;
        case RowKind::vertex_sum: ss << "vs_" << row.a; break;
        case RowKind::c4: ss << "c4_" << row.a << "_" << row.b; break;
    }
    return ss.str();
}

std::string LpModel::var_name(int var) const {
    std::ostringstream ss;
    if (var < num_node_vars()) {
        ss << "x_u" << var / num_colors << "_c" << var % num_colors;
        return ss.str();
    }
    const int rel = var - num_node_vars();
    const std::size_t pair = static_cast<std::size_t>(rel / num_colors);
    const int c = rel % num_colors;
    // invert the pair index
    int u = 0;
    std::size_t offset = 0;
    while (offset + static_cast<std::size_t>(n - u - 1) <= pair) {
        offset += n - u - 1;
        ++u;
    }
    const int v = static_cast<int>(pair - offset) + u + 1;
    ss << "x_p" << u << "_" << v << "_c" << c;
    return ss.str();
}

double LpModel::row_activity(const LpRow& row, const Eigen::VectorXd& x) const {
    std::vector<std::pair<int, double>> entries;
    row_entries(row, entries);
    double acc = 0.0;
    for (const auto& [j, c] : entries) acc += c * x(j);
    return acc;
}

bool LpModel::structurally_equal(const LpModel& other) const {
    if (n != other.n || num_colors != other.num_colors || has_c4 != other.has_c4) return false;
    if (pair_colors != other.pair_colors) return false;
    if (objective.size() != other.objective.size()) return false;
    if ((objective - other.objective).cwiseAbs().maxCoeff() > 0.0) return false;
    if (objective_constant != other.objective_constant) return false;
    if (rows.size() != other.rows.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const LpRow& r = rows[i];
        const LpRow& s = other.rows[i];
        if (r.kind != s.kind || r.a != s.a || r.b != s.b || r.w != s.w || r.color != s.color)
            return false;
    }
    return true;
}

LpModel build_ccc_lp(const CccInstance& inst) {
    LpModel model;
    model.n = inst.n();
    model.num_colors = inst.num_colors();
    const int n = model.n;
    const int L = model.num_colors;

    model.pair_colors.resize(pair_count(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            model.pair_colors[pair_index(n, u, v)] = inst.color(u, v);

    model.objective = Eigen::VectorXd::Zero(model.num_vars());
    model.objective_constant = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const std::size_t p = pair_index(n, u, v);
            const Color c = model.pair_colors[p];
            if (c == kGamma) {
                model.objective_constant += L;
                for (int k = 0; k < L; ++k) model.objective(model.pair_var(p, k)) -= 1.0;
            } else {
                model.objective(model.pair_var(p, c)) += 1.0;
            }
        }
    }

    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            for (int c = 0; c < L; ++c) {
                model.rows.push_back({RowKind::metric_u, u, v, 0, c});
                model.rows.push_back({RowKind::metric_v, u, v, 0, c});
            }
        }
    }
    // all three orientations per unordered triple, duplicates excluded
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            for (int w = v + 1; w < n; ++w) {
                for (int c = 0; c < L; ++c) {
                    model.rows.push_back({RowKind::triangle, u, v, w, c});
                    model.rows.push_back({RowKind::triangle, u, w, v, c});
                    model.rows.push_back({RowKind::triangle, v, w, u, c});
                }
            }
        }
    }
    for (int u = 0; u < n; ++u) model.rows.push_back({RowKind::vertex_sum, u, 0, 0, 0});
    return model;
}

LpModel augment_c4(const LpModel& model) {
    if (model.has_c4) throw std::invalid_argument("model already carries the coupling rows");
    LpModel out = model;
    out.has_c4 = true;
    for (int u = 0; u < model.n; ++u)
        for (int v = u + 1; v < model.n; ++v)
            out.rows.push_back({RowKind::c4, u, v, 0, 0});
    return out;
}

ClassicCcModel build_classic_cc_lp(const CccInstance& inst) {
    if (inst.num_colors() != 1)
        throw std::invalid_argument("classical relaxation needs a single-color instance");
    ClassicCcModel model;
    model.n = inst.n();
    model.objective = Eigen::VectorXd::Zero(static_cast<long>(pair_count(model.n)));
    model.positive.assign(pair_count(model.n), false);
    for (int u = 0; u < model.n; ++u) {
        for (int v = u + 1; v < model.n; ++v) {
            const std::size_t p = pair_index(model.n, u, v);
            if (inst.color(u, v) == kGamma) {
                model.objective_constant += 1.0;
                model.objective(static_cast<long>(p)) -= 1.0;
            } else {
                model.positive[p] = true;
                model.objective(static_cast<long>(p)) += 1.0;
            }
        }
    }
    return model;
}

double solve_classic_cc_lp(const ClassicCcModel& model, double eps_feas) {
    const int n = model.n;
    const long num_vars = static_cast<long>(pair_count(n));
    lp::SimplexSolver solver(model.objective, Eigen::VectorXd::Ones(num_vars));
    std::vector<bool> at_upper(num_vars, true);
    solver.set_initial_at_upper(at_upper);

    // lazy triangle rows
    for (int round = 0; round < 200; ++round) {
        if (solver.solve() != lp::SolveStatus::optimal)
            throw std::runtime_error("classical relaxation solve failed");
        const Eigen::VectorXd x = solver.structural_values();
        int added = 0;
        for (int u = 0; u < n && added < 20000; ++u) {
            for (int v = u + 1; v < n; ++v) {
                for (int w = v + 1; w < n; ++w) {
                    const double xuv = x(static_cast<long>(pair_index(n, u, v)));
                    const double xuw = x(static_cast<long>(pair_index(n, u, w)));
                    const double xvw = x(static_cast<long>(pair_index(n, v, w)));
                    auto add = [&](int p1, int p2, int p3) {
                        solver.add_row({{p1, 1.0}, {p2, 1.0}, {p3, -1.0}}, lp::Sense::ge, 0.0);
                        ++added;
                    };
                    const int puv = static_cast<int>(pair_index(n, u, v));
                    const int puw = static_cast<int>(pair_index(n, u, w));
                    const int pvw = static_cast<int>(pair_index(n, v, w));
                    if (xuw + xvw < xuv - eps_feas) add(puw, pvw, puv);
                    if (xuv + xvw < xuw - eps_feas) add(puv, pvw, puw);
                    if (xuv + xuw < xvw - eps_feas) add(puv, puw, pvw);
                }
            }
        }
        if (added == 0) return solver.objective_value() + model.objective_constant;
    }
    throw std::runtime_error("classical relaxation did not converge");
}

LpSolution integral_encoding(const CccInstance& inst, const Clustering& cl) {
    validate_clustering(inst, cl);
    const int n = inst.n();
    const int L = inst.num_colors();
    LpSolution sol;
    sol.n = n;
    sol.num_colors = L;
    sol.x_node = Eigen::MatrixXd::Ones(n, L);
    for (int u = 0; u < n; ++u) sol.x_node(u, cl.cluster_colors[cl.assignment[u]]) = 0.0;
    sol.x_pair = Eigen::MatrixXd::Ones(static_cast<long>(pair_count(n)), L);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (cl.assignment[u] == cl.assignment[v]) {
                const long p = static_cast<long>(pair_index(n, u, v));
                sol.x_pair(p, cl.cluster_colors[cl.assignment[u]]) = 0.0;
            }
        }
    }
    double obj = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const long p = static_cast<long>(pair_index(n, u, v));
            const Color c = inst.color(u, v);
            if (c == kGamma) {
                obj += L - sol.x_pair.row(p).sum();
            } else {
                obj += sol.x_pair(p, c);
            }
        }
    }
    sol.objective = obj;
    sol.status = LpSolution::Status::constructed;
    return sol;
}

std::string ViolationReport::to_string() const {
    std::ostringstream ss;
    ss << violations << " of " << checked << " constraints violated (max "
       << max_violation << ")";
    for (const Violation& v : sample) ss << "\n  " << v.what << " by " << v.amount;
    return ss.str();
}

namespace {

void record(ViolationReport& report, double amount, const char* fmt, int a, int b, int w, int c) {
    ++report.checked;
    if (amount <= 0.0) return;
    ++report.violations;
    report.max_violation = std::max(report.max_violation, amount);
    if (report.sample.size() < 50) {
        std::ostringstream ss;
        ss << fmt << "(" << a;
        if (b >= 0) ss << "," << b;
        if (w >= 0) ss << "," << w;
        if (c >= 0) ss << ";c" << c;
        ss << ")";
        report.sample.push_back({ss.str(), amount});
    }
}

}  // namespace

ViolationReport validate_solution(const CccInstance& inst, const LpSolution& sol, bool with_c4,
                                  double eps_feas) {
    const int n = inst.n();
    const int L = inst.num_colors();
    if (sol.n != n || sol.num_colors != L)
        throw std::invalid_argument("solution dimensions do not match the instance");
    if (sol.x_node.rows() != n || sol.x_node.cols() != L ||
        sol.x_pair.rows() != static_cast<long>(pair_count(n)) || sol.x_pair.cols() != L)
        throw std::invalid_argument("solution matrices have wrong shape");

    ViolationReport report;
    for (int u = 0; u < n; ++u) {
        for (int c = 0; c < L; ++c) {
            const double x = sol.x_node(u, c);
            const double out = std::max(-x, x - 1.0);
            record(report, out > eps_feas ? out : 0.0, "bound_node", u, -1, -1, c);
        }
    }
    for (long p = 0; p < sol.x_pair.rows(); ++p) {
        for (int c = 0; c < L; ++c) {
            const double x = sol.x_pair(p, c);
            const double out = std::max(-x, x - 1.0);
            record(report, out > eps_feas ? out : 0.0, "bound_pair", static_cast<int>(p), -1, -1,
                   c);
        }
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const long p = static_cast<long>(pair_index(n, u, v));
            for (int c = 0; c < L; ++c) {
                const double xp = sol.x_pair(p, c);
                const double vu = sol.x_node(u, c) - xp;
                record(report, vu > eps_feas ? vu : 0.0, "metric_u", u, v, -1, c);
                const double vv = sol.x_node(v, c) - xp;
                record(report, vv > eps_feas ? vv : 0.0, "metric_v", u, v, -1, c);
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            for (int w = v + 1; w < n; ++w) {
                const long puv = static_cast<long>(pair_index(n, u, v));
                const long puw = static_cast<long>(pair_index(n, u, w));
                const long pvw = static_cast<long>(pair_index(n, v, w));
                for (int c = 0; c < L; ++c) {
                    const double xuv = sol.x_pair(puv, c);
                    const double xuw = sol.x_pair(puw, c);
                    const double xvw = sol.x_pair(pvw, c);
                    double d = xuv - xuw - xvw;
                    record(report, d > eps_feas ? d : 0.0, "triangle", u, v, w, c);
                    d = xuw - xuv - xvw;
                    record(report, d > eps_feas ? d : 0.0, "triangle", u, w, v, c);
                    d = xvw - xuv - xuw;
                    record(report, d > eps_feas ? d : 0.0, "triangle", v, w, u, c);
                }
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        const double s = sol.x_node.row(u).sum() - (L - 1);
        record(report, std::abs(s) > eps_feas ? std::abs(s) : 0.0, "vertex_sum", u, -1, -1, -1);
    }
    if (with_c4) {
        for (long p = 0; p < sol.x_pair.rows(); ++p) {
            const double s = (L - 1) - sol.x_pair.row(p).sum();
            record(report, s > eps_feas ? s : 0.0, "c4", static_cast<int>(p), -1, -1, -1);
        }
    }
    return report;
}

}  // namespace ccc

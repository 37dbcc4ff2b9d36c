#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "ccc/seeding.hpp"
#include "ccc/simplex.hpp"

using namespace ccc;
using lp::Sense;
using lp::SimplexSolver;
using lp::SolveStatus;

namespace {

struct TestLp {
    Eigen::VectorXd obj;
    Eigen::VectorXd upper;
    std::vector<std::vector<std::pair<int, double>>> row_entries;
    std::vector<Sense> senses;
    std::vector<double> rhs;
};

bool feasible_point(const TestLp& lp, const Eigen::VectorXd& x, double tol) {
    for (long j = 0; j < x.size(); ++j)
        if (x(j) < -tol || x(j) > lp.upper(j) + tol) return false;
    for (std::size_t i = 0; i < lp.row_entries.size(); ++i) {
        double act = 0.0;
        for (const auto& [j, c] : lp.row_entries[i]) act += c * x(j);
        switch (lp.senses[i]) {
            case Sense::le:
                if (act > lp.rhs[i] + tol) return false;
                break;
            case Sense::ge:
                if (act < lp.rhs[i] - tol) return false;
                break;
            case Sense::eq:
                if (std::abs(act - lp.rhs[i]) > tol) return false;
                break;
        }
    }
    return true;
}

// Independent oracle: enumerate candidate vertices as solutions of every
// square active-set system (rows as equalities plus bound constraints) and
// take the best feasible one.
std::optional<double> oracle_optimum(const TestLp& lp) {
    const int nv = static_cast<int>(lp.obj.size());
    const int nr = static_cast<int>(lp.row_entries.size());
    const int total = nr + 2 * nv;  // rows, x_j = 0, x_j = u_j
    std::vector<int> pick(nv);
    std::optional<double> best;

    std::vector<int> stack;
    stack.push_back(0);
    while (!stack.empty()) {
        if (static_cast<int>(stack.size()) == nv) {
            if (stack.back() < total) {
                for (int k = 0; k < nv; ++k) pick[k] = stack[k];
                Eigen::MatrixXd a(nv, nv);
                Eigen::VectorXd b(nv);
                for (int k = 0; k < nv; ++k) {
                    const int c = pick[k];
                    a.row(k).setZero();
                    if (c < nr) {
                        for (const auto& [j, coef] : lp.row_entries[c]) a(k, j) += coef;
                        b(k) = lp.rhs[c];
                    } else if (c < nr + nv) {
                        a(k, c - nr) = 1.0;
                        b(k) = 0.0;
                    } else {
                        a(k, c - nr - nv) = 1.0;
                        b(k) = lp.upper(c - nr - nv);
                    }
                }
                Eigen::FullPivLU<Eigen::MatrixXd> solver(a);
                if (solver.isInvertible()) {
                    const Eigen::VectorXd x = solver.solve(b);
                    if (feasible_point(lp, x, 1e-8)) {
                        const double val = lp.obj.dot(x);
                        if (!best || val < *best) best = val;
                    }
                }
                stack.back()++;
            } else {
                stack.pop_back();
                if (!stack.empty()) stack.back()++;
            }
        } else if (stack.back() >= total) {
            stack.pop_back();
            if (!stack.empty()) stack.back()++;
        } else {
            stack.push_back(stack.back() + 1);
        }
    }
    return best;
}

TestLp random_lp(Rng& rng, int nv, int nr) {
    TestLp lp;
    lp.obj.resize(nv);
    lp.upper.resize(nv);
    for (int j = 0; j < nv; ++j) {
        lp.obj(j) = rng.next_below(11) - 5;
        lp.upper(j) = 1 + rng.next_below(2);
    }
    for (int i = 0; i < nr; ++i) {
        std::vector<std::pair<int, double>> entries;
        for (int j = 0; j < nv; ++j) {
            const int c = rng.next_below(7) - 3;
            if (c != 0) entries.emplace_back(j, static_cast<double>(c));
        }
        if (entries.empty()) entries.emplace_back(rng.next_below(nv), 1.0);
        lp.row_entries.push_back(entries);
        const int s = rng.next_below(3);
        lp.senses.push_back(s == 0 ? Sense::le : (s == 1 ? Sense::ge : Sense::eq));
        lp.rhs.push_back(rng.next_below(9) - 3);
    }
    return lp;
}

SimplexSolver make_solver(const TestLp& lp) {
    SimplexSolver solver(lp.obj, lp.upper);
    for (std::size_t i = 0; i < lp.row_entries.size(); ++i)
        solver.add_row(lp.row_entries[i], lp.senses[i], lp.rhs[i]);
    return solver;
}

}  // namespace

TEST_CASE("hand-built LPs reach known optima") {
    // min -x - 2y st x + y <= 1.5, 0 <= x,y <= 1: optimum -2.5 at (0.5, 1)
    TestLp lp;
    lp.obj.resize(2);
    lp.obj << -1, -2;
    lp.upper.resize(2);
    lp.upper << 1, 1;
    lp.row_entries = {{{0, 1.0}, {1, 1.0}}};
    lp.senses = {Sense::le};
    lp.rhs = {1.5};
    SimplexSolver solver = make_solver(lp);
    REQUIRE(solver.solve() == SolveStatus::optimal);
    CHECK(solver.objective_value() == doctest::Approx(-2.5).epsilon(1e-9));
    const Eigen::VectorXd x = solver.structural_values();
    CHECK(x(0) == doctest::Approx(0.5));
    CHECK(x(1) == doctest::Approx(1.0));
}

TEST_CASE("equality rows force phase-one restoration") {
    // min x + y st x + y = 1.2, x - y >= -0.4: optimum 1.2
    TestLp lp;
    lp.obj.resize(2);
    lp.obj << 1, 1;
    lp.upper.resize(2);
    lp.upper << 1, 1;
    lp.row_entries = {{{0, 1.0}, {1, 1.0}}, {{0, 1.0}, {1, -1.0}}};
    lp.senses = {Sense::eq, Sense::ge};
    lp.rhs = {1.2, -0.4};
    SimplexSolver solver = make_solver(lp);
    REQUIRE(solver.solve() == SolveStatus::optimal);
    CHECK(solver.objective_value() == doctest::Approx(1.2).epsilon(1e-9));
}

TEST_CASE("infeasible system is detected") {
    TestLp lp;
    lp.obj.resize(1);
    lp.obj << 1;
    lp.upper.resize(1);
    lp.upper << 1;
    lp.row_entries = {{{0, 1.0}}, {{0, 1.0}}};
    lp.senses = {Sense::ge, Sense::le};
    lp.rhs = {0.8, 0.2};
    SimplexSolver solver = make_solver(lp);
    CHECK(solver.solve() == SolveStatus::infeasible);
}

TEST_CASE("random LPs match the active-set oracle") {
    Rng rng(20240817);
    int solved = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int nv = 2 + rng.next_below(3);
        const int nr = 1 + rng.next_below(6);
        TestLp lp = random_lp(rng, nv, nr);
        const std::optional<double> expect = oracle_optimum(lp);
        SimplexSolver solver = make_solver(lp);
        const SolveStatus st = solver.solve();
        if (!expect) {
            CHECK(st == SolveStatus::infeasible);
            continue;
        }
        REQUIRE(st == SolveStatus::optimal);
        CHECK(solver.objective_value() == doctest::Approx(*expect).epsilon(1e-6));
        CHECK(feasible_point(lp, solver.structural_values(), 1e-6));
        ++solved;
    }
    CHECK(solved > 40);  // the generator must produce plenty of feasible LPs
}

TEST_CASE("rows added after a solve are honored (warm restart)") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const int nv = 2 + rng.next_below(3);
        TestLp lp = random_lp(rng, nv, 3);
        for (std::size_t i = 0; i < lp.senses.size(); ++i) {
            lp.senses[i] = Sense::le;
            lp.rhs[i] = std::abs(lp.rhs[i]) + 1;  // keep the box corner feasible
        }
        TestLp extended = lp;
        std::vector<std::pair<int, double>> extra;
        for (int j = 0; j < nv; ++j) extra.emplace_back(j, 1.0);
        extended.row_entries.push_back(extra);
        extended.senses.push_back(Sense::ge);
        extended.rhs.push_back(1.0);

        SimplexSolver warm = make_solver(lp);
        REQUIRE(warm.solve() == SolveStatus::optimal);
        warm.add_row(extra, Sense::ge, 1.0);
        const SolveStatus st2 = warm.solve();

        SimplexSolver cold = make_solver(extended);
        const SolveStatus st_cold = cold.solve();
        REQUIRE(st2 == st_cold);
        if (st2 == SolveStatus::optimal)
            CHECK(warm.objective_value() == doctest::Approx(cold.objective_value()).epsilon(1e-7));
    }
}

TEST_CASE("slack row removal keeps the optimum") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        TestLp lp = random_lp(rng, 3, 5);
        for (std::size_t i = 0; i < lp.senses.size(); ++i) {
            lp.senses[i] = Sense::le;
            lp.rhs[i] = std::abs(lp.rhs[i]) + 2;  // generously slack
        }
        SimplexSolver solver = make_solver(lp);
        REQUIRE(solver.solve() == SolveStatus::optimal);
        const double before = solver.objective_value();
        std::vector<int> droppable;
        for (int pos = 0; pos < solver.num_rows(); ++pos)
            if (std::abs(solver.slack_value(pos)) > 1e-6) droppable.push_back(pos);
        solver.remove_slack_rows(droppable);
        REQUIRE(solver.solve() == SolveStatus::optimal);
        CHECK(solver.objective_value() == doctest::Approx(before).epsilon(1e-7));
    }
}

TEST_CASE("initial at-upper placement is honored") {
    TestLp lp;
    lp.obj.resize(2);
    lp.obj << 0, 0;  // no pressure: the solution stays at the initial point
    lp.upper.resize(2);
    lp.upper << 1, 1;
    SimplexSolver solver(lp.obj, lp.upper);
    solver.add_row({{0, 1.0}, {1, 1.0}}, Sense::le, 3.0);
    solver.set_initial_at_upper({true, false});
    REQUIRE(solver.solve() == SolveStatus::optimal);
    const Eigen::VectorXd x = solver.structural_values();
    CHECK(x(0) == doctest::Approx(1.0));
    CHECK(x(1) == doctest::Approx(0.0));
}

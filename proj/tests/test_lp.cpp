#include <doctest.h>

#include <array>
#include <cmath>

#include "ccc/analysis.hpp"
#include "ccc/instance.hpp"
#include "ccc/lp_model.hpp"
#include "ccc/lp_solve.hpp"
#include "ccc/lp_text.hpp"
#include "ccc/seeding.hpp"

using namespace ccc;

namespace {

CccInstance triangle_ppg() {
    // colors (0, 0, gamma) on the three pairs of a 3-vertex instance
    CccInstance inst(3, 1);
    inst.set_color(0, 1, 0);
    inst.set_color(0, 2, 0);
    inst.set_color(1, 2, kGamma);
    return inst;
}

// brute-force grid oracle for the 3-vertex single-color relaxation:
// min x01 + x02 + (1 - x12) over the triangle-feasible grid
double grid_oracle_ppg() {
    double best = 1e9;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            for (int k = 0; k <= 100; ++k) {
                const double a = i / 100.0, b = j / 100.0, c = k / 100.0;
                if (a + b < c || b + c < a || c + a < b) continue;
                best = std::min(best, a + b + (1.0 - c));
            }
        }
    }
    return best;
}

Clustering random_clustering(const CccInstance& inst, Rng& rng) {
    Clustering cl;
    cl.assignment.resize(inst.n());
    const int k = 1 + rng.next_below(inst.n());
    std::vector<bool> used(k, false);
    for (int u = 0; u < inst.n(); ++u) {
        cl.assignment[u] = rng.next_below(k);
        used[cl.assignment[u]] = true;
    }
    // compact ids
    std::vector<int> remap(k, -1);
    int next = 0;
    for (int id = 0; id < k; ++id)
        if (used[id]) remap[id] = next++;
    for (int& a : cl.assignment) a = remap[a];
    cl.cluster_colors.resize(next);
    for (int id = 0; id < next; ++id) cl.cluster_colors[id] = rng.next_below(inst.num_colors());
    return cl;
}

}  // namespace

TEST_CASE("model shape: n=2, L=1") {
    CccInstance inst(2, 1);
    inst.set_color(0, 1, 0);
    const LpModel model = build_ccc_lp(inst);
    CHECK(model.num_pair_vars() == 1);
    CHECK(model.num_node_vars() == 2);
    const LpSolution sol = solve(model);
    CHECK(sol.status == LpSolution::Status::optimal);
    CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sol.x_pair(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("variable count formula") {
    for (int n : {2, 5, 9}) {
        for (int L : {1, 2, 4}) {
            const CccInstance inst = gen_random_multirelational(n, L, 0.3, 1);
            const LpModel model = build_ccc_lp(inst);
            CHECK(model.num_vars() ==
                  n * L + L * static_cast<int>(pair_count(n)));
        }
    }
}

TEST_CASE("triangle (+,+,gamma) optimum matches the grid oracle") {
    const double expect = grid_oracle_ppg();
    CHECK(expect == doctest::Approx(1.0).epsilon(1e-9));
    const LpModel model = build_ccc_lp(triangle_ppg());
    const LpSolution sol = solve(model);
    CHECK(sol.status == LpSolution::Status::optimal);
    CHECK(sol.objective == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("degenerate single-vertex model") {
    CccInstance inst(1, 2);
    const LpModel model = build_ccc_lp(inst);
    CHECK(model.num_pair_vars() == 0);
    const LpSolution sol = solve(model);
    CHECK(sol.status == LpSolution::Status::optimal);
    CHECK(sol.objective == doctest::Approx(0.0));
    CHECK(sol.x_node.row(0).sum() == doctest::Approx(1.0));
}

TEST_CASE("c4 augmentation adds one row per pair and can only raise the optimum") {
    const CccInstance inst = gen_max_interfering(6, 2, 0.0, 0);
    const LpModel model = build_ccc_lp(inst);
    const LpModel coupled = augment_c4(model);
    CHECK(coupled.rows.size() == model.rows.size() + pair_count(6));
    CHECK_THROWS_AS(augment_c4(coupled), std::invalid_argument);

    const LpSolution plain = solve(model);
    const LpSolution strong = solve(coupled);
    CHECK(strong.objective >= plain.objective - 1e-9);
}

TEST_CASE("c4 rows are vacuous at L=1") {
    const CccInstance inst = gen_random_multirelational(7, 1, 0.4, 3);
    const LpSolution plain = solve(build_ccc_lp(inst));
    const LpSolution strong = solve(augment_c4(build_ccc_lp(inst)));
    CHECK(plain.objective == doctest::Approx(strong.objective).epsilon(1e-9));
}

TEST_CASE("integral encodings are exactly feasible and priced like the cost") {
    Rng rng(505);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + rng.next_below(6);
        const int L = 1 + rng.next_below(3);
        const CccInstance inst =
            gen_random_multirelational(n, L, 0.2 + 0.5 * rng.next_unit(), rng.next_u64());
        const Clustering cl = random_clustering(inst, rng);
        const LpSolution enc = integral_encoding(inst, cl);
        CHECK(enc.objective == doctest::Approx(static_cast<double>(cost(inst, cl))));
        CHECK(validate_solution(inst, enc, true, 0.0).empty());
    }
}

TEST_CASE("integral pair sums: L-1 when together, L when apart") {
    const CccInstance inst = gen_max_interfering(4, 3, 0.0, 0);
    Clustering cl;
    cl.assignment = {0, 0, 1, 1};
    cl.cluster_colors = {0, 1};
    const LpSolution enc = integral_encoding(inst, cl);
    const int L = 3;
    CHECK(enc.x_pair.row(static_cast<long>(pair_index(4, 0, 1))).sum() ==
          doctest::Approx(L - 1));
    CHECK(enc.x_pair.row(static_cast<long>(pair_index(4, 0, 2))).sum() == doctest::Approx(L));
}

TEST_CASE("validator pinpoints violations") {
    const CccInstance inst = gen_max_interfering(4, 2, 0.0, 0);
    LpSolution zero;
    zero.n = 4;
    zero.num_colors = 2;
    zero.x_node = Eigen::MatrixXd::Zero(4, 2);
    zero.x_pair = Eigen::MatrixXd::Zero(6, 2);
    const ViolationReport report = validate_solution(inst, zero, false, 1e-9);
    CHECK(!report.empty());
    int vertex_sum_violations = 0;
    for (const Violation& v : report.sample)
        if (v.what.rfind("vertex_sum", 0) == 0) ++vertex_sum_violations;
    CHECK(vertex_sum_violations == 4);
}

TEST_CASE("symmetric half point: plain-feasible, coupling rows tight at L=2") {
    const CccInstance inst = gen_max_interfering(6, 2, 0.0, 0);  // fully labeled
    LpSolution half;
    half.n = 6;
    half.num_colors = 2;
    half.x_node = Eigen::MatrixXd::Constant(6, 2, 0.5);
    half.x_pair = Eigen::MatrixXd::Constant(15, 2, 0.5);
    half.objective = static_cast<double>(inst.labeled_pair_count()) / 2.0;
    CHECK(validate_solution(inst, half, false, 0.0).empty());
    CHECK(validate_solution(inst, half, true, 0.0).empty());  // equality boundary
    // and the plain optimum can only be below the half point's value
    const LpSolution opt = solve(build_ccc_lp(inst));
    CHECK(opt.objective <= half.objective + 1e-9);
}

TEST_CASE("blowup point bounds the plain optimum from above") {
    Rng rng(8);
    CcBase base;
    base.n = 4;
    base.positive.resize(6);
    base.metric.resize(6);
    for (std::size_t p = 0; p < 6; ++p) {
        base.positive[p] = rng.next_unit() < 0.5;
        base.metric[p] = 0.5;  // constant metric is triangle-feasible
    }
    auto [inst, embedded] = gen_chromatic_blowup(base, 2);
    const LpSolution opt = solve(build_ccc_lp(inst));
    CHECK(opt.objective <= embedded.objective + 1e-7);
}

TEST_CASE("L=1 reduction equals the independent classical relaxation") {
    Rng rng(404);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 4 + rng.next_below(5);
        const CccInstance inst =
            gen_random_multirelational(n, 1, 0.3 + 0.4 * rng.next_unit(), rng.next_u64());
        const double ccc = solve(build_ccc_lp(inst)).objective;
        const double classic = solve_classic_cc_lp(build_classic_cc_lp(inst));
        CHECK(ccc == doctest::Approx(classic).epsilon(1e-7));
    }
}

TEST_CASE("relaxation lower-bounds the exact optimum") {
    Rng rng(3030);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + rng.next_below(5);
        const int L = 1 + rng.next_below(3);
        const CccInstance inst =
            gen_random_multirelational(n, L, 0.2 + 0.5 * rng.next_unit(), rng.next_u64());
        const LpSolution sol = solve(build_ccc_lp(inst));
        const auto [opt_cl, opt_cost] = brute_force_opt(inst);
        CHECK(sol.objective <= static_cast<double>(opt_cost) + 1e-7);
    }
}

TEST_CASE("lp text export: canonical, deterministic, reimportable") {
    CccInstance small(2, 1);
    small.set_color(0, 1, 0);
    const LpModel model = build_ccc_lp(small);
    const std::string text = export_lp_text(model);
    CHECK(text.find("x_p0_1_c0") != std::string::npos);
    CHECK(text.find("x_u0_c0") != std::string::npos);
    CHECK(text == export_lp_text(model));  // byte-identical across calls

    const GenericLp imported = import_lp_text(text);
    CHECK(imported.equals(to_generic(model)));
    CHECK(render_lp_text(imported) == text);
}

TEST_CASE("generic import solves like the native path") {
    const CccInstance inst = gen_max_interfering(6, 2, 0.5, 21);
    const LpModel model = build_ccc_lp(inst);
    const LpSolution native = solve(model);
    const GenericLp imported = import_lp_text(export_lp_text(model));
    const GenericSolveResult external = solve_generic(imported);
    REQUIRE(external.status == lp::SolveStatus::optimal);
    CHECK(external.objective == doctest::Approx(native.objective).epsilon(1e-7));
}

TEST_CASE("solution text round trip") {
    const CccInstance inst = gen_max_interfering(6, 2, 0.5, 22);
    const LpModel model = build_ccc_lp(inst);
    const LpSolution sol = solve(model);
    const std::string text = write_solution_text(model, sol);
    const LpSolution back = read_solution_text(model, text);
    CHECK(back.objective == doctest::Approx(sol.objective).epsilon(1e-12));
    CHECK((back.x_pair - sol.x_pair).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((back.x_node - sol.x_node).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(read_solution_text(model, "x_bogus 1\n"), std::invalid_argument);
}

TEST_CASE("internal solve is deterministic") {
    const CccInstance inst = gen_max_interfering(8, 2, 0.4, 31);
    const LpModel model = build_ccc_lp(inst);
    const LpSolution a = solve(model);
    const LpSolution b = solve(model);
    CHECK(write_solution_text(model, a) == write_solution_text(model, b));
}

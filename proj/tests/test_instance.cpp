#include <doctest.h>

#include <set>

#include "ccc/analysis.hpp"
#include "ccc/instance.hpp"
#include "ccc/instance_io.hpp"
#include "ccc/lp_model.hpp"
#include "ccc/seeding.hpp"

using namespace ccc;

namespace {

CcBase random_base(int n, std::uint64_t seed, double scale = 0.7) {
    // metric from a random embedding, truncated at 1; always triangle-feasible
    Rng rng(seed);
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts)
        for (double& c : p) c = rng.next_unit();
    CcBase base;
    base.n = n;
    base.positive.resize(pair_count(n));
    base.metric.resize(pair_count(n));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double d2 = 0;
            for (int k = 0; k < 3; ++k)
                d2 += (pts[u][k] - pts[v][k]) * (pts[u][k] - pts[v][k]);
            base.metric[pair_index(n, u, v)] = std::min(1.0, scale * std::sqrt(d2) * 2.0);
            base.positive[pair_index(n, u, v)] = rng.next_unit() < 0.5;
        }
    }
    return base;
}

}  // namespace

TEST_CASE("max interfering: single group") {
    const CccInstance inst = gen_max_interfering(4, 1, 0.0, 0);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) CHECK(inst.color(u, v) == 0);
    CHECK(inst.gamma_pair_count() == 0);
}

TEST_CASE("max interfering: two groups, cross pairs take the lower group color") {
    const CccInstance inst = gen_max_interfering(4, 2, 0.0, 0);
    CHECK(inst.color(0, 1) == 0);
    CHECK(inst.color(2, 3) == 1);
    CHECK(inst.color(0, 2) == 0);
    CHECK(inst.color(0, 3) == 0);
    CHECK(inst.color(1, 2) == 0);
    CHECK(inst.color(1, 3) == 0);
}

TEST_CASE("max interfering: neg_fraction one turns every cross pair gamma") {
    const CccInstance inst = gen_max_interfering(6, 3, 1.0, 7);
    int gamma = 0;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            if (inst.color(u, v) == kGamma) ++gamma;
    CHECK(gamma == 12);
    CHECK(inst.color(0, 1) == 0);
    CHECK(inst.color(2, 3) == 1);
    CHECK(inst.color(4, 5) == 2);
}

TEST_CASE("max interfering: gamma noise reaches the single-color family") {
    const CccInstance inst = gen_max_interfering(12, 1, 1.0, 3);
    CHECK(inst.gamma_pair_count() == inst.num_pairs());
}

TEST_CASE("max interfering: parameter validation") {
    CHECK_THROWS_AS(gen_max_interfering(5, 2, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_max_interfering(4, 2, -0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_max_interfering(4, 2, 1.1, 0), std::invalid_argument);
}

TEST_CASE("random multirelational") {
    const CccInstance all_gamma = gen_random_multirelational(3, 2, 1.0, 0);
    CHECK(all_gamma.gamma_pair_count() == 3);
    const CccInstance all_zero = gen_random_multirelational(3, 1, 0.0, 0);
    CHECK(all_zero.labeled_pair_count() == 3);
    CHECK(all_zero.color(0, 2) == 0);

    // binomial concentration over the 1225 pairs
    const CccInstance inst = gen_random_multirelational(50, 5, 0.3, 42);
    const double frac =
        static_cast<double>(inst.gamma_pair_count()) / static_cast<double>(inst.num_pairs());
    CHECK(frac > 0.23);
    CHECK(frac < 0.37);
}

TEST_CASE("generator symmetry and determinism") {
    const CccInstance a = gen_random_multirelational(20, 3, 0.4, 5);
    const CccInstance b = gen_random_multirelational(20, 3, 0.4, 5);
    CHECK(write_instance(a) == write_instance(b));
    const CccInstance c = gen_max_interfering(20, 4, 0.5, 5);
    const CccInstance d = gen_max_interfering(20, 4, 0.5, 5);
    CHECK(write_instance(c) == write_instance(d));
    for (int u = 0; u < 20; ++u)
        for (int v = u + 1; v < 20; ++v) CHECK(c.color(u, v) == c.color(v, u));
}

TEST_CASE("edge list ingestion") {
    const CccInstance inst = ingest_edge_list({{0, 1, "c0"}}, 3, 1);
    CHECK(inst.color(0, 1) == 0);
    CHECK(inst.color(0, 2) == kGamma);
    CHECK(inst.color(1, 2) == kGamma);

    CHECK_THROWS_AS(ingest_edge_list({{0, 1, "c0"}, {1, 0, "c1"}}, 2, 2), std::invalid_argument);

    const CccInstance empty = ingest_edge_list({}, 4, 2);
    CHECK(empty.gamma_pair_count() == 6);

    CHECK_THROWS_AS(ingest_edge_list({{0, 0, "c0"}}, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(ingest_edge_list({{0, 5, "c0"}}, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(ingest_edge_list({{0, 1, "c7"}}, 2, 1), std::invalid_argument);
    // plain integers and repeated identical rows are fine
    const CccInstance dup = ingest_edge_list({{0, 1, "1"}, {1, 0, "c1"}}, 2, 2);
    CHECK(dup.color(0, 1) == 1);
}

TEST_CASE("tabular ingestion") {
    Eigen::MatrixXd feats(3, 2);
    feats << 1, 0, 1, 0, 0, 1;  // two identical rows plus one orthogonal
    const CccInstance inst = ingest_tabular(feats, {0, 0, 0});
    CHECK(inst.color(0, 1) == 0);
    CHECK(inst.color(0, 2) == kGamma);
    CHECK(inst.color(1, 2) == kGamma);

    Eigen::MatrixXd same(3, 2);
    same << 1, 1, 1, 1, 1, 1;
    const CccInstance all_same = ingest_tabular(same, {0, 0, 0});
    CHECK(all_same.gamma_pair_count() == 3);  // strict threshold

    Eigen::MatrixXd sixty(2, 2);
    sixty << 1, 0, 0.5, std::sqrt(3.0) / 2.0;  // 60 degrees, cosine 0.5
    const CccInstance pair = ingest_tabular(sixty, {0, 1});
    CHECK(pair.color(0, 1) == kGamma);

    Eigen::MatrixXd zero(2, 2);
    zero << 0, 0, 1, 1;
    CHECK_THROWS_AS(ingest_tabular(zero, {0, 0}), std::invalid_argument);
}

TEST_CASE("tabular file parsing") {
    const std::string text = "f1,f2,group\n1,0,0\n1,0,0\n0,1,1\n";
    const TabularData data = read_tabular_text(text, ',', "group");
    CHECK(data.features.rows() == 3);
    CHECK(data.features.cols() == 2);
    CHECK(data.groups == std::vector<int>{0, 0, 1});
    CHECK_THROWS_AS(read_tabular_text(text, ',', "missing"), std::invalid_argument);
}

TEST_CASE("cost function") {
    const CccInstance inst = gen_max_interfering(4, 2, 0.0, 0);

    Clustering singletons;
    singletons.assignment = {0, 1, 2, 3};
    singletons.cluster_colors = {0, 0, 1, 1};
    CHECK(cost(inst, singletons) == static_cast<std::int64_t>(inst.labeled_pair_count()));

    Clustering one;
    one.assignment = {0, 0, 0, 0};
    one.cluster_colors = {0};
    CHECK(cost(inst, one) == 1);  // only the group-1 intra pair disagrees

    const CccInstance all0 = gen_max_interfering(4, 1, 0.0, 0);
    Clustering single;
    single.assignment = {0, 0, 0, 0};
    single.cluster_colors = {0};
    CHECK(cost(all0, single) == 0);

    Clustering uncovered;
    uncovered.assignment = {0, 0, 0};
    uncovered.cluster_colors = {0};
    CHECK_THROWS_AS(cost(inst, uncovered), std::invalid_argument);
}

TEST_CASE("cost is invariant under cluster relabeling") {
    Rng rng(11);
    const CccInstance inst = gen_random_multirelational(9, 3, 0.4, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Clustering cl;
        cl.assignment.resize(9);
        const int k = 1 + rng.next_below(4);
        for (int u = 0; u < 9; ++u) cl.assignment[u] = rng.next_below(k);
        cl.cluster_colors.resize(k);
        for (int id = 0; id < k; ++id) cl.cluster_colors[id] = rng.next_below(3);
        const std::int64_t before = cost(inst, cl);

        std::vector<int> perm(k);
        for (int id = 0; id < k; ++id) perm[id] = (id + 1) % k;
        Clustering relabeled;
        relabeled.assignment.resize(9);
        relabeled.cluster_colors.resize(k);
        for (int u = 0; u < 9; ++u) relabeled.assignment[u] = perm[cl.assignment[u]];
        for (int id = 0; id < k; ++id) relabeled.cluster_colors[perm[id]] = cl.cluster_colors[id];
        CHECK(cost(inst, relabeled) == before);
    }
}

TEST_CASE("instance file round trip is canonical") {
    const CccInstance inst = gen_max_interfering(8, 2, 0.4, 9);
    const std::string text = write_instance(inst);
    const CccInstance back = read_instance(text);
    CHECK(write_instance(back) == text);
    CHECK(back.n() == inst.n());
    CHECK(back.num_colors() == inst.num_colors());
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) CHECK(back.color(u, v) == inst.color(u, v));
}

TEST_CASE("blowup at L=1 is the base instance") {
    CcBase base = random_base(5, 4);
    auto [inst, sol] = gen_chromatic_blowup(base, 1);
    CHECK(inst.n() == 5);
    for (int u = 0; u < 5; ++u) {
        for (int v = u + 1; v < 5; ++v) {
            const bool pos = base.positive[pair_index(5, u, v)];
            CHECK(inst.color(u, v) == (pos ? 0 : kGamma));
            CHECK(sol.x_pair(static_cast<long>(pair_index(5, u, v)), 0) ==
                  doctest::Approx(base.metric[pair_index(5, u, v)]));
        }
    }
}

TEST_CASE("blowup embeds the base metric and stays feasible") {
    CcBase base;
    base.n = 2;
    base.positive = {true};
    base.metric = {0.0};
    auto [inst, sol] = gen_chromatic_blowup(base, 2);
    CHECK(inst.n() == 4);
    // parallel pairs carry the base metric in their own plane color
    CHECK(sol.x_pair(static_cast<long>(pair_index(4, 0, 2)), 0) == 0.0);
    CHECK(sol.x_pair(static_cast<long>(pair_index(4, 1, 3)), 1) == 0.0);
    // vertex sums sit exactly at L-1
    for (int p = 0; p < 4; ++p) CHECK(sol.x_node.row(p).sum() == doctest::Approx(1.0));
    CHECK(validate_solution(inst, sol, false, 0.0).empty());
}

TEST_CASE("blowup solutions validate with zero violations for L=3") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        CcBase base = random_base(4 + static_cast<int>(seed), seed);
        auto [inst, sol] = gen_chromatic_blowup(base, 3);
        const ViolationReport report = validate_solution(inst, sol, false, 0.0);
        CHECK(report.empty());
    }
}

TEST_CASE("blowup rejects an infeasible base metric") {
    CcBase base;
    base.n = 3;
    base.positive = {true, true, true};
    base.metric = {1.0, 0.1, 0.1};  // 1.0 > 0.1 + 0.1
    CHECK_THROWS_AS(gen_chromatic_blowup(base, 2), std::invalid_argument);
}

TEST_CASE("base document round trip") {
    CcBase base = random_base(6, 12);
    const std::string text = write_cc_base(base);
    bool has_metric = false;
    const CcBase back = read_cc_base(text, &has_metric);
    CHECK(has_metric);
    CHECK(back.n == base.n);
    CHECK(back.positive == base.positive);
    for (std::size_t p = 0; p < base.metric.size(); ++p)
        CHECK(back.metric[p] == doctest::Approx(base.metric[p]));
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccc/instance.hpp"
#include "ccc/lp_solution.hpp"
#include "ccc/rounding.hpp"

namespace ccc {

enum class Algorithm { pivot, std_cc, lp_ccc, c4 };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

struct GapTrial {
    int trial = 0;
    std::uint64_t seed = 0;
    double alg_cost = 0.0;
    double lp_obj = 0.0;
    double ratio = 0.0;
    bool flagged = false;  // LP objective 0 with nonzero cost: infinite ratio
};

struct GapSummary {
    int trials = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double max = 0.0;
    int flagged = 0;
};

struct GapReport {
    std::string instance_id;
    std::string family;
    int n = 0;
    int num_colors = 0;
    Algorithm algorithm = Algorithm::pivot;
    std::vector<GapTrial> trials;

    std::vector<double> finite_ratios() const;
    GapSummary summarize() const;  // aggregates over finite ratios
};

// Runs independent seeded executions of the algorithm and records per-trial
// cost and ratio against the solution's LP objective. The relevant
// feasibility contract (plain rows for lp_ccc, coupling rows for c4) is
// validated once up front.
GapReport empirical_gap(const CccInstance& inst, Algorithm algorithm, const LpSolution& sol,
                        int trials, std::uint64_t seed_base,
                        const RoundingProfile& profile = {}, double eps_feas = 1e-7,
                        int threads = 0, const std::string& instance_id = "instance",
                        const std::string& family = "unknown");

// CSV with one row per trial plus a '#'-prefixed summary block per report.
std::string write_gap_csv(const std::vector<GapReport>& reports);

}  // namespace ccc

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccc/instance.hpp"
#include "ccc/rounding.hpp"

namespace ccc {

enum class EdgeSign : std::uint8_t { positive, negative, neutral };

const char* to_string(EdgeSign s);

// Local cost of one charged edge: p1, p2 are the not-join probabilities of
// the two edges incident to the charging pivot.
double edge_cost_term(EdgeSign sign, double p1, double p2);

// Matching LP charge lower bound; x is the charged edge's value and
// neutral_max = max(1/2, 1-x_uv, 1-x_vw, 1-x_wu) over the whole triple.
double edge_lp_term(EdgeSign sign, double x, double p1, double p2, double neutral_max);

double neutral_lp_factor(const std::array<double, 3>& x);

// Edge order inside a triple is (uv, vw, wu); pivot w charges uv, pivot u
// charges vw, pivot v charges wu, each with the probabilities of its two
// incident edges.
double triple_cost(const std::array<EdgeSign, 3>& signs, const std::array<double, 3>& p);
double triple_lp(const std::array<EdgeSign, 3>& signs, const std::array<double, 3>& x,
                 const std::array<double, 3>& p);

bool triangle_feasible(const std::array<double, 3>& x, double tol = 0.0);

struct TripleEvaluation {
    std::array<EdgeSign, 3> signs{};
    std::array<double, 3> x{};
    std::array<double, 3> p{};
    double cost_sum = 0.0;
    double lp_sum = 0.0;
    double ratio = 0.0;
};

TripleEvaluation evaluate_triple(const std::array<EdgeSign, 3>& signs,
                                 const std::array<double, 3>& x,
                                 const RoundingProfile& profile);

enum class SignSet { pm_only, all };

struct WorstTripleResult {
    double ratio = 0.0;
    TripleEvaluation witness;
};

// Exhaustive scan of sign patterns and triangle-feasible grids, followed by
// local refinement of the argmax to ~1e-4.
WorstTripleResult worst_triple_search(const RoundingProfile& profile, double grid_step,
                                      SignSet signs = SignSet::all, int threads = 0);

// Closed forms of the mixed-triple min-max objective.
double saddle_alg(double q, double t, const RoundingProfile& profile);
double saddle_lp(double q, double t, const RoundingProfile& profile);
double saddle_ratio(double q, double t, const RoundingProfile& profile);

struct SaddleResult {
    double q_star = 0.0;
    double t_star = 0.0;
    double ratio_star = 0.0;
    // projected (box-constrained) first-order residual of the min-max point,
    // from central differences clipped at the domain boundary
    double grad_norm = 0.0;
    int degenerate_lp_count = 0;  // grid points where the LP form was <= 0
};

SaddleResult saddle_search(const RoundingProfile& profile, double grid_step = 0.005,
                           double refine_tol = 1e-6);

inline constexpr double kGapCc = 2.0600;
inline constexpr double kDeltaInf = 0.0734;

// delta_L = (L-1)/L * delta_inf, gap_L = gap_cc + delta_L
std::pair<double, double> staircase(int num_colors, double gap_cc = kGapCc,
                                    double delta_inf = kDeltaInf);

// Fraction of u's incident pairs whose color lies in {0..L-1} \ {c}.
double compute_interference(const CccInstance& inst, int c, int u);

// Exact optimum by set-partition enumeration (restricted growth strings);
// cluster colors are majority internal colors, optimal given the partition.
std::pair<Clustering, std::int64_t> brute_force_opt(const CccInstance& inst);

}  // namespace ccc

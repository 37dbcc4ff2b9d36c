#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccc/instance.hpp"
#include "ccc/lp_solution.hpp"

namespace ccc {

// Rounding curves. f_plus is 0 below a_break, 1 at or above b_break and a
// polynomial ramp ((x-a)/(b-a))^ramp in between; f_minus is the identity;
// f_circ is max(x, q_neutral), so f_circ(1/2) = q_neutral.
struct RoundingProfile {
    double a_break = 0.19;
    double b_break = 0.5095;
    double ramp = 2.0;
    double q_neutral = 0.8493;
};

void validate_profile(const RoundingProfile& profile);

double f_plus(double x, const RoundingProfile& profile = {});
double f_minus(double x);
double f_circ(double x, const RoundingProfile& profile = {});

// x where f_plus crosses the identity; 1 - f_plus(x) <= 1 - x holds at or
// above it and reverses below.
double f_plus_identity_crossing(const RoundingProfile& profile);

// One theta draw of the correlated rounder: the vertex either joins the
// pivot's cluster (theta inside the sampled color's interval) or stays.
// boundaries has L+1 entries; color c's interval is [boundaries[c],
// boundaries[c+1]).
struct ThetaDraw {
    int round = 0;
    int pivot = 0;
    Color cluster_color = 0;
    int vertex = 0;
    double theta = 0.0;
    std::vector<double> boundaries;
    bool joined = false;
};

struct RoundingTrace {
    std::vector<ThetaDraw> draws;
};

std::string write_trace_text(const RoundingTrace& trace);

// Random-pivot baseline: the pivot's majority color over labeled edges to
// unclustered vertices decides its cluster (ties to the lowest color, no
// labeled edges gives a singleton).
Clustering pivot_chromatic(const CccInstance& inst, std::uint64_t seed);

// Color-blind pivot (labeled = attract, gamma = repel), then each cluster
// takes its majority internal edge color.
Clustering std_cc_round(const CccInstance& inst, std::uint64_t seed);

// Color-independent LP rounding: majority-color classes S_c = {u : x^c_u <
// 1/2}, then LP-pivot inside each class with f^{sign} join probabilities.
// Vertices below no threshold become color-0 singletons.
Clustering lp_ccc_round(const CccInstance& inst, const LpSolution& sol,
                        const RoundingProfile& profile, std::uint64_t seed,
                        double eps_feas = 1e-7);

struct C4Options {
    double eps_feas = 1e-7;
    double eps_pack = 1e-6;            // tolerated interval-length overshoot
    bool sign_dependent_intervals = false;  // experimental f^{sign} lengths
    bool record_trace = true;
};

// Correlated interval packing over a coupling-feasible solution: a single
// theta per (pivot, vertex) and disjoint per-color intervals of length
// 1 - f_plus(x^c) make cross-color joins mutually exclusive.
std::pair<Clustering, RoundingTrace> c4_round(const CccInstance& inst, const LpSolution& sol,
                                              const RoundingProfile& profile, std::uint64_t seed,
                                              const C4Options& options = {});

}  // namespace ccc

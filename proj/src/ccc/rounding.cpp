#include "ccc/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ccc/lp_model.hpp"
#include "ccc/seeding.hpp"

namespace ccc {

void validate_profile(const RoundingProfile& p) {
    if (!(p.a_break >= 0.0 && p.a_break < p.b_break && p.b_break <= 1.0))
        throw std::invalid_argument("profile breakpoints must satisfy 0 <= a < b <= 1");
    if (!(p.ramp > 0.0)) throw std::invalid_argument("profile ramp must be positive");
    if (!(p.q_neutral >= 0.0 && p.q_neutral <= 1.0))
        throw std::invalid_argument("profile q_neutral must lie in [0,1]");
}

namespace {

void check_unit(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("rounding curve input outside [0,1]");
}

}  // namespace

double f_plus(double x, const RoundingProfile& p) {
    check_unit(x);
    if (x < p.a_break) return 0.0;
    if (x >= p.b_break) return 1.0;
    return std::pow((x - p.a_break) / (p.b_break - p.a_break), p.ramp);
}

double f_minus(double x) {
    check_unit(x);
    return x;
}

double f_circ(double x, const RoundingProfile& p) {
    check_unit(x);
    return std::min(1.0, std::max(x, p.q_neutral));
}

double f_plus_identity_crossing(const RoundingProfile& p) {
    // bisect f_plus(x) - x on [a_break, b_break]; the difference is negative
    // just above a_break (f starts at 0) and reaches 1 - b_break >= 0 at b.
    double lo = p.a_break, hi = p.b_break;
    if (f_plus(hi, p) - hi < 0.0) return 1.0;  // ramp never catches up before b
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f_plus(mid, p) - mid < 0.0) lo = mid;
        else hi = mid;
    }
    return hi;
}

std::string write_trace_text(const RoundingTrace& trace) {
    std::ostringstream out;
    out << "# ccc trace v1\n";
    out << "# columns: round pivot cluster_color vertex theta joined boundaries...\n";
    char buf[48];
    for (const ThetaDraw& d : trace.draws) {
        out << d.round << " " << d.pivot << " " << d.cluster_color << " " << d.vertex;
        std::snprintf(buf, sizeof(buf), " %.17g", d.theta);
        out << buf << " " << (d.joined ? 1 : 0);
        for (double b : d.boundaries) {
            std::snprintf(buf, sizeof(buf), " %.17g", b);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

namespace {

int take_pivot(std::vector<int>& unclustered, Rng& rng) {
    const int idx = rng.next_below(static_cast<int>(unclustered.size()));
    const int w = unclustered[idx];
    unclustered.erase(unclustered.begin() + idx);
    return w;
}

Color majority_color(const CccInstance& inst, int w, const std::vector<int>& others) {
    std::vector<int> counts(inst.num_colors(), 0);
    bool any = false;
    for (int v : others) {
        const Color c = inst.color(w, v);
        if (c != kGamma) {
            ++counts[c];
            any = true;
        }
    }
    if (!any) return kGamma;  // signals "no labeled edge"
    int best = 0;
    for (int c = 1; c < inst.num_colors(); ++c)
        if (counts[c] > counts[best]) best = c;  // ties keep the lowest color
    return best;
}

}  // namespace

Clustering pivot_chromatic(const CccInstance& inst, std::uint64_t seed) {
    Rng rng(seed);
    Clustering cl;
    cl.assignment.assign(inst.n(), -1);
    std::vector<int> unclustered(inst.n());
    for (int i = 0; i < inst.n(); ++i) unclustered[i] = i;

    while (!unclustered.empty()) {
        const int w = take_pivot(unclustered, rng);
        const Color cstar = majority_color(inst, w, unclustered);
        const int id = cl.num_clusters();
        if (cstar == kGamma) {
            cl.assignment[w] = id;
            cl.cluster_colors.push_back(0);
            continue;
        }
        cl.assignment[w] = id;
        std::vector<int> rest;
        rest.reserve(unclustered.size());
        for (int v : unclustered) {
            if (inst.color(w, v) == cstar) {
                cl.assignment[v] = id;
            } else {
                rest.push_back(v);
            }
        }
        unclustered = std::move(rest);
        cl.cluster_colors.push_back(cstar);
    }
    return cl;
}

Clustering std_cc_round(const CccInstance& inst, std::uint64_t seed) {
    Rng rng(seed);
    Clustering cl;
    cl.assignment.assign(inst.n(), -1);
    std::vector<std::vector<int>> members;
    std::vector<int> unclustered(inst.n());
    for (int i = 0; i < inst.n(); ++i) unclustered[i] = i;

    while (!unclustered.empty()) {
        const int w = take_pivot(unclustered, rng);
        const int id = static_cast<int>(members.size());
        members.push_back({w});
        cl.assignment[w] = id;
        std::vector<int> rest;
        rest.reserve(unclustered.size());
        for (int v : unclustered) {
            if (inst.color(w, v) != kGamma) {
                cl.assignment[v] = id;
                members[id].push_back(v);
            } else {
                rest.push_back(v);
            }
        }
        unclustered = std::move(rest);
    }

    cl.cluster_colors.resize(members.size(), 0);
    for (std::size_t id = 0; id < members.size(); ++id) {
        std::vector<int> counts(inst.num_colors(), 0);
        const std::vector<int>& cluster = members[id];
        for (std::size_t i = 0; i < cluster.size(); ++i) {
            for (std::size_t j = i + 1; j < cluster.size(); ++j) {
                const Color c = inst.color(cluster[i], cluster[j]);
                if (c != kGamma) ++counts[c];
            }
        }
        int best = 0;
        for (int c = 1; c < inst.num_colors(); ++c)
            if (counts[c] > counts[best]) best = c;
        cl.cluster_colors[id] = best;
    }
    return cl;
}

Clustering lp_ccc_round(const CccInstance& inst, const LpSolution& sol,
                        const RoundingProfile& profile, std::uint64_t seed, double eps_feas) {
    validate_profile(profile);
    ViolationReport report = validate_solution(inst, sol, /*with_c4=*/false, eps_feas);
    if (!report.empty())
        throw std::invalid_argument("solution infeasible beyond tolerance: " +
                                    report.to_string());

    const int n = inst.n();
    const int L = inst.num_colors();
    Rng rng(seed);
    Clustering cl;
    cl.assignment.assign(n, -1);

    for (int c = 0; c < L; ++c) {
        std::vector<int> members;  // unclustered vertices of S_c, ascending
        for (int u = 0; u < n; ++u)
            if (cl.assignment[u] < 0 && sol.x_node(u, c) < 0.5) members.push_back(u);
        while (!members.empty()) {
            const int w = take_pivot(members, rng);
            const int id = cl.num_clusters();
            cl.assignment[w] = id;
            cl.cluster_colors.push_back(c);
            std::vector<int> rest;
            rest.reserve(members.size());
            for (int v : members) {
                const long p = static_cast<long>(pair_index(n, w, v));
                const Color edge = inst.color(w, v);
                const double x = std::clamp(sol.x_pair(p, c), 0.0, 1.0);
                double keep_out;
                if (edge == c) keep_out = f_plus(x, profile);
                else if (edge == kGamma) keep_out = f_minus(x);
                else keep_out = f_circ(x, profile);
                const double theta = rng.next_unit();
                if (theta < 1.0 - keep_out) {
                    cl.assignment[v] = id;
                } else {
                    rest.push_back(v);
                }
            }
            members = std::move(rest);
        }
    }
    // vertices with no color below threshold become color-0 singletons
    for (int u = 0; u < n; ++u) {
        if (cl.assignment[u] < 0) {
            cl.assignment[u] = cl.num_clusters();
            cl.cluster_colors.push_back(0);
        }
    }
    return cl;
}

std::pair<Clustering, RoundingTrace> c4_round(const CccInstance& inst, const LpSolution& sol,
                                              const RoundingProfile& profile, std::uint64_t seed,
                                              const C4Options& options) {
    validate_profile(profile);
    ViolationReport report = validate_solution(inst, sol, /*with_c4=*/true, options.eps_feas);
    if (!report.empty())
        throw std::invalid_argument(
            "solution infeasible for the coupled relaxation: " + report.to_string());

    const int n = inst.n();
    const int L = inst.num_colors();
    Rng rng(seed);
    Clustering cl;
    cl.assignment.assign(n, -1);
    RoundingTrace trace;

    std::vector<int> unclustered(n);
    for (int i = 0; i < n; ++i) unclustered[i] = i;

    std::vector<double> boundaries(L + 1);
    int round = 0;
    while (!unclustered.empty()) {
        const int w = take_pivot(unclustered, rng);
        // cluster color: one draw over the affinity weights y^c_w, which the
        // vertex-sum equality makes a probability vector; a single color
        // needs no draw
        int cstar = 0;
        if (L > 1) {
            double total = 0.0;
            for (int c = 0; c < L; ++c) total += std::max(0.0, sol.y_node(w, c));
            const double r = rng.next_unit() * total;
            double acc = 0.0;
            cstar = L - 1;
            for (int c = 0; c < L; ++c) {
                acc += std::max(0.0, sol.y_node(w, c));
                if (r < acc) {
                    cstar = c;
                    break;
                }
            }
        }
        const int id = cl.num_clusters();
        cl.assignment[w] = id;
        cl.cluster_colors.push_back(cstar);

        std::vector<int> rest;
        rest.reserve(unclustered.size());
        for (int v : unclustered) {
            const long p = static_cast<long>(pair_index(n, w, v));
            boundaries[0] = 0.0;
            for (int c = 0; c < L; ++c) {
                const double x = std::clamp(sol.x_pair(p, c), 0.0, 1.0);
                double keep_out;
                if (!options.sign_dependent_intervals) {
                    keep_out = f_plus(x, profile);
                } else {
                    const Color edge = inst.color(w, v);
                    if (edge == c) keep_out = f_plus(x, profile);
                    else if (edge == kGamma) keep_out = f_minus(x);
                    else keep_out = f_circ(x, profile);
                }
                boundaries[c + 1] = boundaries[c] + (1.0 - keep_out);
            }
            if (boundaries[L] > 1.0 + options.eps_pack)
                throw std::runtime_error(
                    "interval lengths exceed the unit budget; the solution violates a "
                    "coupling row");
            const double theta = rng.next_unit();
            const bool joined = theta >= boundaries[cstar] && theta < boundaries[cstar + 1];
            if (joined) {
                cl.assignment[v] = id;
            } else {
                rest.push_back(v);
            }
            if (options.record_trace) {
                ThetaDraw draw;
                draw.round = round;
                draw.pivot = w;
                draw.cluster_color = cstar;
                draw.vertex = v;
                draw.theta = theta;
                draw.boundaries = boundaries;
                draw.joined = joined;
                trace.draws.push_back(std::move(draw));
            }
        }
        unclustered = std::move(rest);
        ++round;
    }
    return {std::move(cl), std::move(trace)};
}

}  // namespace ccc

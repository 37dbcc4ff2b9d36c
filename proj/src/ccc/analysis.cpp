#include "ccc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccc/parallel.hpp"

namespace ccc {

const char* to_string(EdgeSign s) {
    switch (s) {
        case EdgeSign::positive: return "+";
        case EdgeSign::negative: return "-";
        case EdgeSign::neutral: return "o";
    }
    return "?";
}

double edge_cost_term(EdgeSign sign, double p1, double p2) {
    switch (sign) {
        case EdgeSign::positive: return p1 * (1.0 - p2) + (1.0 - p1) * p2;
        case EdgeSign::negative: return (1.0 - p1) * (1.0 - p2);
        case EdgeSign::neutral: return 1.0 - p1 * p2;
    }
    throw std::invalid_argument("invalid sign token");
}

double neutral_lp_factor(const std::array<double, 3>& x) {
    return std::max({0.5, 1.0 - x[0], 1.0 - x[1], 1.0 - x[2]});
}

double edge_lp_term(EdgeSign sign, double x, double p1, double p2, double neutral_max) {
    const double coupling = 1.0 - p1 * p2;
    switch (sign) {
        case EdgeSign::positive: return coupling * x;
        case EdgeSign::negative: return coupling * (1.0 - x);
        case EdgeSign::neutral: return coupling * neutral_max;
    }
    throw std::invalid_argument("invalid sign token");
}

double triple_cost(const std::array<EdgeSign, 3>& signs, const std::array<double, 3>& p) {
    // pivot w charges edge 0 with (p_wu, p_wv) = (p[2], p[1]), and cyclically
    return edge_cost_term(signs[0], p[2], p[1]) + edge_cost_term(signs[1], p[0], p[2]) +
           edge_cost_term(signs[2], p[1], p[0]);
}

double triple_lp(const std::array<EdgeSign, 3>& signs, const std::array<double, 3>& x,
                 const std::array<double, 3>& p) {
    const double m = neutral_lp_factor(x);
    return edge_lp_term(signs[0], x[0], p[2], p[1], m) +
           edge_lp_term(signs[1], x[1], p[0], p[2], m) +
           edge_lp_term(signs[2], x[2], p[1], p[0], m);
}

bool triangle_feasible(const std::array<double, 3>& x, double tol) {
    return x[0] + x[1] >= x[2] - tol && x[1] + x[2] >= x[0] - tol &&
           x[2] + x[0] >= x[1] - tol;
}

namespace {

double apply_curve(EdgeSign sign, double x, const RoundingProfile& profile) {
    switch (sign) {
        case EdgeSign::positive: return f_plus(x, profile);
        case EdgeSign::negative: return f_minus(x);
        case EdgeSign::neutral: return f_circ(x, profile);
    }
    throw std::invalid_argument("invalid sign token");
}

}  // namespace

TripleEvaluation evaluate_triple(const std::array<EdgeSign, 3>& signs,
                                 const std::array<double, 3>& x,
                                 const RoundingProfile& profile) {
    TripleEvaluation ev;
    ev.signs = signs;
    ev.x = x;
    for (int e = 0; e < 3; ++e) ev.p[e] = apply_curve(signs[e], x[e], profile);
    ev.cost_sum = triple_cost(signs, ev.p);
    ev.lp_sum = triple_lp(signs, x, ev.p);
    ev.ratio = ev.lp_sum > 1e-12 ? ev.cost_sum / ev.lp_sum
                                 : (ev.cost_sum > 1e-9
                                        ? std::numeric_limits<double>::infinity()
                                        : 0.0);
    return ev;
}

namespace {

std::vector<std::array<EdgeSign, 3>> sign_patterns(SignSet set) {
    const int base = set == SignSet::pm_only ? 2 : 3;
    std::vector<std::array<EdgeSign, 3>> patterns;
    for (int s0 = 0; s0 < base; ++s0)
        for (int s1 = 0; s1 < base; ++s1)
            for (int s2 = 0; s2 < base; ++s2)
                patterns.push_back({static_cast<EdgeSign>(s0), static_cast<EdgeSign>(s1),
                                    static_cast<EdgeSign>(s2)});
    return patterns;
}

bool witness_less(const TripleEvaluation& a, const TripleEvaluation& b) {
    // deterministic tie order: higher ratio first, then lexicographic witness
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    for (int e = 0; e < 3; ++e)
        if (a.signs[e] != b.signs[e]) return a.signs[e] < b.signs[e];
    for (int e = 0; e < 3; ++e)
        if (a.x[e] != b.x[e]) return a.x[e] < b.x[e];
    return false;
}

}  // namespace

WorstTripleResult worst_triple_search(const RoundingProfile& profile, double grid_step,
                                      SignSet signs, int threads) {
    if (!(grid_step > 0.0 && grid_step <= 0.1))
        throw std::invalid_argument("grid_step must lie in (0, 0.1]");
    validate_profile(profile);
    const int steps = std::max(1, static_cast<int>(std::lround(1.0 / grid_step)));
    std::vector<double> grid(steps + 1);
    for (int i = 0; i <= steps; ++i) grid[i] = static_cast<double>(i) / steps;
    const std::vector<std::array<EdgeSign, 3>> patterns = sign_patterns(signs);

    std::vector<TripleEvaluation> best_per_slab(grid.size());
    parallel_for(
        grid.size(),
        [&](std::size_t i0) {
            TripleEvaluation best;
            best.ratio = -1.0;
            std::array<double, 3> x{};
            x[0] = grid[i0];
            for (std::size_t i1 = 0; i1 < grid.size(); ++i1) {
                x[1] = grid[i1];
                for (std::size_t i2 = 0; i2 < grid.size(); ++i2) {
                    x[2] = grid[i2];
                    if (!triangle_feasible(x)) continue;
                    for (const auto& pat : patterns) {
                        TripleEvaluation ev = evaluate_triple(pat, x, profile);
                        if (ev.ratio > best.ratio ||
                            (ev.ratio == best.ratio && witness_less(ev, best)))
                            best = ev;
                    }
                }
            }
            best_per_slab[i0] = best;
        },
        threads);

    TripleEvaluation best;
    best.ratio = -1.0;
    for (const TripleEvaluation& ev : best_per_slab)
        if (ev.ratio > best.ratio || (ev.ratio == best.ratio && witness_less(ev, best)))
            best = ev;

    // local refinement around the argmax, signs fixed
    double scale = 1.0 / steps;
    while (scale > 2e-5) {
        scale /= 5.0;
        bool improved = true;
        while (improved) {
            improved = false;
            std::array<double, 3> x{};
            for (int d0 = -4; d0 <= 4; ++d0) {
                x[0] = std::clamp(best.x[0] + d0 * scale, 0.0, 1.0);
                for (int d1 = -4; d1 <= 4; ++d1) {
                    x[1] = std::clamp(best.x[1] + d1 * scale, 0.0, 1.0);
                    for (int d2 = -4; d2 <= 4; ++d2) {
                        x[2] = std::clamp(best.x[2] + d2 * scale, 0.0, 1.0);
                        if (!triangle_feasible(x)) continue;
                        TripleEvaluation ev = evaluate_triple(best.signs, x, profile);
                        if (ev.ratio > best.ratio + 1e-15) {
                            best = ev;
                            improved = true;
                        }
                    }
                }
            }
        }
    }
    return {best.ratio, best};
}

double saddle_alg(double q, double t, const RoundingProfile& profile) {
    const double f = f_plus(t, profile);
    return 4.0 - f - q * f - 0.5 * q;
}

double saddle_lp(double q, double t, const RoundingProfile& profile) {
    const double f = f_plus(t, profile);
    return 2.0 + 2.0 * t - 0.25 * q - f * (0.5 + 0.5 * q + 0.5 * t + q * t);
}

double saddle_ratio(double q, double t, const RoundingProfile& profile) {
    const double denom = saddle_lp(q, t, profile);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return saddle_alg(q, t, profile) / denom;
}

namespace {

struct InnerMax {
    double t = 0.0;
    double value = 0.0;
};

InnerMax max_over_t(double q, const RoundingProfile& profile, int steps, double refine_tol,
                    int* degenerate) {
    InnerMax best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        if (saddle_lp(q, t, profile) <= 0.0) {
            ++*degenerate;
            continue;
        }
        const double r = saddle_ratio(q, t, profile);
        if (r > best.value) best = {t, r};
    }
    // golden-section refinement on the bracket around the argmax
    const double h = 1.0 / steps;
    double lo = std::max(0.0, best.t - h);
    double hi = std::min(1.0, best.t + h);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = saddle_ratio(q, a, profile);
    double fb = saddle_ratio(q, b, profile);
    while (hi - lo > refine_tol) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = saddle_ratio(q, b, profile);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = saddle_ratio(q, a, profile);
        }
    }
    const double t = 0.5 * (lo + hi);
    const double v = saddle_ratio(q, t, profile);
    if (v > best.value) best = {t, v};
    return best;
}

}  // namespace

SaddleResult saddle_search(const RoundingProfile& profile, double grid_step, double refine_tol) {
    validate_profile(profile);
    if (!(grid_step > 0.0 && grid_step <= 0.1))
        throw std::invalid_argument("grid_step must lie in (0, 0.1]");
    const int steps = std::max(1, static_cast<int>(std::lround(1.0 / grid_step)));

    SaddleResult result;
    int degenerate = 0;
    double best_q = 0.0;
    InnerMax best_inner;
    best_inner.value = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        const double q = static_cast<double>(i) / steps;
        const InnerMax inner = max_over_t(q, profile, steps, refine_tol, &degenerate);
        if (inner.value < best_inner.value) {
            best_inner = inner;
            best_q = q;
        }
    }
    // golden-section refinement of the outer minimum
    const double h = 1.0 / steps;
    double lo = std::max(0.0, best_q - h);
    double hi = std::min(1.0, best_q + h);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    int scratch = 0;
    auto phi_of = [&](double q) { return max_over_t(q, profile, steps, refine_tol, &scratch); };
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    InnerMax ia = phi_of(a);
    InnerMax ib = phi_of(b);
    while (hi - lo > refine_tol) {
        if (ia.value > ib.value) {
            lo = a;
            a = b;
            ia = ib;
            b = lo + inv_phi * (hi - lo);
            ib = phi_of(b);
        } else {
            hi = b;
            b = a;
            ib = ia;
            a = hi - inv_phi * (hi - lo);
            ia = phi_of(a);
        }
    }
    {
        const double q = 0.5 * (lo + hi);
        const InnerMax inner = phi_of(q);
        if (inner.value < best_inner.value) {
            best_inner = inner;
            best_q = q;
        }
    }

    result.q_star = best_q;
    result.t_star = best_inner.t;
    result.ratio_star = best_inner.value;
    result.degenerate_lp_count = degenerate;

    // projected first-order residual at the reported point (box KKT): the
    // t-partial may point outward at a boundary maximizer, the q-partial at a
    // boundary minimizer
    const double fd = 1e-5;
    auto r_at = [&](double q, double t) { return saddle_ratio(q, t, profile); };
    const double q0 = result.q_star, t0 = result.t_star;
    double dq;
    if (q0 - fd < 0.0) dq = (r_at(q0 + fd, t0) - r_at(q0, t0)) / fd;
    else if (q0 + fd > 1.0) dq = (r_at(q0, t0) - r_at(q0 - fd, t0)) / fd;
    else dq = (r_at(q0 + fd, t0) - r_at(q0 - fd, t0)) / (2 * fd);
    double dt;
    if (t0 - fd < 0.0) dt = (r_at(q0, t0 + fd) - r_at(q0, t0)) / fd;
    else if (t0 + fd > 1.0) dt = (r_at(q0, t0) - r_at(q0, t0 - fd)) / fd;
    else dt = (r_at(q0, t0 + fd) - r_at(q0, t0 - fd)) / (2 * fd);

    double viol_t;
    if (t0 <= fd) viol_t = std::max(0.0, dt);        // maximizer at lower edge
    else if (t0 >= 1.0 - fd) viol_t = std::max(0.0, -dt);
    else viol_t = std::abs(dt);
    double viol_q;
    if (q0 <= fd) viol_q = std::max(0.0, -dq);       // minimizer at lower edge
    else if (q0 >= 1.0 - fd) viol_q = std::max(0.0, dq);
    else viol_q = std::abs(dq);
    result.grad_norm = std::hypot(viol_q, viol_t);
    return result;
}

std::pair<double, double> staircase(int num_colors, double gap_cc, double delta_inf) {
    if (num_colors < 1) throw std::invalid_argument("need at least one color");
    const double delta =
        (static_cast<double>(num_colors - 1) / num_colors) * delta_inf;
    return {delta, gap_cc + delta};
}

double compute_interference(const CccInstance& inst, int c, int u) {
    if (c < 0 || c >= inst.num_colors()) throw std::invalid_argument("color out of range");
    if (u < 0 || u >= inst.n()) throw std::invalid_argument("vertex out of range");
    if (inst.n() == 1) return 0.0;
    int count = 0;
    for (int v = 0; v < inst.n(); ++v) {
        if (v == u) continue;
        const Color col = inst.color(u, v);
        if (col != kGamma && col != c) ++count;
    }
    return static_cast<double>(count) / (inst.n() - 1);
}

std::pair<Clustering, std::int64_t> brute_force_opt(const CccInstance& inst) {
    const int n = inst.n();
    if (n > 10) throw std::invalid_argument("brute force is limited to n <= 10");
    const int L = inst.num_colors();

    // cache the coloring
    std::vector<Color> colors(pair_count(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) colors[pair_index(n, u, v)] = inst.color(u, v);

    std::vector<int> rgs(n, 0);
    std::vector<int> best_rgs;
    std::int64_t best_cost = -1;

    std::vector<std::vector<int>> hist(n, std::vector<int>(L, 0));
    std::vector<int> labeled_internal(n, 0);

    for (;;) {
        int k = 0;
        for (int u = 0; u < n; ++u) k = std::max(k, rgs[u] + 1);
        for (int id = 0; id < k; ++id) {
            std::fill(hist[id].begin(), hist[id].end(), 0);
            labeled_internal[id] = 0;
        }
        std::int64_t base = 0;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const Color c = colors[pair_index(n, u, v)];
                const bool same = rgs[u] == rgs[v];
                if (c == kGamma) {
                    if (same) ++base;
                } else if (!same) {
                    ++base;
                } else {
                    ++hist[rgs[u]][c];
                    ++labeled_internal[rgs[u]];
                }
            }
        }
        for (int id = 0; id < k; ++id) {
            int most = 0;
            for (int c = 0; c < L; ++c) most = std::max(most, hist[id][c]);
            base += labeled_internal[id] - most;
        }
        if (best_cost < 0 || base < best_cost) {
            best_cost = base;
            best_rgs = rgs;
        }

        // next restricted growth string
        int i = n - 1;
        while (i > 0) {
            int prefix_max = 0;
            for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
            if (rgs[i] <= prefix_max) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
            rgs[i] = 0;
            --i;
        }
        if (i == 0) break;
    }

    Clustering cl;
    cl.assignment = best_rgs;
    int k = 0;
    for (int u = 0; u < n; ++u) k = std::max(k, best_rgs[u] + 1);
    cl.cluster_colors.assign(k, 0);
    for (int id = 0; id < k; ++id) {
        std::vector<int> counts(L, 0);
        for (int u = 0; u < n; ++u) {
            if (best_rgs[u] != id) continue;
            for (int v = u + 1; v < n; ++v) {
                if (best_rgs[v] != id) continue;
                const Color c = colors[pair_index(n, u, v)];
                if (c != kGamma) ++counts[c];
            }
        }
        int best = 0;
        for (int c = 1; c < L; ++c)
            if (counts[c] > counts[best]) best = c;
        cl.cluster_colors[id] = best;
    }
    return {std::move(cl), best_cost};
}

}  // namespace ccc

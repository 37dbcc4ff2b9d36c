#include "ccc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ccc/seeding.hpp"

namespace ccc {

const char* to_string(LpSolution::Status s) {
    switch (s) {
        case LpSolution::Status::optimal: return "optimal";
        case LpSolution::Status::infeasible: return "infeasible";
        case LpSolution::Status::tolerance_warning: return "tolerance_warning";
        case LpSolution::Status::constructed: return "constructed";
    }
    return "unknown";
}

CccInstance::CccInstance(int n, int num_colors) : n_(n), num_colors_(num_colors) {
    if (n < 1) throw std::invalid_argument("instance needs at least one vertex");
    if (num_colors < 1) throw std::invalid_argument("instance needs at least one color");
    if (n <= kDenseStorageLimit) dense_.assign(pair_count(n), kGamma);
}

void CccInstance::check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
        throw std::invalid_argument("invalid vertex pair");
}

Color CccInstance::color(int u, int v) const {
    check_pair(u, v);
    const std::size_t p = pair_index(n_, u, v);
    if (!dense_.empty()) return dense_[p];
    auto it = sparse_.find(static_cast<std::uint64_t>(p));
    return it == sparse_.end() ? kGamma : it->second;
}

void CccInstance::set_color(int u, int v, Color c) {
    check_pair(u, v);
    if (c != kGamma && (c < 0 || c >= num_colors_))
        throw std::invalid_argument("color code out of range");
    const std::size_t p = pair_index(n_, u, v);
    if (!dense_.empty()) {
        dense_[p] = c;
    } else if (c == kGamma) {
        sparse_.erase(static_cast<std::uint64_t>(p));
    } else {
        sparse_[static_cast<std::uint64_t>(p)] = c;
    }
}

std::size_t CccInstance::labeled_pair_count() const {
    if (dense_.empty()) return sparse_.size();
    return static_cast<std::size_t>(
        std::count_if(dense_.begin(), dense_.end(), [](Color c) { return c != kGamma; }));
}

std::vector<std::size_t> CccInstance::color_histogram() const {
    std::vector<std::size_t> hist(num_colors_, 0);
    if (dense_.empty()) {
        for (const auto& [p, c] : sparse_) hist[c]++;
    } else {
        for (Color c : dense_)
            if (c != kGamma) hist[c]++;
    }
    return hist;
}

void validate_clustering(const CccInstance& inst, const Clustering& cl) {
    if (static_cast<int>(cl.assignment.size()) != inst.n())
        throw std::invalid_argument("clustering does not cover all vertices");
    const int k = cl.num_clusters();
    for (int id : cl.assignment)
        if (id < 0 || id >= k) throw std::invalid_argument("cluster id out of range");
    for (Color c : cl.cluster_colors)
        if (c < 0 || c >= inst.num_colors())
            throw std::invalid_argument("cluster color out of range");
}

std::int64_t cost(const CccInstance& inst, const Clustering& cl) {
    validate_clustering(inst, cl);
    const int n = inst.n();
    std::int64_t total = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const Color c = inst.color(u, v);
            const bool together = cl.assignment[u] == cl.assignment[v];
            if (c == kGamma) {
                total += together ? 1 : 0;
            } else if (!together || cl.cluster_colors[cl.assignment[u]] != c) {
                total += 1;
            }
        }
    }
    return total;
}

CccInstance gen_max_interfering(int n, int num_colors, double neg_fraction,
                                std::uint64_t seed) {
    if (num_colors < 1) throw std::invalid_argument("need at least one color");
    if (n < 1 || n % num_colors != 0)
        throw std::invalid_argument("color count must divide vertex count");
    if (!(neg_fraction >= 0.0 && neg_fraction <= 1.0))
        throw std::invalid_argument("neg_fraction must lie in [0,1]");

    CccInstance inst(n, num_colors);
    const int group_size = n / num_colors;
    Rng rng(seed);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const int gu = u / group_size;
            const int gv = v / group_size;
            Color c = static_cast<Color>(std::min(gu, gv));
            const bool eligible = (num_colors == 1) ? true : gu != gv;
            if (eligible && rng.next_unit() < neg_fraction) c = kGamma;
            inst.set_color(u, v, c);
        }
    }
    return inst;
}

CccInstance gen_random_multirelational(int n, int num_colors, double p_gamma,
                                       std::uint64_t seed) {
    if (!(p_gamma >= 0.0 && p_gamma <= 1.0))
        throw std::invalid_argument("p_gamma must lie in [0,1]");
    CccInstance inst(n, num_colors);
    Rng rng(seed);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.next_unit() < p_gamma) {
                inst.set_color(u, v, kGamma);
            } else {
                inst.set_color(u, v, rng.next_below(num_colors));
            }
        }
    }
    return inst;
}

void validate_cc_metric(const CcBase& base, double eps) {
    const int n = base.n;
    if (n < 1) throw std::invalid_argument("base instance needs vertices");
    if (base.positive.size() != pair_count(n) || base.metric.size() != pair_count(n))
        throw std::invalid_argument("base sign/metric size mismatch");
    for (double x : base.metric)
        if (!(x >= -eps && x <= 1.0 + eps))
            throw std::invalid_argument("base metric value outside [0,1]");
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            for (int w = v + 1; w < n; ++w) {
                const double a = base.metric[pair_index(n, u, v)];
                const double b = base.metric[pair_index(n, v, w)];
                const double c = base.metric[pair_index(n, u, w)];
                if (a + b < c - eps || a + c < b - eps || b + c < a - eps)
                    throw std::invalid_argument("base metric violates a triangle inequality");
            }
        }
    }
}

std::pair<CccInstance, LpSolution> gen_chromatic_blowup(const CcBase& base, int num_colors) {
    if (num_colors < 1) throw std::invalid_argument("need at least one color");
    validate_cc_metric(base);

    const int L = num_colors;
    const int n = base.n * L;
    CccInstance inst(n, L);

    // vertex (u, plane i) has id u*L + i
    auto plane = [L](int vid) { return vid % L; };
    auto origin = [L](int vid) { return vid / L; };

    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const int up = origin(p), uq = origin(q);
            const int ip = plane(p), iq = plane(q);
            if (up != uq && ip == iq) {
                // parallel pair: mirrors the base sign inside plane ip
                const bool pos = base.positive[pair_index(base.n, up, uq)];
                inst.set_color(p, q, pos ? static_cast<Color>(ip) : kGamma);
            } else {
                inst.set_color(p, q, static_cast<Color>(ip));
            }
        }
    }

    LpSolution sol;
    sol.n = n;
    sol.num_colors = L;
    sol.x_node = Eigen::MatrixXd::Ones(n, L);
    for (int p = 0; p < n; ++p) sol.x_node(p, plane(p)) = 0.0;
    sol.x_pair = Eigen::MatrixXd::Ones(static_cast<long>(pair_count(n)), L);
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const int up = origin(p), uq = origin(q);
            const int ip = plane(p), iq = plane(q);
            if (up != uq && ip == iq)
                sol.x_pair(static_cast<long>(pair_index(n, p, q)), ip) =
                    base.metric[pair_index(base.n, up, uq)];
        }
    }

    // objective of the embedded point under the CCC objective
    double obj = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const long pi = static_cast<long>(pair_index(n, p, q));
            const Color c = inst.color(p, q);
            if (c == kGamma) {
                obj += L - sol.x_pair.row(pi).sum();
            } else {
                obj += sol.x_pair(pi, c);
            }
        }
    }
    sol.objective = obj;
    sol.status = LpSolution::Status::constructed;
    return {std::move(inst), std::move(sol)};
}

namespace {

Color parse_color_token(const std::string& token, int num_colors) {
    if (token == "gamma") return kGamma;
    std::string digits = token;
    if (!digits.empty() && (digits[0] == 'c' || digits[0] == 'C')) digits = digits.substr(1);
    if (digits.empty()) throw std::invalid_argument("bad color token '" + token + "'");
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(digits, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad color token '" + token + "'");
    }
    if (used != digits.size()) throw std::invalid_argument("bad color token '" + token + "'");
    if (value < 0 || value >= num_colors)
        throw std::invalid_argument("color token '" + token + "' out of range");
    return value;
}

}  // namespace

CccInstance ingest_edge_list(const std::vector<EdgeRecord>& rows, int n, int num_colors) {
    CccInstance inst(n, num_colors);
    std::set<std::pair<std::size_t, Color>> seen;  // pair index + color already set
    std::set<std::size_t> listed;
    for (const EdgeRecord& r : rows) {
        if (r.u == r.v) throw std::invalid_argument("self-loop edge record");
        if (r.u < 0 || r.v < 0 || r.u >= n || r.v >= n)
            throw std::invalid_argument("edge record vertex out of range");
        const Color c = parse_color_token(r.color_token, num_colors);
        const std::size_t p = pair_index(n, r.u, r.v);
        if (listed.count(p) && !seen.count({p, c}))
            throw std::invalid_argument("conflicting duplicate edge record");
        listed.insert(p);
        seen.insert({p, c});
        inst.set_color(r.u, r.v, c);
    }
    return inst;
}

CccInstance ingest_tabular(const Eigen::MatrixXd& features, const std::vector<int>& groups) {
    const int n = static_cast<int>(features.rows());
    if (n < 1) throw std::invalid_argument("feature matrix has no rows");
    if (features.cols() < 1) throw std::invalid_argument("feature matrix has no columns");
    if (static_cast<int>(groups.size()) != n)
        throw std::invalid_argument("group column length mismatch");
    int num_colors = 1;
    for (int g : groups) {
        if (g < 0) throw std::invalid_argument("negative group id");
        num_colors = std::max(num_colors, g + 1);
    }

    Eigen::VectorXd norms = features.rowwise().norm();
    for (int u = 0; u < n; ++u)
        if (norms(u) == 0.0) throw std::invalid_argument("zero-norm feature row");

    const std::size_t num_p = pair_count(n);
    std::vector<double> sims(num_p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            sims[pair_index(n, u, v)] = features.row(u).dot(features.row(v)) / (norms(u) * norms(v));

    std::vector<double> sorted = sims;
    std::sort(sorted.begin(), sorted.end());
    double median;
    if (num_p % 2 == 1) {
        median = sorted[num_p / 2];
    } else {
        median = 0.5 * (sorted[num_p / 2 - 1] + sorted[num_p / 2]);
    }

    CccInstance inst(n, num_colors);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (sims[pair_index(n, u, v)] > median) {
                inst.set_color(u, v, groups[u]);  // u < v: lower-indexed endpoint
            } else {
                inst.set_color(u, v, kGamma);
            }
        }
    }
    return inst;
}

}  // namespace ccc

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ccc/lp_solution.hpp"

namespace ccc {

// Edge color code: 0..L-1 are real colors, kGamma is the "dissimilar" label.
using Color = int;
inline constexpr Color kGamma = -1;

inline std::size_t pair_count(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Canonical index of the unordered pair {u, v}, lexicographic over u < v.
inline std::size_t pair_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * n - static_cast<std::size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
}

// Complete edge-colored graph. Every unordered pair of distinct vertices has a
// color in {0..L-1} or kGamma; storage is a dense pair-indexed array up to
// kDenseStorageLimit vertices, a gamma-defaulted sparse map above. Instances
// are immutable once built and safe to share across threads.
class CccInstance {
public:
    static constexpr int kDenseStorageLimit = 4096;

    CccInstance(int n, int num_colors);

    int n() const { return n_; }
    int num_colors() const { return num_colors_; }

    Color color(int u, int v) const;
    void set_color(int u, int v, Color c);  // construction-time only

    std::size_t num_pairs() const { return pair_count(n_); }
    std::size_t labeled_pair_count() const;
    std::size_t gamma_pair_count() const { return num_pairs() - labeled_pair_count(); }
    std::vector<std::size_t> color_histogram() const;

private:
    void check_pair(int u, int v) const;

    int n_;
    int num_colors_;
    std::vector<Color> dense_;                            // used when n <= limit
    std::unordered_map<std::uint64_t, Color> sparse_;     // default kGamma
};

// A partition of the vertices plus one real color per cluster.
struct Clustering {
    std::vector<int> assignment;       // vertex -> cluster id in [0, k)
    std::vector<Color> cluster_colors; // cluster id -> color in [0, L)

    int num_clusters() const { return static_cast<int>(cluster_colors.size()); }
};

// Throws std::invalid_argument if cl does not cover inst's vertices or uses
// out-of-range ids/colors.
void validate_clustering(const CccInstance& inst, const Clustering& cl);

// Number of disagreements: labeled pairs separated or co-clustered under a
// different color, plus gamma pairs co-clustered.
std::int64_t cost(const CccInstance& inst, const Clustering& cl);

// --- generators ---------------------------------------------------------

// L equal groups; intra-group pairs carry the group color, inter-group pairs
// the lower-indexed group's color. Inter-group pairs flip to gamma
// independently with probability neg_fraction (at L == 1 every pair is
// eligible, giving the classical CC instance with gamma noise).
CccInstance gen_max_interfering(int n, int num_colors, double neg_fraction, std::uint64_t seed);

// Each pair is gamma with probability p_gamma, otherwise uniform over colors.
CccInstance gen_random_multirelational(int n, int num_colors, double p_gamma, std::uint64_t seed);

// Signed complete graph with a fractional pair metric, the input of the
// blowup construction. positive/metric are pair-indexed like CccInstance.
struct CcBase {
    int n = 0;
    std::vector<bool> positive;   // sign per pair: true = '+', false = '-'
    std::vector<double> metric;   // x* per pair, in [0,1], triangle-feasible
};

// Throws if the metric violates [0,1] bounds or a triangle inequality beyond eps.
void validate_cc_metric(const CcBase& base, double eps = 1e-9);

// Blowup of a CC instance into L color planes: vertex (u, i) = u*L + i.
// Parallel same-plane pairs mirror the base sign (color c_i or gamma); every
// other pair is colored by the plane of its canonically-first endpoint. The
// returned solution embeds the base metric on parallel pairs in their own
// plane color and is feasible for the unaugmented LP.
std::pair<CccInstance, LpSolution> gen_chromatic_blowup(const CcBase& base, int num_colors);

// --- ingestion ----------------------------------------------------------

struct EdgeRecord {
    int u = 0;
    int v = 0;
    std::string color_token;  // "gamma", "c<k>" or "<k>"
};

// Listed pairs get the listed color, all unlisted pairs are gamma.
// Conflicting duplicate rows (same pair, different color) are an error.
CccInstance ingest_edge_list(const std::vector<EdgeRecord>& rows, int n, int num_colors);

// Pairs with cosine similarity strictly above the median pairwise similarity
// are colored by the lower-indexed endpoint's group; everything else is gamma.
// The number of colors is max(groups) + 1.
CccInstance ingest_tabular(const Eigen::MatrixXd& features, const std::vector<int>& groups);

}  // namespace ccc

#include "ccc/gap.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ccc/lp_model.hpp"
#include "ccc/parallel.hpp"
#include "ccc/seeding.hpp"
#include "ccc/stats.hpp"

namespace ccc {

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::pivot: return "pivot";
        case Algorithm::std_cc: return "std_cc";
        case Algorithm::lp_ccc: return "lp_ccc";
        case Algorithm::c4: return "c4";
    }
    return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "pivot") return Algorithm::pivot;
    if (name == "std_cc") return Algorithm::std_cc;
    if (name == "lp_ccc") return Algorithm::lp_ccc;
    if (name == "c4") return Algorithm::c4;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::vector<double> GapReport::finite_ratios() const {
    std::vector<double> out;
    out.reserve(trials.size());
    for (const GapTrial& t : trials)
        if (!t.flagged) out.push_back(t.ratio);
    return out;
}

GapSummary GapReport::summarize() const {
    GapSummary s;
    s.trials = static_cast<int>(trials.size());
    const std::vector<double> finite = finite_ratios();
    s.flagged = s.trials - static_cast<int>(finite.size());
    if (!finite.empty()) {
        s.mean = stats::mean(finite);
        s.stddev = stats::sample_stddev(finite);
        s.max = *std::max_element(finite.begin(), finite.end());
    }
    return s;
}

GapReport empirical_gap(const CccInstance& inst, Algorithm algorithm, const LpSolution& sol,
                        int trials, std::uint64_t seed_base, const RoundingProfile& profile,
                        double eps_feas, int threads, const std::string& instance_id,
                        const std::string& family) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    // validate the contract once; the rounders re-check per call
    if (algorithm == Algorithm::lp_ccc) {
        const ViolationReport r = validate_solution(inst, sol, false, eps_feas);
        if (!r.empty())
            throw std::invalid_argument("solution infeasible for the plain relaxation: " +
                                        r.to_string());
    } else if (algorithm == Algorithm::c4) {
        const ViolationReport r = validate_solution(inst, sol, true, eps_feas);
        if (!r.empty())
            throw std::invalid_argument("solution violates the coupling rows: " + r.to_string());
    }

    GapReport report;
    report.instance_id = instance_id;
    report.family = family;
    report.n = inst.n();
    report.num_colors = inst.num_colors();
    report.algorithm = algorithm;
    report.trials.resize(trials);

    const double lp_obj = sol.objective;
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t t) {
            GapTrial& row = report.trials[t];
            row.trial = static_cast<int>(t);
            row.seed = derive_seed(seed_base, "trial", t);
            Clustering cl;
            switch (algorithm) {
                case Algorithm::pivot: cl = pivot_chromatic(inst, row.seed); break;
                case Algorithm::std_cc: cl = std_cc_round(inst, row.seed); break;
                case Algorithm::lp_ccc:
                    cl = lp_ccc_round(inst, sol, profile, row.seed, eps_feas);
                    break;
                case Algorithm::c4: {
                    C4Options opt;
                    opt.eps_feas = eps_feas;
                    opt.record_trace = false;
                    cl = c4_round(inst, sol, profile, row.seed, opt).first;
                    break;
                }
            }
            row.alg_cost = static_cast<double>(cost(inst, cl));
            row.lp_obj = lp_obj;
            constexpr double kZero = 1e-9;
            if (lp_obj > kZero) {
                row.ratio = row.alg_cost / lp_obj;
            } else if (row.alg_cost <= kZero) {
                row.ratio = 1.0;  // algorithm matched a zero relaxation exactly
            } else {
                row.ratio = std::numeric_limits<double>::infinity();
                row.flagged = true;
            }
        },
        threads);
    return report;
}

std::string write_gap_csv(const std::vector<GapReport>& reports) {
    std::ostringstream out;
    out << "instance_id,family,n,L,algorithm,trial,seed,alg_cost,lp_obj,ratio\n";
    char buf[64];
    for (const GapReport& report : reports) {
        for (const GapTrial& t : report.trials) {
            out << report.instance_id << "," << report.family << "," << report.n << ","
                << report.num_colors << "," << to_string(report.algorithm) << "," << t.trial
                << "," << t.seed << ",";
            std::snprintf(buf, sizeof(buf), "%.10g,%.10g,", t.alg_cost, t.lp_obj);
            out << buf;
            if (t.flagged) {
                out << "inf\n";
            } else {
                std::snprintf(buf, sizeof(buf), "%.10g\n", t.ratio);
                out << buf;
            }
        }
    }
    for (const GapReport& report : reports) {
        const GapSummary s = report.summarize();
        std::snprintf(buf, sizeof(buf), "mean=%.10g,std=%.10g,max=%.10g", s.mean, s.stddev,
                      s.max);
        out << "# summary," << report.instance_id << "," << to_string(report.algorithm)
            << ",trials=" << s.trials << "," << buf << ",flagged=" << s.flagged << "\n";
    }
    return out.str();
}

}  // namespace ccc

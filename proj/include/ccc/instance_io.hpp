#pragma once

#include <string>
#include <vector>

#include "ccc/instance.hpp"

namespace ccc {

// Canonical instance document (version 1): JSON object with fields
//   version, n, L, edges = [[u, v, color], ...]
// where color is an integer in [0, L-1] or the literal "gamma"; unlisted
// pairs are gamma. The writer emits only non-gamma pairs, sorted, and is
// byte-deterministic.
std::string write_instance(const CccInstance& inst);
CccInstance read_instance(const std::string& text);

void save_instance(const CccInstance& inst, const std::string& path);
CccInstance load_instance(const std::string& path);

// Base CC document (version 1): JSON object with fields
//   version, n, edges = [[u, v, "+"|"-"], ...], metric = [[u, v, x], ...]
// Unlisted pairs are negative; metric is optional (callers may solve the
// one-color relaxation to obtain it).
std::string write_cc_base(const CcBase& base, bool include_metric = true);
// has_metric is set to false when the document carries no metric section.
CcBase read_cc_base(const std::string& text, bool* has_metric = nullptr);
void save_cc_base(const CcBase& base, const std::string& path, bool include_metric = true);
CcBase load_cc_base(const std::string& path, bool* has_metric = nullptr);

// Delimiter-separated feature file with a header row; group_col names the
// integer group column, every other column must be numeric.
struct TabularData {
    Eigen::MatrixXd features;
    std::vector<int> groups;
};
TabularData read_tabular_text(const std::string& text, char delimiter,
                              const std::string& group_col);
TabularData load_tabular(const std::string& path, char delimiter, const std::string& group_col);

}  // namespace ccc

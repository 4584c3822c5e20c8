#pragma once

#include <string>

#include "voxpath/common.hpp"

namespace voxpath {

// Rows = recordings, columns = named features, binary labels.
// label 1 = pathological (the positive class), 0 = healthy.
struct FeatureMatrix {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;  // missing entries are NaN
    std::vector<int> labels;
    std::vector<std::string> speakers;  // optional, parallel to rows

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return column_names.size(); }
};

// Per-column train statistics; constant columns are flagged and dropped
// when the scaler is applied.
struct ZScaler {
    std::vector<double> mean;
    std::vector<double> std;
    std::vector<bool> constant;
};

ZScaler zscore_fit(const FeatureMatrix& train);
// Transforms with the *train* statistics and drops the constant columns.
FeatureMatrix zscore_apply(const ZScaler& scaler, const FeatureMatrix& any);

struct MannWhitneyResult {
    double u = 0.0;            // U statistic of the first sample
    double p_two_sided = 1.0;
};

// Midrank U with exact two-sided p by enumeration for n+m <= 20 without
// ties, normal approximation with tie and continuity corrections otherwise.
MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

struct SelectionResult {
    std::vector<std::size_t> selected;                      // column indices, p < alpha
    std::vector<std::pair<std::string, double>> p_sorted;   // (name, p) ascending
    bool fallback = false;                                  // nothing passed alpha
};

// Columns with more than 10% missing entries are excluded up front; the
// remaining p-values come from the two labeled groups of *these* rows only.
SelectionResult select_features(const FeatureMatrix& fm, double alpha = 0.05);

}  // namespace voxpath

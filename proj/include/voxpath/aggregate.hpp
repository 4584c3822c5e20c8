#pragma once

#include <array>

#include "voxpath/common.hpp"

namespace voxpath {

// The 60 scalar statistics every local-feature sequence is mapped through.
enum class StatId {
    max, min, pos_max, pos_min, rel_pos_max, rel_pos_min,
    range, rel_range, iqr, rel_iqr, idr, rel_idr, ipr, rel_ipr, studentized_range,
    mean, geo_mean, harm_mean,
    trimmed_mean_10, trimmed_mean_20, trimmed_mean_30, trimmed_mean_40, trimmed_mean_50,
    median, mode,
    var, std, mad_mean, mad_median, geo_std, coef_var, index_dispersion,
    moment_3, moment_4, moment_5, moment_6, kurtosis, skewness,
    pearson_skew_1, pearson_skew_2,
    percentile_1, percentile_5, percentile_10, percentile_20, percentile_30, percentile_40,
    percentile_60, percentile_70, percentile_80, percentile_90, percentile_95, percentile_99,
    quartile_1, quartile_3,
    regr_slope, regr_offset, regr_error,
    modulation, shannon_entropy, renyi2_entropy,
};

inline constexpr std::size_t kStatCount = 60;

const std::array<StatId, kStatCount>& all_stats();
const char* stat_name(StatId id);

// Sorted-sample percentile with linear interpolation between order stats.
double percentile(std::vector<double> sorted_or_not, double p);

// All 60 statistics of a finite-valued sequence. Undefined entries come
// back as missing; the function itself never throws on nonempty input.
std::array<double, kStatCount> aggregate(const std::vector<double>& seq);

}  // namespace voxpath

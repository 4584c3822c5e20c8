#include "voxpath/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "voxpath/spectral.hpp"

namespace voxpath {

const std::array<StatId, kStatCount>& all_stats() {
    static const std::array<StatId, kStatCount> ids = [] {
        std::array<StatId, kStatCount> a{};
        for (std::size_t i = 0; i < kStatCount; ++i) a[i] = static_cast<StatId>(i);
        return a;
    }();
    return ids;
}

const char* stat_name(StatId id) {
    static const char* names[kStatCount] = {
        "max", "min", "pos_max", "pos_min", "rel_pos_max", "rel_pos_min",
        "range", "rel_range", "iqr", "rel_iqr", "idr", "rel_idr", "ipr", "rel_ipr",
        "studentized_range",
        "mean", "geo_mean", "harm_mean",
        "trimmed_mean_10", "trimmed_mean_20", "trimmed_mean_30", "trimmed_mean_40",
        "trimmed_mean_50",
        "median", "mode",
        "var", "std", "mad_mean", "mad_median", "geo_std", "coef_var", "index_dispersion",
        "moment_3", "moment_4", "moment_5", "moment_6", "kurtosis", "skewness",
        "pearson_skew_1", "pearson_skew_2",
        "percentile_1", "percentile_5", "percentile_10", "percentile_20", "percentile_30",
        "percentile_40", "percentile_60", "percentile_70", "percentile_80", "percentile_90",
        "percentile_95", "percentile_99",
        "quartile_1", "quartile_3",
        "regr_slope", "regr_offset", "regr_error",
        "modulation", "shannon_entropy", "renyi2_entropy",
    };
    return names[static_cast<std::size_t>(id)];
}

double percentile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 1) return v[0];
    const double h = (static_cast<double>(n) - 1.0) * p / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

namespace {

// Midpoint of the densest of ceil(sqrt(N)) equal-width bins; ties go to the
// lowest bin. Constant input returns the value itself.
double mode_estimate(const std::vector<double>& v) {
    const auto [mn_it, mx_it] = std::minmax_element(v.begin(), v.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mx == mn) return mn;
    const auto bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(v.size()))));
    std::vector<std::size_t> counts(bins, 0);
    const double width = (mx - mn) / static_cast<double>(bins);
    for (double x : v) {
        auto b = static_cast<std::size_t>((x - mn) / width);
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }
    const std::size_t best = std::max_element(counts.begin(), counts.end()) - counts.begin();
    return mn + width * (static_cast<double>(best) + 0.5);
}

// Mean after dropping floor(N*k/200) samples from each sorted tail.
double trimmed_mean(const std::vector<double>& sorted, double pct) {
    const std::size_t n = sorted.size();
    const auto cut = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * pct / 200.0));
    if (2 * cut >= n) return missing();
    double acc = 0.0;
    for (std::size_t i = cut; i < n - cut; ++i) acc += sorted[i];
    return acc / static_cast<double>(n - 2 * cut);
}

}  // namespace

std::array<double, kStatCount> aggregate(const std::vector<double>& seq) {
    std::array<double, kStatCount> out;
    out.fill(kMissing);
    const std::size_t n = seq.size();
    if (n == 0) return out;
    const double dn = static_cast<double>(n);

    auto set = [&](StatId id, double v) { out[static_cast<std::size_t>(id)] = v; };

    std::vector<double> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    const double mn = sorted.front(), mx = sorted.back();

    const std::size_t pos_max =
        std::max_element(seq.begin(), seq.end()) - seq.begin();
    const std::size_t pos_min =
        std::min_element(seq.begin(), seq.end()) - seq.begin();

    set(StatId::max, mx);
    set(StatId::min, mn);
    set(StatId::pos_max, static_cast<double>(pos_max));
    set(StatId::pos_min, static_cast<double>(pos_min));
    if (n > 1) {
        set(StatId::rel_pos_max, static_cast<double>(pos_max) / (dn - 1.0));
        set(StatId::rel_pos_min, static_cast<double>(pos_min) / (dn - 1.0));
    }

    double abs_max = 0.0;
    for (double v : seq) abs_max = std::max(abs_max, std::abs(v));

    const double range = mx - mn;
    const double q1 = percentile(sorted, 25.0), q3 = percentile(sorted, 75.0);
    const double p10 = percentile(sorted, 10.0), p90 = percentile(sorted, 90.0);
    const double p1 = percentile(sorted, 1.0), p99 = percentile(sorted, 99.0);
    const double iqr = q3 - q1, idr = p90 - p10, ipr = p99 - p1;

    set(StatId::range, range);
    set(StatId::iqr, iqr);
    set(StatId::idr, idr);
    set(StatId::ipr, ipr);
    if (abs_max > 0.0) {
        set(StatId::rel_range, range / abs_max);
        set(StatId::rel_iqr, iqr / abs_max);
        set(StatId::rel_idr, idr / abs_max);
        set(StatId::rel_ipr, ipr / abs_max);
    }

    double mean = 0.0;
    for (double v : seq) mean += v;
    mean /= dn;
    set(StatId::mean, mean);

    // sample variance
    double ss = 0.0;
    for (double v : seq) ss += (v - mean) * (v - mean);
    const double var = (n > 1) ? ss / (dn - 1.0) : kMissing;
    const double sd = (n > 1) ? std::sqrt(var) : kMissing;
    set(StatId::var, var);
    set(StatId::std, sd);
    if (!is_missing(sd) && sd > 0.0) set(StatId::studentized_range, range / sd);

    const bool all_positive = mn > 0.0;
    if (all_positive) {
        double log_sum = 0.0, inv_sum = 0.0;
        for (double v : seq) {
            log_sum += std::log(v);
            inv_sum += 1.0 / v;
        }
        set(StatId::geo_mean, std::exp(log_sum / dn));
        set(StatId::harm_mean, dn / inv_sum);
        if (n > 1) {
            const double log_mean = log_sum / dn;
            double log_ss = 0.0;
            for (double v : seq) {
                const double d = std::log(v) - log_mean;
                log_ss += d * d;
            }
            set(StatId::geo_std, std::exp(std::sqrt(log_ss / (dn - 1.0))));
        }
    }

    set(StatId::trimmed_mean_10, trimmed_mean(sorted, 10.0));
    set(StatId::trimmed_mean_20, trimmed_mean(sorted, 20.0));
    set(StatId::trimmed_mean_30, trimmed_mean(sorted, 30.0));
    set(StatId::trimmed_mean_40, trimmed_mean(sorted, 40.0));
    set(StatId::trimmed_mean_50, trimmed_mean(sorted, 50.0));

    const double median = percentile(sorted, 50.0);
    set(StatId::median, median);
    const double mode = mode_estimate(seq);
    set(StatId::mode, mode);

    double mad_mean = 0.0;
    for (double v : seq) mad_mean += std::abs(v - mean);
    set(StatId::mad_mean, mad_mean / dn);
    {
        std::vector<double> dev(n);
        for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(seq[i] - median);
        set(StatId::mad_median, percentile(dev, 50.0));
    }
    if (mean != 0.0) {
        if (!is_missing(sd)) set(StatId::coef_var, sd / mean);
        if (!is_missing(var)) set(StatId::index_dispersion, var / mean);
    }

    // central moments, population normalization
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, m5 = 0.0, m6 = 0.0;
    for (double v : seq) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        m5 += d2 * d2 * d;
        m6 += d2 * d2 * d2;
    }
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    m5 /= dn;
    m6 /= dn;
    set(StatId::moment_3, m3);
    set(StatId::moment_4, m4);
    set(StatId::moment_5, m5);
    set(StatId::moment_6, m6);
    if (m2 > 0.0) {
        set(StatId::kurtosis, m4 / (m2 * m2));
        set(StatId::skewness, m3 / std::pow(m2, 1.5));
    }
    if (!is_missing(sd) && sd > 0.0) {
        set(StatId::pearson_skew_1, (mean - mode) / sd);
        set(StatId::pearson_skew_2, 3.0 * (mean - median) / sd);
    }

    set(StatId::percentile_1, p1);
    set(StatId::percentile_5, percentile(sorted, 5.0));
    set(StatId::percentile_10, p10);
    set(StatId::percentile_20, percentile(sorted, 20.0));
    set(StatId::percentile_30, percentile(sorted, 30.0));
    set(StatId::percentile_40, percentile(sorted, 40.0));
    set(StatId::percentile_60, percentile(sorted, 60.0));
    set(StatId::percentile_70, percentile(sorted, 70.0));
    set(StatId::percentile_80, percentile(sorted, 80.0));
    set(StatId::percentile_90, p90);
    set(StatId::percentile_95, percentile(sorted, 95.0));
    set(StatId::percentile_99, p99);
    set(StatId::quartile_1, q1);
    set(StatId::quartile_3, q3);

    if (n > 1) {
        const RegressionLine line = fit_line(seq, 0, n - 1);
        set(StatId::regr_slope, line.slope);
        set(StatId::regr_offset, line.offset);
        set(StatId::regr_error, line.rss_error);
    }

    if (mx + mn != 0.0) set(StatId::modulation, (mx - mn) / (mx + mn));
    set(StatId::shannon_entropy, shannon_entropy(seq));
    set(StatId::renyi2_entropy, renyi2_entropy(seq));

    return out;
}

}  // namespace voxpath

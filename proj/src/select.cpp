#include "voxpath/select.hpp"

#include <algorithm>
#include <cmath>

namespace voxpath {

ZScaler zscore_fit(const FeatureMatrix& train) {
    if (train.n_rows() == 0) throw InsufficientDataError("zscore_fit on empty matrix");
    const std::size_t cols = train.n_cols();
    ZScaler sc;
    sc.mean.assign(cols, 0.0);
    sc.std.assign(cols, 0.0);
    sc.constant.assign(cols, false);

    for (std::size_t c = 0; c < cols; ++c) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& row : train.rows) {
            if (is_missing(row[c])) continue;
            sum += row[c];
            ++count;
        }
        if (count == 0) {
            sc.constant[c] = true;
            continue;
        }
        const double mean = sum / static_cast<double>(count);
        double ss = 0.0;
        for (const auto& row : train.rows) {
            if (is_missing(row[c])) continue;
            ss += (row[c] - mean) * (row[c] - mean);
        }
        const double sd = (count > 1) ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
        sc.mean[c] = mean;
        sc.std[c] = sd;
        if (sd == 0.0) sc.constant[c] = true;
    }
    return sc;
}

FeatureMatrix zscore_apply(const ZScaler& scaler, const FeatureMatrix& any) {
    if (scaler.mean.size() != any.n_cols())
        throw std::invalid_argument("scaler/matrix column mismatch");

    FeatureMatrix out;
    out.labels = any.labels;
    out.speakers = any.speakers;
    for (std::size_t c = 0; c < any.n_cols(); ++c)
        if (!scaler.constant[c]) out.column_names.push_back(any.column_names[c]);

    out.rows.reserve(any.n_rows());
    for (const auto& row : any.rows) {
        std::vector<double> r;
        r.reserve(out.column_names.size());
        for (std::size_t c = 0; c < any.n_cols(); ++c) {
            if (scaler.constant[c]) continue;
            r.push_back(is_missing(row[c]) ? kMissing
                                           : (row[c] - scaler.mean[c]) / scaler.std[c]);
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

namespace {

// Null distribution of the rank sum of the first sample: counts[r] = number
// of n-subsets of ranks 1..n+m with rank sum r.
std::vector<double> rank_sum_counts(std::size_t n, std::size_t m) {
    const std::size_t total = n + m;
    const std::size_t max_sum = total * (total + 1) / 2;
    // dp[j][r]: ways to pick j ranks so far with sum r
    std::vector<std::vector<double>> dp(n + 1, std::vector<double>(max_sum + 1, 0.0));
    dp[0][0] = 1.0;
    for (std::size_t rank = 1; rank <= total; ++rank) {
        for (std::size_t j = std::min(rank, n); j >= 1; --j) {
            for (std::size_t r = max_sum; r >= rank; --r) {
                if (dp[j - 1][r - rank] != 0.0) dp[j][r] += dp[j - 1][r - rank];
            }
        }
    }
    return dp[n];
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw InsufficientDataError("mann_whitney_u on empty sample");
    const std::size_t n = a.size(), m = b.size();
    const std::size_t total = n + m;

    // pooled midranks
    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(total);
    for (double v : a) pooled.emplace_back(v, 0);
    for (double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    double rank_sum_a = 0.0;
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
    bool any_ties = false;
    std::size_t i = 0;
    while (i < total) {
        std::size_t j = i;
        while (j < total && pooled[j].first == pooled[i].first) ++j;
        const double t = static_cast<double>(j - i);
        if (t > 1.0) {
            any_ties = true;
            tie_term += t * t * t - t;
        }
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        i = j;
    }

    MannWhitneyResult res;
    res.u = rank_sum_a - static_cast<double>(n) * (static_cast<double>(n) + 1.0) / 2.0;

    if (!any_ties && total <= 20) {
        // exact two-sided p: 2 * min tail of the rank-sum null distribution
        const auto counts = rank_sum_counts(n, m);
        double total_ways = 0.0;
        for (double c : counts) total_ways += c;
        const auto r_obs = static_cast<std::size_t>(std::llround(rank_sum_a));
        double lower = 0.0, upper = 0.0;
        for (std::size_t r = 0; r < counts.size(); ++r) {
            if (r <= r_obs) lower += counts[r];
            if (r >= r_obs) upper += counts[r];
        }
        res.p_two_sided = std::min(1.0, 2.0 * std::min(lower, upper) / total_ways);
        return res;
    }

    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    const double dt = dn + dm;
    const double mu = dn * dm / 2.0;
    const double tie_correction = (dt > 1.0) ? tie_term / (dt * (dt - 1.0)) : 0.0;
    const double var = dn * dm / 12.0 * (dt + 1.0 - tie_correction);
    if (var <= 0.0) {
        res.p_two_sided = 1.0;  // all pooled values identical
        return res;
    }
    const double diff = std::max(0.0, std::abs(res.u - mu) - 0.5);  // continuity correction
    res.p_two_sided = std::min(1.0, 2.0 * normal_sf(diff / std::sqrt(var)));
    return res;
}

SelectionResult select_features(const FeatureMatrix& fm, double alpha) {
    bool has0 = false, has1 = false;
    for (int l : fm.labels) (l == 0 ? has0 : has1) = true;
    if (!has0 || !has1) throw InsufficientDataError("select_features needs both classes");

    SelectionResult out;
    const std::size_t rows = fm.n_rows();

    for (std::size_t c = 0; c < fm.n_cols(); ++c) {
        std::size_t n_missing = 0;
        std::vector<double> a, b;
        for (std::size_t r = 0; r < rows; ++r) {
            const double v = fm.rows[r][c];
            if (is_missing(v)) {
                ++n_missing;
                continue;
            }
            (fm.labels[r] == 0 ? a : b).push_back(v);
        }
        if (static_cast<double>(n_missing) > 0.10 * static_cast<double>(rows)) continue;
        if (a.empty() || b.empty()) continue;
        const double p = mann_whitney_u(a, b).p_two_sided;
        out.p_sorted.emplace_back(fm.column_names[c], p);
        if (p < alpha) out.selected.push_back(c);
    }

    std::sort(out.p_sorted.begin(), out.p_sorted.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first < y.first;
    });

    if (out.selected.empty()) {
        // fall back to every column that survived the missing-value screen
        out.fallback = true;
        for (std::size_t c = 0; c < fm.n_cols(); ++c) {
            std::size_t n_missing = 0;
            for (std::size_t r = 0; r < rows; ++r)
                if (is_missing(fm.rows[r][c])) ++n_missing;
            if (static_cast<double>(n_missing) <= 0.10 * static_cast<double>(rows))
                out.selected.push_back(c);
        }
    }
    return out;
}

}  // namespace voxpath

#include <algorithm>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "voxpath/aggregate.hpp"

using namespace voxpath;

// ---------------------------------------------------------------------------
// Independent recomputation of all 60 statistics. Deliberately written as a
// straight-line map-building function with its own percentile, histogram and
// regression code so a defect in the library path cannot hide here.
// ---------------------------------------------------------------------------
namespace oracle {

const double kNan = std::numeric_limits<double>::quiet_NaN();

double pctl(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    if (v.size() == 1) return v[0];
    double h = (v.size() - 1.0) * p / 100.0;
    std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= v.size()) return v.back();
    return v[i] * (1.0 - (h - i)) + v[i + 1] * (h - i);
}

std::vector<double> hist_probs(const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    if (lo == hi) return {1.0};
    std::size_t bins = static_cast<std::size_t>(std::ceil(std::sqrt(1.0 * v.size())));
    std::vector<double> p(bins, 0.0);
    for (double x : v) {
        std::size_t b = static_cast<std::size_t>((x - lo) / (hi - lo) * bins);
        if (b >= bins) b = bins - 1;
        p[b] += 1.0 / v.size();
    }
    return p;
}

std::map<std::string, double> compute(const std::vector<double>& s) {
    std::map<std::string, double> m;
    const std::size_t n = s.size();

    double mx = s[0], mn = s[0];
    std::size_t imx = 0, imn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i] > mx) {
            mx = s[i];
            imx = i;
        }
        if (s[i] < mn) {
            mn = s[i];
            imn = i;
        }
    }
    m["max"] = mx;
    m["min"] = mn;
    m["pos_max"] = imx;
    m["pos_min"] = imn;
    m["rel_pos_max"] = n > 1 ? imx / (n - 1.0) : kNan;
    m["rel_pos_min"] = n > 1 ? imn / (n - 1.0) : kNan;

    double amax = 0.0;
    for (double v : s) amax = std::max(amax, std::abs(v));
    m["range"] = mx - mn;
    m["rel_range"] = amax > 0 ? (mx - mn) / amax : kNan;
    m["iqr"] = pctl(s, 75) - pctl(s, 25);
    m["rel_iqr"] = amax > 0 ? m["iqr"] / amax : kNan;
    m["idr"] = pctl(s, 90) - pctl(s, 10);
    m["rel_idr"] = amax > 0 ? m["idr"] / amax : kNan;
    m["ipr"] = pctl(s, 99) - pctl(s, 1);
    m["rel_ipr"] = amax > 0 ? m["ipr"] / amax : kNan;

    double mean = 0;
    for (double v : s) mean += v;
    mean /= n;
    m["mean"] = mean;

    double svar = kNan, sd = kNan;
    if (n > 1) {
        double acc = 0;
        for (double v : s) acc += (v - mean) * (v - mean);
        svar = acc / (n - 1.0);
        sd = std::sqrt(svar);
    }
    m["var"] = svar;
    m["std"] = sd;
    m["studentized_range"] = (n > 1 && sd > 0) ? (mx - mn) / sd : kNan;

    if (mn > 0) {
        double lg = 0, inv = 0;
        for (double v : s) {
            lg += std::log(v);
            inv += 1.0 / v;
        }
        m["geo_mean"] = std::exp(lg / n);
        m["harm_mean"] = n / inv;
        if (n > 1) {
            double lm = lg / n, acc = 0;
            for (double v : s) acc += (std::log(v) - lm) * (std::log(v) - lm);
            m["geo_std"] = std::exp(std::sqrt(acc / (n - 1.0)));
        } else {
            m["geo_std"] = kNan;
        }
    } else {
        m["geo_mean"] = m["harm_mean"] = m["geo_std"] = kNan;
    }

    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (int k : {10, 20, 30, 40, 50}) {
        std::size_t cut = static_cast<std::size_t>(std::floor(n * k / 200.0));
        std::string key = "trimmed_mean_" + std::to_string(k);
        if (2 * cut >= n) {
            m[key] = kNan;
            continue;
        }
        double acc = 0;
        for (std::size_t i = cut; i < n - cut; ++i) acc += sorted[i];
        m[key] = acc / (n - 2.0 * cut);
    }

    m["median"] = pctl(s, 50);

    // histogram mode
    if (mx == mn) {
        m["mode"] = mn;
    } else {
        std::size_t bins = static_cast<std::size_t>(std::ceil(std::sqrt(1.0 * n)));
        std::vector<int> counts(bins, 0);
        for (double v : s) {
            std::size_t b = static_cast<std::size_t>((v - mn) / (mx - mn) * bins);
            if (b >= bins) b = bins - 1;
            counts[b]++;
        }
        std::size_t best = 0;
        for (std::size_t b = 1; b < bins; ++b)
            if (counts[b] > counts[best]) best = b;
        m["mode"] = mn + (mx - mn) / bins * (best + 0.5);
    }

    double admean = 0;
    for (double v : s) admean += std::abs(v - mean);
    m["mad_mean"] = admean / n;
    {
        std::vector<double> dev;
        for (double v : s) dev.push_back(std::abs(v - m["median"]));
        m["mad_median"] = pctl(dev, 50);
    }
    m["coef_var"] = (mean != 0 && n > 1) ? sd / mean : kNan;
    m["index_dispersion"] = (mean != 0 && n > 1) ? svar / mean : kNan;

    double c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
    for (double v : s) {
        double d = v - mean;
        c2 += std::pow(d, 2);
        c3 += std::pow(d, 3);
        c4 += std::pow(d, 4);
        c5 += std::pow(d, 5);
        c6 += std::pow(d, 6);
    }
    c2 /= n;
    c3 /= n;
    c4 /= n;
    c5 /= n;
    c6 /= n;
    m["moment_3"] = c3;
    m["moment_4"] = c4;
    m["moment_5"] = c5;
    m["moment_6"] = c6;
    m["kurtosis"] = c2 > 0 ? c4 / (c2 * c2) : kNan;
    m["skewness"] = c2 > 0 ? c3 / std::pow(c2, 1.5) : kNan;
    m["pearson_skew_1"] = (n > 1 && sd > 0) ? (mean - m["mode"]) / sd : kNan;
    m["pearson_skew_2"] = (n > 1 && sd > 0) ? 3.0 * (mean - m["median"]) / sd : kNan;

    for (int p : {1, 5, 10, 20, 30, 40, 60, 70, 80, 90, 95, 99})
        m["percentile_" + std::to_string(p)] = pctl(s, p);
    m["quartile_1"] = pctl(s, 25);
    m["quartile_3"] = pctl(s, 75);

    if (n > 1) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += i;
            sy += s[i];
            sxx += 1.0 * i * i;
            sxy += i * s[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        double offset = (sy - slope * sx) / n;
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = s[i] - (offset + slope * i);
            rss += r * r;
        }
        m["regr_slope"] = slope;
        m["regr_offset"] = offset;
        m["regr_error"] = rss;
    } else {
        m["regr_slope"] = m["regr_offset"] = m["regr_error"] = kNan;
    }

    m["modulation"] = (mx + mn != 0) ? (mx - mn) / (mx + mn) : kNan;

    double she = 0, re = 0;
    for (double p : hist_probs(s)) {
        if (p > 0) she -= p * std::log2(p);
        re += p * p;
    }
    m["shannon_entropy"] = she;
    m["renyi2_entropy"] = -std::log2(re);

    return m;
}

}  // namespace oracle

namespace {

void check_against_oracle(const std::vector<double>& seq, double tol = 1e-10) {
    const auto got = aggregate(seq);
    const auto expect = oracle::compute(seq);
    for (StatId id : all_stats()) {
        const double g = got[static_cast<std::size_t>(id)];
        const double e = expect.at(stat_name(id));
        INFO("stat ", stat_name(id), " n=", seq.size());
        if (std::isnan(e)) {
            CHECK(is_missing(g));
        } else {
            REQUIRE(!is_missing(g));
            const double scale = std::max(1.0, std::abs(e));
            CHECK(std::abs(g - e) <= tol * scale);
        }
    }
}

}  // namespace

TEST_CASE("aggregate matches the spec's worked example") {
    const auto got = aggregate({1, 2, 3});
    auto at = [&](StatId id) { return got[static_cast<std::size_t>(id)]; };
    CHECK(at(StatId::mean) == doctest::Approx(2.0));
    CHECK(at(StatId::median) == doctest::Approx(2.0));
    CHECK(at(StatId::range) == doctest::Approx(2.0));
    CHECK(at(StatId::std) == doctest::Approx(1.0));
    CHECK(at(StatId::quartile_1) == doctest::Approx(1.5));
    CHECK(at(StatId::modulation) == doctest::Approx(0.5));
}

TEST_CASE("aggregate degenerate handling") {
    const auto got = aggregate({5, 5, 5});
    auto at = [&](StatId id) { return got[static_cast<std::size_t>(id)]; };
    CHECK(at(StatId::std) == doctest::Approx(0.0));
    CHECK(is_missing(at(StatId::studentized_range)));
    CHECK(is_missing(at(StatId::skewness)));
    CHECK(at(StatId::modulation) == doctest::Approx(0.0));
    CHECK(at(StatId::shannon_entropy) == doctest::Approx(0.0));
}

TEST_CASE("aggregate equals the dual implementation on random data") {
    std::mt19937_64 rng(81);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 1 + rng() % 200;
        check_against_oracle(testutil::uniform_vec(rng, n, -5.0, 5.0));
    }
    // positive-only sequences exercise the geometric statistics
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rng() % 100;
        check_against_oracle(testutil::uniform_vec(rng, n, 0.5, 7.0));
    }
}

TEST_CASE("aggregate equals the dual implementation on degenerate inputs") {
    check_against_oracle({42.0});
    check_against_oracle({1.0, 2.0});
    check_against_oracle({3.0, 3.0, 3.0, 3.0});
    check_against_oracle({-1.0, 1.0});
    check_against_oracle({0.0});
    check_against_oracle({0.0, 0.0});
}

TEST_CASE("permutation invariance of order-free statistics") {
    std::mt19937_64 rng(82);
    auto seq = testutil::uniform_vec(rng, 60);
    auto shuffled = seq;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng() % i]);

    const auto a = aggregate(seq);
    const auto b = aggregate(shuffled);
    for (StatId id : all_stats()) {
        switch (id) {
            case StatId::pos_max:
            case StatId::pos_min:
            case StatId::rel_pos_max:
            case StatId::rel_pos_min:
            case StatId::regr_slope:
            case StatId::regr_offset:
            case StatId::regr_error:
                continue;  // order-dependent by definition
            default:
                break;
        }
        const double x = a[static_cast<std::size_t>(id)];
        const double y = b[static_cast<std::size_t>(id)];
        INFO("stat ", stat_name(id));
        CHECK(x == doctest::Approx(y).epsilon(1e-12));
    }
}

TEST_CASE("affine equivariance") {
    std::mt19937_64 rng(83);
    const auto seq = testutil::uniform_vec(rng, 80);
    std::vector<double> mapped(seq.size());
    const double a = 2.5, b = -1.25;
    for (std::size_t i = 0; i < seq.size(); ++i) mapped[i] = a * seq[i] + b;

    const auto s1 = aggregate(seq);
    const auto s2 = aggregate(mapped);
    auto at = [](const std::array<double, kStatCount>& s, StatId id) {
        return s[static_cast<std::size_t>(id)];
    };
    CHECK(at(s2, StatId::mean) == doctest::Approx(a * at(s1, StatId::mean) + b).epsilon(1e-10));
    CHECK(at(s2, StatId::std) == doctest::Approx(a * at(s1, StatId::std)).epsilon(1e-10));
    CHECK(at(s2, StatId::skewness) == doctest::Approx(at(s1, StatId::skewness)).epsilon(1e-8));
}

TEST_CASE("small trims equal the mean exactly") {
    // n*k/200 rounds to zero here, so nothing is trimmed
    const std::vector<double> seq{4.0, 1.0, 3.0, 2.0, 8.0};
    const auto got = aggregate(seq);
    CHECK(got[static_cast<std::size_t>(StatId::trimmed_mean_10)] ==
          got[static_cast<std::size_t>(StatId::mean)]);
}

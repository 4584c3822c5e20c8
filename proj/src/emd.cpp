#include "voxpath/emd.hpp"

#include <algorithm>
#include <cmath>

#include "voxpath/fft.hpp"
#include "voxpath/spectral.hpp"

namespace voxpath {

void find_extrema(const std::vector<double>& x, std::vector<std::size_t>& maxima,
                  std::vector<std::size_t>& minima) {
    maxima.clear();
    minima.clear();
    int prev = 0;
    std::size_t candidate = 0;  // end of the last monotone move
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double d = x[i] - x[i - 1];
        const int s = (d > 0.0) - (d < 0.0);
        if (s == 0) continue;
        if (prev > 0 && s < 0) maxima.push_back(candidate);
        if (prev < 0 && s > 0) minima.push_back(candidate);
        prev = s;
        candidate = i;
    }
}

namespace {

// Natural cubic spline through strictly increasing knots.
struct CubicSpline {
    std::vector<double> t, y, m2;  // knots, values, second derivatives

    void build(std::vector<double> knots_t, std::vector<double> knots_y) {
        t = std::move(knots_t);
        y = std::move(knots_y);
        const std::size_t k = t.size();
        m2.assign(k, 0.0);
        if (k < 3) return;
        // tridiagonal solve for natural boundary conditions
        std::vector<double> a(k, 0.0), b(k, 0.0), c(k, 0.0), d(k, 0.0);
        for (std::size_t i = 1; i + 1 < k; ++i) {
            const double h0 = t[i] - t[i - 1];
            const double h1 = t[i + 1] - t[i];
            a[i] = h0;
            b[i] = 2.0 * (h0 + h1);
            c[i] = h1;
            d[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        for (std::size_t i = 2; i + 1 < k; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        for (std::size_t i = k - 2; i >= 1; --i) {
            m2[i] = (d[i] - c[i] * m2[i + 1]) / b[i];
            if (i == 1) break;
        }
    }

    double eval(double x) const {
        const std::size_t k = t.size();
        if (k == 1) return y[0];
        if (k == 2) {  // linear
            const double u = (x - t[0]) / (t[1] - t[0]);
            return y[0] + u * (y[1] - y[0]);
        }
        std::size_t i = std::upper_bound(t.begin(), t.end(), x) - t.begin();
        if (i == 0) i = 1;
        if (i >= k) i = k - 1;
        const double h = t[i] - t[i - 1];
        const double u = (x - t[i - 1]) / h;
        const double v = 1.0 - u;
        return v * y[i - 1] + u * y[i] +
               h * h / 6.0 * ((v * v * v - v) * m2[i - 1] + (u * u * u - u) * m2[i]);
    }
};

// Envelope through the given extrema with two extrema mirrored about each
// signal end, evaluated at every sample.
std::vector<double> envelope(const std::vector<double>& x, const std::vector<std::size_t>& idx) {
    const double last = static_cast<double>(x.size() - 1);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(idx.size() + 4);

    const std::size_t k = idx.size();
    const std::size_t n_mirror = std::min<std::size_t>(2, k);
    for (std::size_t j = n_mirror; j >= 1; --j)
        pts.emplace_back(-static_cast<double>(idx[j - 1]), x[idx[j - 1]]);
    for (std::size_t j = 0; j < k; ++j)
        pts.emplace_back(static_cast<double>(idx[j]), x[idx[j]]);
    for (std::size_t j = 0; j < n_mirror; ++j)
        pts.emplace_back(2.0 * last - static_cast<double>(idx[k - 1 - j]), x[idx[k - 1 - j]]);

    std::sort(pts.begin(), pts.end());
    std::vector<double> kt, ky;
    for (const auto& [pt, pv] : pts) {
        if (!kt.empty() && pt <= kt.back()) continue;  // drop duplicate knots
        kt.push_back(pt);
        ky.push_back(pv);
    }

    CubicSpline spline;
    spline.build(std::move(kt), std::move(ky));
    std::vector<double> env(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) env[n] = spline.eval(static_cast<double>(n));
    return env;
}

constexpr double kSdStop = 0.2;
constexpr int kMaxSifts = 10;
constexpr std::size_t kMaxImfs = 12;

}  // namespace

ImfSet emd(const std::vector<double>& sig) {
    if (sig.size() < 16) throw InsufficientDataError("emd needs length >= 16");

    ImfSet out;
    out.residual = sig;
    std::vector<std::size_t> maxima, minima;

    for (std::size_t imf_i = 0; imf_i < kMaxImfs; ++imf_i) {
        find_extrema(out.residual, maxima, minima);
        if (maxima.size() + minima.size() < 3) break;

        std::vector<double> h = out.residual;
        for (int sift = 0; sift < kMaxSifts; ++sift) {
            find_extrema(h, maxima, minima);
            if (maxima.empty() || minima.empty()) break;
            const auto upper = envelope(h, maxima);
            const auto lower = envelope(h, minima);

            double num = 0.0, den = 0.0;
            for (std::size_t n = 0; n < h.size(); ++n) {
                const double mean = 0.5 * (upper[n] + lower[n]);
                num += mean * mean;  // (h_prev - h)^2 = mean^2
                den += h[n] * h[n];
                h[n] -= mean;
            }
            if (den == 0.0 || num / den < kSdStop) break;
        }
        for (std::size_t n = 0; n < h.size(); ++n) out.residual[n] -= h[n];
        out.imfs.push_back(std::move(h));
    }
    return out;
}

const char* imf_param_name(ImfParam p) {
    switch (p) {
        case ImfParam::tkeo: return "TKEO";
        case ImfParam::seo: return "SEO";
        case ImfParam::she: return "SHE";
        case ImfParam::re: return "RE";
        case ImfParam::zcr: return "ZCR";
    }
    return "?";
}

namespace {

double imf_mu(const std::vector<double>& f, ImfParam param) {
    switch (param) {
        case ImfParam::tkeo: {
            const auto t = tkeo(f);
            double acc = 0.0;
            for (double v : t) acc += v;
            return acc / static_cast<double>(t.size());
        }
        case ImfParam::seo: {
            double acc = 0.0;
            for (double v : f) acc += v * v;
            return acc / static_cast<double>(f.size());
        }
        case ImfParam::she: return shannon_entropy(f);
        case ImfParam::re: return renyi2_entropy(f);
        case ImfParam::zcr: return zcr(f);
    }
    return 0.0;
}

}  // namespace

double imf_snr(const ImfSet& set, ImfParam param) {
    if (set.count() < 4) return missing();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < set.count(); ++i) {
        const double mu = imf_mu(set.imfs[i], param);
        (i < 3 ? den : num) += mu;
    }
    return den == 0.0 ? missing() : num / den;
}

double imf_nsr(const ImfSet& set, ImfParam param) {
    if (param == ImfParam::zcr) throw std::invalid_argument("imf_nsr has no ZCR variant");
    if (set.count() < 3) return missing();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < set.count(); ++i) {
        std::vector<double> logged(set.imfs[i].size());
        for (std::size_t n = 0; n < logged.size(); ++n)
            logged[n] = std::log(std::abs(set.imfs[i][n]) + kLogGuard);
        const double mu = imf_mu(logged, param);
        (i < 2 ? num : den) += mu;
    }
    return den == 0.0 ? missing() : num / den;
}

double imf_fd(const ImfSet& set) {
    if (set.count() < 1) return missing();
    const auto& f1 = set.imfs[0];
    const double n = static_cast<double>(f1.size());
    auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
    double n_ch = 0.0;
    for (std::size_t i = 1; i < f1.size(); ++i)
        n_ch += std::abs(sgn(f1[i]) - sgn(f1[i - 1]));
    const double log_n = std::log10(n);
    return log_n / (log_n + std::log10(n / (n + 0.4 * n_ch)));
}

double imf_cpp(const ImfSet& set, double rate, double f_max) {
    if (set.count() < 1) return missing();
    try {
        const auto ceps = real_cepstrum(set.imfs[0]);
        return cepstral_peak_prominence(ceps, rate, f_max);
    } catch (const std::runtime_error&) {
        return missing();
    }
}

std::vector<double> lpc(const std::vector<double>& x, std::size_t order) {
    if (x.size() <= order) return {};
    std::vector<double> r(order + 1, 0.0);
    for (std::size_t k = 0; k <= order; ++k)
        for (std::size_t n = k; n < x.size(); ++n) r[k] += x[n] * x[n - k];
    if (r[0] <= 0.0) return {};

    std::vector<double> a(order + 1, 0.0), tmp(order + 1, 0.0);
    double err = r[0];
    for (std::size_t i = 1; i <= order; ++i) {
        double acc = r[i];
        for (std::size_t j = 1; j < i; ++j) acc -= a[j] * r[i - j];
        const double k = acc / err;
        std::copy(a.begin(), a.end(), tmp.begin());
        a[i] = k;
        for (std::size_t j = 1; j < i; ++j) a[j] = tmp[j] - k * tmp[i - j];
        err *= (1.0 - k * k);
        if (err <= 0.0) return {};
    }
    return {a.begin() + 1, a.end()};
}

namespace {

// Hilbert envelope of one frequency band via spectral masking: keep the
// positive-frequency bins inside [lo, hi) doubled, invert, take magnitudes.
std::vector<double> band_envelope(const fft::cvec& spec, double rate, double lo, double hi) {
    const std::size_t n = spec.size();
    fft::cvec masked(n, {0.0, 0.0});
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) * rate / static_cast<double>(n);
        if (f >= lo && f < hi) masked[k] = 2.0 * spec[k];
    }
    auto z = fft::inverse(masked);
    std::vector<double> env(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(z[i]);
    return env;
}

// Peak of the full-lag normalized cross-correlation between two nonnegative
// envelopes, computed with zero-padded FFTs.
double max_ncc(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double na = 0.0, nb = 0.0;
    for (double v : a) na += v * v;
    for (double v : b) nb += v * v;
    if (na == 0.0 || nb == 0.0) return missing();

    std::size_t padded = 1;
    while (padded < 2 * n) padded *= 2;
    fft::cvec fa(padded, {0.0, 0.0}), fb(padded, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = {a[i], 0.0};
        fb[i] = {b[i], 0.0};
    }
    fft::transform(fa, false);
    fft::transform(fb, false);
    for (std::size_t i = 0; i < padded; ++i) fa[i] *= std::conj(fb[i]);
    fft::transform(fa, true);

    double peak = 0.0;
    for (const auto& v : fa) peak = std::max(peak, v.real());
    return peak / std::sqrt(na * nb);
}

}  // namespace

double imf_gne_frame(const std::vector<double>& frame, double rate) {
    ImfSet set;
    try {
        set = emd(frame);
    } catch (const InsufficientDataError&) {
        return missing();
    }
    if (set.count() < 1) return missing();
    return gne_from_first_imf(set.imfs[0], rate);
}

double gne_from_first_imf(const std::vector<double>& f1, double rate) {
    if (rate < 4000.0) throw std::invalid_argument("imf_gne needs rate >= 4 kHz");
    const auto coeffs = lpc(f1, 13);
    if (coeffs.empty()) return missing();
    std::vector<double> resid(f1.size());
    for (std::size_t n = 0; n < f1.size(); ++n) {
        double acc = f1[n];
        for (std::size_t k = 0; k < coeffs.size() && k < n; ++k)
            acc -= coeffs[k] * f1[n - 1 - k];
        resid[n] = acc;
    }

    // 1000 Hz-wide bands stepped by 1000 Hz, first center at 500 Hz
    std::vector<std::pair<double, double>> bands;
    for (double center = 500.0; center <= rate / 2.0 - 500.0; center += 1000.0)
        bands.emplace_back(center - 500.0, center + 500.0);
    if (bands.size() < 2) return missing();

    const auto spec = fft::forward(resid);
    std::vector<std::vector<double>> envs;
    envs.reserve(bands.size());
    for (const auto& [lo, hi] : bands) envs.push_back(band_envelope(spec, rate, lo, hi));

    double best = missing();
    for (std::size_t p = 0; p < envs.size(); ++p) {
        for (std::size_t q = p + 1; q < envs.size(); ++q) {
            const double v = max_ncc(envs[p], envs[q]);
            if (is_missing(v)) continue;
            if (is_missing(best) || v > best) best = v;
        }
    }
    return best;
}

}  // namespace voxpath

#include "voxpath/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "voxpath/fft.hpp"

namespace voxpath {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<std::complex<double>> dft(const std::vector<double>& x) {
    if (x.empty()) throw InsufficientDataError("dft of empty sequence");
    return fft::forward(x);
}

std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& x) {
    if (x.empty()) throw InsufficientDataError("idft of empty sequence");
    return fft::inverse(x);
}

std::vector<double> power_spectrum(const std::vector<double>& x) {
    auto spec = dft(x);
    std::vector<double> p(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) p[k] = std::norm(spec[k]);
    return p;
}

std::vector<double> real_cepstrum(const std::vector<double>& x) {
    if (x.size() < 2) throw InsufficientDataError("real_cepstrum needs length >= 2");
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }))
        throw DegenerateInputError("real_cepstrum of all-zero input");
    auto spec = fft::forward(x);
    fft::cvec logmag(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k)
        logmag[k] = {std::log(std::abs(spec[k]) + kLogGuard), 0.0};
    auto ceps = fft::inverse(logmag);
    std::vector<double> out(ceps.size());
    for (std::size_t n = 0; n < ceps.size(); ++n) out[n] = ceps[n].real();
    return out;
}

void unwrap_phase(std::vector<double>& phase) {
    for (std::size_t k = 1; k < phase.size(); ++k) {
        double d = phase[k] - phase[k - 1];
        while (d > kPi) {
            phase[k] -= 2.0 * kPi;
            d = phase[k] - phase[k - 1];
        }
        while (d < -kPi) {
            phase[k] += 2.0 * kPi;
            d = phase[k] - phase[k - 1];
        }
    }
}

std::vector<std::complex<double>> complex_cepstrum(const std::vector<double>& x) {
    if (x.size() < 2) throw InsufficientDataError("complex_cepstrum needs length >= 2");
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }))
        throw DegenerateInputError("complex_cepstrum of all-zero input");
    auto spec = fft::forward(x);
    std::vector<double> phase(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) phase[k] = std::arg(spec[k]);
    unwrap_phase(phase);
    fft::cvec logspec(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k)
        logspec[k] = {std::log(std::abs(spec[k]) + kLogGuard), phase[k]};
    return fft::inverse(logspec);
}

RegressionLine fit_line(const std::vector<double>& y, std::size_t x_start, std::size_t x_end) {
    if (x_end >= y.size() || x_start > x_end)
        throw std::invalid_argument("fit_line range out of bounds");
    const std::size_t n = x_end - x_start + 1;
    if (n < 2) throw InsufficientDataError("fit_line needs at least 2 points");

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = x_start; i <= x_end; ++i) {
        sx += static_cast<double>(i);
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = x_start; i <= x_end; ++i) {
        const double dx = static_cast<double>(i) - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    RegressionLine line;
    line.slope = sxy / sxx;
    line.offset = my - line.slope * mx;
    double rss = 0.0;
    for (std::size_t i = x_start; i <= x_end; ++i) {
        const double r = y[i] - line.at(static_cast<double>(i));
        rss += r * r;
    }
    line.rss_error = rss;
    return line;
}

double cepstral_peak_prominence(const std::vector<double>& ceps, double rate, double f_max) {
    const auto n0 = static_cast<std::size_t>(std::lround(rate / f_max));
    if (ceps.size() <= n0 + 1)
        throw InsufficientDataError("cepstrum shorter than the CPP search range");

    std::size_t peak = n0;
    for (std::size_t n = n0; n < ceps.size(); ++n)
        if (ceps[n] > ceps[peak]) peak = n;

    const RegressionLine line = fit_line(ceps, n0, ceps.size() - 1);
    if (ceps[peak] == 0.0) return missing();
    return (ceps[peak] - line.at(static_cast<double>(peak))) / ceps[peak];
}

std::vector<double> tkeo(const std::vector<double>& x) {
    if (x.size() < 3) throw InsufficientDataError("tkeo needs length >= 3");
    std::vector<double> out(x.size() - 2);
    for (std::size_t n = 1; n + 1 < x.size(); ++n)
        out[n - 1] = x[n] * x[n] - x[n - 1] * x[n + 1];
    return out;
}

std::vector<double> seo(const std::vector<double>& x) {
    std::vector<double> out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) out[n] = x[n] * x[n];
    return out;
}

double zcr(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
    double acc = 0.0;
    for (std::size_t n = 1; n < x.size(); ++n)
        acc += std::abs(sgn(x[n]) - sgn(x[n - 1]));
    return acc / static_cast<double>(x.size());
}

namespace {

// Bin probabilities over ceil(sqrt(N)) equal-width bins. Constant input
// collapses to a single full bin.
std::vector<double> histogram_probs(const std::vector<double>& x) {
    const auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mx == mn) return {1.0};
    const auto bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(x.size()))));
    std::vector<double> counts(bins, 0.0);
    const double width = (mx - mn) / static_cast<double>(bins);
    for (double v : x) {
        auto b = static_cast<std::size_t>((v - mn) / width);
        if (b >= bins) b = bins - 1;  // v == mx
        counts[b] += 1.0;
    }
    for (double& c : counts) c /= static_cast<double>(x.size());
    return counts;
}

}  // namespace

double shannon_entropy(const std::vector<double>& x) {
    if (x.empty()) throw InsufficientDataError("shannon_entropy of empty sequence");
    double h = 0.0;
    for (double p : histogram_probs(x))
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double renyi2_entropy(const std::vector<double>& x) {
    if (x.empty()) throw InsufficientDataError("renyi2_entropy of empty sequence");
    double s = 0.0;
    for (double p : histogram_probs(x)) s += p * p;
    return -std::log2(s);
}

}  // namespace voxpath

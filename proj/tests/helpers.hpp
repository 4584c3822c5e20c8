#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "voxpath/common.hpp"

namespace testutil {

inline constexpr double kPi = 3.14159265358979323846;

inline std::vector<double> uniform_vec(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                       double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

inline std::vector<double> gaussian_vec(std::mt19937_64& rng, std::size_t n, double sigma = 1.0) {
    std::normal_distribution<double> dist(0.0, sigma);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

inline std::vector<double> sine(std::size_t n, double freq_hz, double rate, double amp = 1.0,
                                double phase = 0.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = amp * std::sin(2.0 * kPi * freq_hz * static_cast<double>(i) / rate + phase);
    return v;
}

inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// Sustained-vowel synthesizer: glottal pulse train through a fixed
// three-resonance filter, optional amplitude modulation, period jitter and
// an additive white noise floor at the given SNR.
struct VowelSpec {
    double f0 = 120.0;
    double am_freq = 0.0;   // Hz, 0 disables AM
    double am_depth = 0.0;
    double jitter = 0.0;    // relative period jitter
    double snr_db = 60.0;
    double seconds = 1.0;
    double rate = 16000.0;
};

inline voxpath::Signal synth_vowel(const VowelSpec& spec, std::mt19937_64& rng) {
    const auto n = static_cast<std::size_t>(spec.seconds * spec.rate);
    std::vector<double> src(n, 0.0);

    std::normal_distribution<double> jitter_dist(0.0, spec.jitter);
    double t = 0.0;
    while (t < static_cast<double>(n)) {
        const auto idx = static_cast<std::size_t>(t);
        if (idx < n) src[idx] = 1.0;
        double period = spec.rate / spec.f0;
        if (spec.jitter > 0.0) period *= 1.0 + jitter_dist(rng);
        t += std::max(4.0, period);
    }

    // resonators at fixed formants
    std::vector<double> out(n, 0.0);
    const double formants[3] = {700.0, 1200.0, 2600.0};
    const double bws[3] = {80.0, 100.0, 150.0};
    std::vector<double> stage = src;
    for (int k = 0; k < 3; ++k) {
        const double r = std::exp(-kPi * bws[k] / spec.rate);
        const double a1 = -2.0 * r * std::cos(2.0 * kPi * formants[k] / spec.rate);
        const double a2 = r * r;
        double y1 = 0.0, y2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = stage[i] - a1 * y1 - a2 * y2;
            y2 = y1;
            y1 = y;
            out[i] = y;
        }
        stage = out;
    }

    if (spec.am_depth > 0.0 && spec.am_freq > 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] *= 1.0 + spec.am_depth *
                                std::sin(2.0 * kPi * spec.am_freq * static_cast<double>(i) /
                                         spec.rate);
    }

    double sig_power = 0.0;
    for (double v : out) sig_power += v * v;
    sig_power /= static_cast<double>(n);
    const double noise_power = sig_power / std::pow(10.0, spec.snr_db / 10.0);
    std::normal_distribution<double> noise(0.0, std::sqrt(noise_power));
    for (double& v : out) v += noise(rng);

    // normalize to a sane amplitude
    double peak = 0.0;
    for (double v : out) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
        for (double& v : out) v *= 0.8 / peak;

    return {std::move(out), spec.rate};
}

}  // namespace testutil

#include "voxpath/modspec.hpp"

#include <algorithm>
#include <cmath>

#include "voxpath/fft.hpp"
#include "voxpath/spectral.hpp"

namespace voxpath {

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

MelFilterbank mel_filterbank(std::size_t n_filters, std::size_t n_fft, double rate) {
    if (n_filters < 2) throw std::invalid_argument("mel_filterbank needs at least 2 filters");

    MelFilterbank fb;
    fb.n_filters = n_filters;
    fb.n_fft = n_fft;
    fb.rate = rate;

    // P+2 mel points over [0, rate/2]; triangle p peaks at point p with
    // weight 1 and reaches zero at its mel neighbours.
    const double mel_max = hz_to_mel(rate / 2.0);
    std::vector<double> edges(n_filters + 2);
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i] = mel_to_hz(mel_max * static_cast<double>(i) / (n_filters + 1));

    const std::size_t n_bins = n_fft / 2 + 1;
    fb.triangles.assign(n_filters, std::vector<double>(n_bins, 0.0));
    fb.centers.resize(n_filters);

    for (std::size_t p = 0; p < n_filters; ++p) {
        const double lo = edges[p], mid = edges[p + 1], hi = edges[p + 2];
        fb.centers[p] = mid;
        for (std::size_t k = 0; k < n_bins; ++k) {
            const double f = static_cast<double>(k) * rate / static_cast<double>(n_fft);
            if (f > lo && f < mid)
                fb.triangles[p][k] = (f - lo) / (mid - lo);
            else if (f == mid)
                fb.triangles[p][k] = 1.0;
            else if (f > mid && f < hi)
                fb.triangles[p][k] = (hi - f) / (hi - mid);
        }
    }
    return fb;
}

// Mel subband envelopes X[p,m] from per-frame power spectra.
static std::vector<std::vector<double>> subband_envelopes(const FrameGrid& grid,
                                                          const MelFilterbank& fb) {
    const std::size_t m_count = grid.frame_count();
    std::vector<std::vector<double>> env(fb.n_filters, std::vector<double>(m_count, 0.0));
    const std::size_t n_bins = fb.n_fft / 2 + 1;
    for (std::size_t m = 0; m < m_count; ++m) {
        const auto power = power_spectrum(grid.frames[m]);
        for (std::size_t p = 0; p < fb.n_filters; ++p) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n_bins; ++k) acc += fb.triangles[p][k] * power[k];
            env[p][m] = acc;
        }
    }
    return env;
}

ModulationSpectrum modulation_spectrum(const FrameGrid& grid, const MelFilterbank& fb) {
    const std::size_t m_count = grid.frame_count();
    if (m_count < 4) throw InsufficientDataError("modulation spectrum needs >= 4 frames");
    if (fb.n_fft != grid.frame_len)
        throw std::invalid_argument("filterbank n_fft must match frame length");

    auto env = subband_envelopes(grid, fb);

    ModulationSpectrum ms;
    ms.psi_n.assign(fb.n_filters, std::vector<double>(m_count, 0.0));
    ms.psi.assign(m_count, 0.0);
    ms.mod_bin_hz = grid.frame_rate() / static_cast<double>(m_count);

    for (std::size_t p = 0; p < fb.n_filters; ++p) {
        // log with guard, then subtract the mean over m
        std::vector<double> logenv(m_count);
        double mean = 0.0;
        for (std::size_t m = 0; m < m_count; ++m) {
            logenv[m] = std::log(env[p][m] + kLogGuard);
            mean += logenv[m];
        }
        mean /= static_cast<double>(m_count);
        for (double& v : logenv) v -= mean;

        auto spec = fft::forward(logenv);
        double total = 0.0;
        for (std::size_t l = 0; l < m_count; ++l) {
            ms.psi_n[p][l] = std::norm(spec[l]);
            total += ms.psi_n[p][l];
        }
        if (total > 0.0)
            for (double& v : ms.psi_n[p]) v /= total;
        for (std::size_t l = 0; l < m_count; ++l) ms.psi[l] += ms.psi_n[p][l];
    }
    return ms;
}

ModulationFeatures modulation_features(const ModulationSpectrum& ms) {
    const std::size_t m_count = ms.psi.size();
    if (m_count < 8) throw InsufficientDataError("modulation features need >= 8 bins");
    if (ms.mod_bin_hz * static_cast<double>(m_count - 1) < 5.0)
        throw InsufficientDataError("modulation axis does not reach 5 Hz");

    const auto l5 = static_cast<std::size_t>(std::lround(5.0 / ms.mod_bin_hz));

    ModulationFeatures out;

    double low = 0.0, high = 0.0;
    for (std::size_t l = 0; l < m_count; ++l)
        (l <= l5 ? low : high) += ms.psi[l];
    out.mser = (high == 0.0) ? missing() : low / high;

    // argmax restricted to [1, M/2]: bin 0 carries only the mean-removal
    // residue and the upper half mirrors the lower for a real envelope.
    std::size_t peak_bin = 1;
    for (std::size_t l = 1; l <= m_count / 2; ++l)
        if (ms.psi[l] > ms.psi[peak_bin]) peak_bin = l;
    out.mfp = ms.mod_bin_hz * static_cast<double>(peak_bin);

    std::size_t i = 0;
    for (std::size_t l = 0; l < m_count; ++l)
        if (ms.psi[l] > ms.psi[i]) i = l;
    if (l5 + 1 >= m_count) {
        out.rphm = missing();
    } else {
        const RegressionLine line = fit_line(ms.psi, l5, m_count - 1);
        out.rphm = (ms.psi[i] == 0.0)
                       ? missing()
                       : (ms.psi[i] - line.at(static_cast<double>(i))) / ms.psi[i];
    }
    return out;
}

}  // namespace voxpath

#include "voxpath/colliculus.hpp"

#include <algorithm>
#include <cmath>

#include "voxpath/fft.hpp"
#include "voxpath/spectral.hpp"

namespace voxpath {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double gammatone_bandwidth(double center_hz) {
    return 24.7 * (4.37e-3 * center_hz + 1.0);
}

GammatoneBank gammatone_bank(std::size_t n_filters, double rate, std::size_t len) {
    if (len == 0) throw std::invalid_argument("gammatone_bank needs len >= 1");

    GammatoneBank gb;
    gb.n_filters = n_filters;
    gb.len = len;
    gb.rate = rate;

    // centers shared with the triangular mel bank: points 1..P of the
    // P+2 grid over [0, rate/2]
    const double mel_max = hz_to_mel(rate / 2.0);
    gb.centers.resize(n_filters);
    gb.bandwidths.resize(n_filters);
    gb.impulse.assign(n_filters, std::vector<double>(len, 0.0));

    for (std::size_t p = 0; p < n_filters; ++p) {
        const double fc = mel_to_hz(mel_max * static_cast<double>(p + 1) / (n_filters + 1));
        const double b = gammatone_bandwidth(fc);
        gb.centers[p] = fc;
        gb.bandwidths[p] = b;
        auto& g = gb.impulse[p];
        double energy = 0.0;
        for (std::size_t n = 0; n < len; ++n) {
            const double t = static_cast<double>(n) / rate;
            g[n] = t * t * t * std::cos(2.0 * kPi * fc * t) * std::exp(-2.0 * kPi * b * t);
            energy += g[n] * g[n];
        }
        if (energy > 0.0) {
            const double inv = 1.0 / std::sqrt(energy);
            for (double& v : g) v *= inv;
        }
    }
    return gb;
}

std::vector<ResonanceFilter> resonance_bank(std::size_t q_count, double env_rate) {
    if (q_count < 2) throw std::invalid_argument("resonance_bank needs at least 2 filters");
    if (env_rate <= 0.0) throw std::invalid_argument("envelope rate must be positive");

    std::vector<ResonanceFilter> bank(q_count);
    const double lo = 12.0, hi = 107.0;
    for (std::size_t q = 0; q < q_count; ++q) {
        const double fc = lo * std::pow(hi / lo, static_cast<double>(q) / (q_count - 1));
        bank[q].center_hz = fc;
        bank[q].a1 = -1.8 * std::cos(2.0 * kPi * fc / env_rate);
        bank[q].a2 = 0.81;
    }
    return bank;
}

std::vector<double> resonance_apply(const ResonanceFilter& f, const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double v = f.b0 * x[n] + f.b1 * x1 + f.b2 * x2 - f.a1 * y1 - f.a2 * y2;
        x2 = x1;
        x1 = x[n];
        y2 = y1;
        y1 = v;
        y[n] = v;
    }
    return y;
}

IccFeatures icc_features(const FrameGrid& grid, const GammatoneBank& gb) {
    if (gb.n_filters != 20)
        throw std::invalid_argument("icc_features requires 20 gammatone bands");
    const std::size_t m_count = grid.frame_count();
    if (m_count < 4) throw InsufficientDataError("icc_features needs >= 4 frames");

    // power response of each gammatone filter on the frame FFT grid
    const std::size_t n_fft = grid.frame_len;
    const std::size_t n_bins = n_fft / 2 + 1;
    std::vector<std::vector<double>> weights(gb.n_filters, std::vector<double>(n_bins, 0.0));
    for (std::size_t p = 0; p < gb.n_filters; ++p) {
        std::vector<double> h = gb.impulse[p];
        h.resize(n_fft, 0.0);  // truncate or zero-pad onto the frame grid
        auto spec = fft::forward(h);
        for (std::size_t k = 0; k < n_bins; ++k) weights[p][k] = std::norm(spec[k]);
    }

    // subband envelopes X[p,m]
    std::vector<std::vector<double>> env(gb.n_filters, std::vector<double>(m_count, 0.0));
    for (std::size_t m = 0; m < m_count; ++m) {
        const auto power = power_spectrum(grid.frames[m]);
        for (std::size_t p = 0; p < gb.n_filters; ++p) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n_bins; ++k) acc += weights[p][k] * power[k];
            env[p][m] = acc;
        }
    }

    const auto resonance = resonance_bank(13, grid.frame_rate());

    IccFeatures out;
    out.matrix.xi_matrix.assign(gb.n_filters, std::vector<double>(resonance.size(), 0.0));
    out.matrix.xi.assign(gb.n_filters, 0.0);

    for (std::size_t p = 0; p < gb.n_filters; ++p) {
        // |T[p,l]|: magnitude spectrum of the raw envelope, no normalization
        auto spec = fft::forward(env[p]);
        std::vector<double> mag(m_count);
        for (std::size_t l = 0; l < m_count; ++l) mag[l] = std::abs(spec[l]);

        double xi_p = 0.0;
        for (std::size_t q = 0; q < resonance.size(); ++q) {
            const auto y = resonance_apply(resonance[q], mag);
            double ms = 0.0;
            for (double v : y) ms += v * v;
            ms /= static_cast<double>(y.size());
            out.matrix.xi_matrix[p][q] = ms;
            xi_p += std::log(ms + kLogGuard);
        }
        out.matrix.xi[p] = xi_p;
    }

    const auto& xi = out.matrix.xi;
    double low = 0.0, high = 0.0;
    for (std::size_t p = 0; p < 12; ++p) low += xi[p];
    for (std::size_t p = 12; p < 20; ++p) high += xi[p];
    out.icer = (high == 0.0) ? missing() : low / high;

    std::size_t i = 0;
    for (std::size_t p = 1; p < xi.size(); ++p)
        if (xi[p] > xi[i]) i = p;
    const RegressionLine line = fit_line(xi, 12, 19);
    out.rphic = (xi[i] == 0.0) ? missing()
                               : (xi[i] - line.at(static_cast<double>(i))) / xi[i];
    return out;
}

}  // namespace voxpath

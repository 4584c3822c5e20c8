#include "voxpath/bispec.hpp"

#include <algorithm>
#include <cmath>

#include "voxpath/fft.hpp"
#include "voxpath/spectral.hpp"

namespace voxpath {

namespace {

// In-place 2-D transform of an n x n row-major matrix: rows, then columns.
void fft2d(std::vector<std::complex<double>>& a, std::size_t n, bool inverse) {
    fft::cvec buf(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(a.begin() + r * n, a.begin() + (r + 1) * n, buf.begin());
        fft::transform(buf, inverse);
        std::copy(buf.begin(), buf.end(), a.begin() + r * n);
    }
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) buf[r] = a[r * n + c];
        fft::transform(buf, inverse);
        for (std::size_t r = 0; r < n; ++r) a[r * n + c] = buf[r];
    }
}

// Row-then-column sequential unwrap of an n x n phase matrix.
void unwrap2d(std::vector<double>& phase, std::size_t n) {
    std::vector<double> buf(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(phase.begin() + r * n, phase.begin() + (r + 1) * n, buf.begin());
        unwrap_phase(buf);
        std::copy(buf.begin(), buf.end(), phase.begin() + r * n);
    }
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) buf[r] = phase[r * n + c];
        unwrap_phase(buf);
        for (std::size_t r = 0; r < n; ++r) phase[r * n + c] = buf[r];
    }
}

}  // namespace

std::vector<double> triple_correlation(const std::vector<double>& frame) {
    const std::size_t n = frame.size();
    if (n < 4) throw InsufficientDataError("triple_correlation needs N >= 4");
    if (n > 1024) throw std::invalid_argument("triple_correlation bounded to N <= 1024");

    // doubled copy removes the mod from the inner loops
    std::vector<double> x2(2 * n);
    std::copy(frame.begin(), frame.end(), x2.begin());
    std::copy(frame.begin(), frame.end(), x2.begin() + n);

    std::vector<double> gamma(n * n);
    std::vector<double> y(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t n1 = 0; n1 < n; ++n1) {
        for (std::size_t i = 0; i < n; ++i) y[i] = frame[i] * x2[i + n1];
        for (std::size_t n2 = n1; n2 < n; ++n2) {
            const double* shifted = x2.data() + n2;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += y[i] * shifted[i];
            gamma[n1 * n + n2] = acc * inv_n;
            gamma[n2 * n + n1] = acc * inv_n;
        }
    }
    return gamma;
}

Bispectrum bispectrum(const std::vector<double>& frame) {
    const auto gamma = triple_correlation(frame);
    const std::size_t n = frame.size();
    Bispectrum bs;
    bs.n = n;
    bs.values.resize(n * n);
    for (std::size_t i = 0; i < n * n; ++i) bs.values[i] = {gamma[i], 0.0};
    fft2d(bs.values, n, false);
    return bs;
}

Bicepstrum bicepstrum_of(const Bispectrum& bs) {
    const std::size_t n = bs.n;
    Bicepstrum bc;
    bc.n = n;

    std::vector<std::complex<double>> logmag(n * n);
    std::vector<double> phase(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        logmag[i] = {std::log(std::abs(bs.values[i]) + kLogGuard), 0.0};
        phase[i] = std::arg(bs.values[i]);
    }

    auto real_spec = logmag;
    fft2d(real_spec, n, true);
    bc.real_part.resize(n * n);
    for (std::size_t i = 0; i < n * n; ++i) bc.real_part[i] = real_spec[i].real();

    unwrap2d(phase, n);
    for (std::size_t i = 0; i < n * n; ++i) logmag[i].imag(phase[i]);
    fft2d(logmag, n, true);
    bc.complex_variant = std::move(logmag);
    return bc;
}

Bicepstrum bicepstrum(const std::vector<double>& frame) {
    return bicepstrum_of(bispectrum(frame));
}

OneDimIndices one_dim_indices(const Bispectrum& bs, const Bicepstrum& bc) {
    OneDimIndices out;
    out.rho.resize(bc.n);
    out.vartheta.resize(bs.n);
    for (std::size_t i = 0; i < bc.n; ++i) out.rho[i] = bc.real_at(i, i);
    for (std::size_t k = 0; k < bs.n; ++k) out.vartheta[k] = std::abs(bs.at(k, k));
    return out;
}

std::size_t bispec_frame_len(std::size_t frame_len) {
    std::size_t cap = std::min<std::size_t>(frame_len, 512);
    std::size_t p = 1;
    while (p * 2 <= cap) p *= 2;
    return p;
}

BispecAnalysis analyze_bispec(const std::vector<std::vector<double>>& frames, double rate,
                              double f_max) {
    if (frames.empty()) throw InsufficientDataError("analyze_bispec needs at least one frame");
    const std::size_t n = frames[0].size();
    for (const auto& f : frames)
        if (f.size() != n) throw std::invalid_argument("analyze_bispec frames must share a length");

    const std::size_t m_count = frames.size();
    const std::size_t nn = n * n;
    const double inv_m = 1.0 / static_cast<double>(m_count);

    std::vector<double> sum_c(nn, 0.0), sum_abs_c(nn, 0.0);
    std::vector<std::complex<double>> sum_b(nn, {0.0, 0.0});
    std::vector<double> sum_ceps(n, 0.0), sum_spec_mag(n, 0.0);
    std::vector<double> eta_mod(m_count, 0.0), eta_ph(m_count, 0.0);

    BispecAnalysis out;
    auto& dist = out.distances;
    if (m_count >= 2) {
        dist.bcmd.assign(m_count - 1, 0.0);
        dist.bcpd.assign(m_count - 1, 0.0);
        dist.bmd.assign(m_count - 1, 0.0);
        dist.bpd.assign(m_count - 1, 0.0);
    }

    std::vector<std::complex<double>> prev_cc, prev_b;

    for (std::size_t m = 0; m < m_count; ++m) {
        const auto& frame = frames[m];
        Bispectrum bs = bispectrum(frame);
        Bicepstrum bc = bicepstrum_of(bs);

        for (std::size_t i = 0; i < nn; ++i) {
            sum_c[i] += bc.real_part[i];
            sum_abs_c[i] += std::abs(bc.real_part[i]);
            sum_b[i] += bs.values[i];
        }

        // frame-level 1-D quantities
        bool all_zero = std::all_of(frame.begin(), frame.end(), [](double v) { return v == 0.0; });
        std::vector<double> ceps1;
        std::vector<std::complex<double>> cceps1;
        if (all_zero) {
            // guarded log of a zero spectrum is the constant ln(eps); its
            // IDFT is an impulse at quefrency 0
            ceps1.assign(n, 0.0);
            ceps1[0] = std::log(kLogGuard);
            cceps1.assign(n, {0.0, 0.0});
            cceps1[0] = {std::log(kLogGuard), 0.0};
        } else {
            ceps1 = real_cepstrum(frame);
            cceps1 = complex_cepstrum(frame);
            auto spec = fft::forward(frame);
            for (std::size_t k = 0; k < n; ++k) sum_spec_mag[k] += std::abs(spec[k]);
        }
        for (std::size_t i = 0; i < n; ++i) sum_ceps[i] += ceps1[i];

        double em = 0.0, ep = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dm = std::abs(ceps1[i]) - std::abs(bc.real_at(i, i));
            em += dm * dm;
            const double dp = std::arg(cceps1[i]) - std::arg(bc.complex_at(i, i));
            ep += dp * dp;
        }
        eta_mod[m] = em;
        eta_ph[m] = ep;

        if (m > 0) {
            double bcmd = 0.0, bcpd = 0.0, bmd = 0.0, bpd = 0.0;
            for (std::size_t i = 0; i < nn; ++i) {
                bcmd += std::abs(std::abs(bc.complex_variant[i]) - std::abs(prev_cc[i]));
                bcpd += std::abs(std::arg(bc.complex_variant[i]) - std::arg(prev_cc[i]));
                bmd += std::abs(std::abs(bs.values[i]) - std::abs(prev_b[i]));
                bpd += std::abs(std::arg(bs.values[i]) - std::arg(prev_b[i]));
            }
            dist.bcmd[m - 1] = bcmd;
            dist.bcpd[m - 1] = bcpd;
            dist.bmd[m - 1] = bmd;
            dist.bpd[m - 1] = bpd;
        }
        prev_cc = std::move(bc.complex_variant);
        prev_b = std::move(bs.values);
    }

    // BCII over b = |sum c_m| / sum |c_m|, zero-coherence cells count as 1
    double bcii_sum = 0.0, b_max = 0.0;
    {
        for (std::size_t n1 = 0; n1 < n; ++n1) {
            double prev = 0.0;
            for (std::size_t n2 = 0; n2 < n; ++n2) {
                const std::size_t i = n1 * n + n2;
                const double b = (sum_abs_c[i] == 0.0) ? 1.0 : std::abs(sum_c[i]) / sum_abs_c[i];
                b_max = std::max(b_max, b);
                if (n2 > 0) bcii_sum += std::abs(b - prev);
                prev = b;
            }
        }
    }
    auto& feat = out.features;
    const double nn1 = static_cast<double>(nn) - 1.0;
    feat.bcii = (b_max == 0.0) ? missing() : bcii_sum / (nn1 * b_max);

    // recording-level one-dimensional indices
    out.mean_rho.resize(n);
    out.mean_vartheta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.mean_rho[i] = sum_c[i * n + i] * inv_m;
        out.mean_vartheta[i] = std::abs(sum_b[i * n + i] * inv_m);
    }

    const auto cut = static_cast<std::size_t>(std::lround(rate / f_max));
    double rho_low = 0.0, rho_high = 0.0, ceps_low = 0.0, ceps_high = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(out.mean_rho[i]);
        const double c = std::abs(sum_ceps[i] * inv_m);
        if (i <= cut) {
            rho_low += r;
            ceps_low += c;
        } else {
            rho_high += r;
            ceps_high += c;
        }
    }
    const double rho_total = rho_low + rho_high;
    feat.lfebc = (rho_total == 0.0) ? missing() : rho_low / rho_total;
    feat.hfebc = (rho_total == 0.0) ? missing() : rho_high / rho_total;
    feat.lcbcer = (rho_low == 0.0) ? missing() : ceps_low / rho_low;
    feat.hcbcer = (rho_high == 0.0) ? missing() : ceps_high / rho_high;

    const std::size_t half = n / 2;
    double spec_low = 0.0, spec_high = 0.0, theta_low = 0.0, theta_high = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double s = sum_spec_mag[k] * inv_m;
        const double t = out.mean_vartheta[k];
        if (k <= half) {
            spec_low += s;
            theta_low += t;
        } else {
            spec_high += s;
            theta_high += t;
        }
    }
    feat.lsber = (theta_low == 0.0) ? missing() : spec_low / theta_low;
    feat.hsber = (theta_high == 0.0) ? missing() : spec_high / theta_high;

    // interference indices: normalized total variation of eta over m
    auto interference = [&](const std::vector<double>& eta) {
        const double mx = *std::max_element(eta.begin(), eta.end());
        if (mx == 0.0) return missing();
        double tv = 0.0;
        for (std::size_t m = 1; m < eta.size(); ++m) tv += std::abs(eta[m] - eta[m - 1]);
        return tv / (nn1 * mx);
    };
    out.interference.bcmii = interference(eta_mod);
    out.interference.bcpii = interference(eta_ph);

    return out;
}

BicepstralFeatures bicepstral_features(const std::vector<std::vector<double>>& frames, double rate,
                                       double f_max) {
    return analyze_bispec(frames, rate, f_max).features;
}

BispectralDistances bicepstral_distances(const std::vector<std::vector<double>>& frames) {
    if (frames.size() < 2)
        throw InsufficientDataError("bicepstral_distances needs at least 2 frames");
    return analyze_bispec(frames, 16000.0).distances;
}

InterferenceIndices bicepstrum_interference(const std::vector<std::vector<double>>& frames) {
    if (frames.size() < 2)
        throw InsufficientDataError("bicepstrum_interference needs at least 2 frames");
    return analyze_bispec(frames, 16000.0).interference;
}

}  // namespace voxpath

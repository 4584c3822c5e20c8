#pragma once

#include <complex>

#include "voxpath/common.hpp"

namespace voxpath {

// N x N complex bispectrum, row-major: values[k1 * n + k2].
struct Bispectrum {
    std::size_t n = 0;
    std::vector<std::complex<double>> values;

    std::complex<double> at(std::size_t k1, std::size_t k2) const { return values[k1 * n + k2]; }
};

// Real bicepstrum and its complex variant, both N x N row-major.
struct Bicepstrum {
    std::size_t n = 0;
    std::vector<double> real_part;
    std::vector<std::complex<double>> complex_variant;

    double real_at(std::size_t n1, std::size_t n2) const { return real_part[n1 * n + n2]; }
    std::complex<double> complex_at(std::size_t n1, std::size_t n2) const {
        return complex_variant[n1 * n + n2];
    }
};

struct OneDimIndices {
    std::vector<double> rho;       // real bicepstrum diagonal c[n,n]
    std::vector<double> vartheta;  // |B[k,k]|
};

// Circular triple correlation, direct O(N^3) evaluation. Returns an N x N
// row-major matrix. Requires 4 <= N <= 1024.
std::vector<double> triple_correlation(const std::vector<double>& frame);

// 2-D DFT of the circular triple correlation.
Bispectrum bispectrum(const std::vector<double>& frame);

// Real part of the 2-D inverse DFT of ln|B|, plus the complex variant using
// ln B with row-then-column phase unwrapping.
Bicepstrum bicepstrum_of(const Bispectrum& bs);
Bicepstrum bicepstrum(const std::vector<double>& frame);

OneDimIndices one_dim_indices(const Bispectrum& bs, const Bicepstrum& bc);

// Largest power of two <= min(frame_len, 512): the frame size used for
// bispectral analysis inside the extraction pipeline.
std::size_t bispec_frame_len(std::size_t frame_len);

struct BicepstralFeatures {
    double bcii, hfebc, lfebc, lcbcer, hcbcer, lsber, hsber;
};

struct BispectralDistances {
    std::vector<double> bcmd, bcpd, bmd, bpd;  // M-1 entries each
};

struct InterferenceIndices {
    double bcmii, bcpii;
};

// Single sweep over the frames computing per-frame bispectra/bicepstra once
// and every derived quantity from them. Recording-level spectra, cepstra and
// the bicepstrum are means over frames.
struct BispecAnalysis {
    BicepstralFeatures features;
    BispectralDistances distances;
    InterferenceIndices interference;
    std::vector<double> mean_rho;       // diagonal of the mean real bicepstrum
    std::vector<double> mean_vartheta;  // |diag| of the mean bispectrum
};

BispecAnalysis analyze_bispec(const std::vector<std::vector<double>>& frames, double rate,
                              double f_max = 350.0);

BicepstralFeatures bicepstral_features(const std::vector<std::vector<double>>& frames,
                                       double rate, double f_max = 350.0);
BispectralDistances bicepstral_distances(const std::vector<std::vector<double>>& frames);
InterferenceIndices bicepstrum_interference(const std::vector<std::vector<double>>& frames);

}  // namespace voxpath

#pragma once

#include "voxpath/common.hpp"

namespace voxpath {

// Bank of triangular filters with centers equidistant on the mel scale.
struct MelFilterbank {
    std::size_t n_filters = 0;
    std::size_t n_fft = 0;
    double rate = 0.0;
    std::vector<std::vector<double>> triangles;  // P x (n_fft/2 + 1)
    std::vector<double> centers;                 // Hz
};

struct ModulationSpectrum {
    std::vector<std::vector<double>> psi_n;  // P x M, rows sum to 1
    std::vector<double> psi;                 // length M column sums
    double mod_bin_hz = 0.0;                 // Hz per modulation bin
};

struct ModulationFeatures {
    double mser = 0.0;
    double mfp = 0.0;   // Hz
    double rphm = 0.0;
};

double hz_to_mel(double f);
double mel_to_hz(double m);

MelFilterbank mel_filterbank(std::size_t n_filters, std::size_t n_fft, double rate);

// Per-frame power spectra -> mel subband envelopes -> log + mean removal ->
// DFT along the frame axis -> squared magnitude, row-normalized.
ModulationSpectrum modulation_spectrum(const FrameGrid& grid, const MelFilterbank& fb);

ModulationFeatures modulation_features(const ModulationSpectrum& ms);

}  // namespace voxpath

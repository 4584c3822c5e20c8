#pragma once

#include "voxpath/common.hpp"
#include "voxpath/modspec.hpp"

namespace voxpath {

// Truncated gammatone impulse responses, mel-spaced centers, order 4.
// Each response is L2-normalized.
struct GammatoneBank {
    std::size_t n_filters = 0;
    std::size_t len = 0;  // samples per impulse response
    double rate = 0.0;
    int order = 4;
    std::vector<std::vector<double>> impulse;  // P x len
    std::vector<double> centers;               // Hz
    std::vector<double> bandwidths;            // b, Hz
};

// Second-order resonance filter, poles at radius 0.9.
struct ResonanceFilter {
    double center_hz = 0.0;
    double b0 = 0.1, b1 = 0.0, b2 = -0.09;
    double a1 = 0.0, a2 = 0.81;  // y[n] = b*x - a1 y[n-1] - a2 y[n-2]
};

struct IccMatrix {
    std::vector<std::vector<double>> xi_matrix;  // P x Q
    std::vector<double> xi;                      // length P
};

struct IccFeatures {
    IccMatrix matrix;
    double icer = 0.0;
    double rphic = 0.0;
};

// b = 24.7 (4.37e-3 f_c + 1)
double gammatone_bandwidth(double center_hz);

GammatoneBank gammatone_bank(std::size_t n_filters, double rate, std::size_t len);

// Q filters with centers exponentially spaced 12..107 Hz; env_rate is the
// sampling rate of the axis they are applied along.
std::vector<ResonanceFilter> resonance_bank(std::size_t q_count, double env_rate);

// Run a resonance filter over a sequence from zero initial state.
std::vector<double> resonance_apply(const ResonanceFilter& f, const std::vector<double>& x);

IccFeatures icc_features(const FrameGrid& grid, const GammatoneBank& gb);

}  // namespace voxpath

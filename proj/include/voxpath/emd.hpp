#pragma once

#include "voxpath/common.hpp"

namespace voxpath {

// Ordered intrinsic mode functions plus residual; imfs + residual sum back
// to the decomposed input.
struct ImfSet {
    std::vector<std::vector<double>> imfs;
    std::vector<double> residual;

    std::size_t count() const { return imfs.size(); }
};

// Sifting with cubic-spline envelopes through mirrored extrema.
// Stops a sift at SD < 0.2 or 10 iterations; stops decomposing when the
// residual has fewer than 3 extrema or 12 IMFs were produced.
ImfSet emd(const std::vector<double>& sig);

enum class ImfParam { tkeo, seo, she, re, zcr };

const char* imf_param_name(ImfParam p);

// SNR = sum_{i>=4} mu_i / sum_{i<=3} mu_i over per-IMF parameters.
double imf_snr(const ImfSet& set, ImfParam param);
// NSR = sum_{i<=2} mu_i / sum_{i>=3} mu_i over ln(|f_i|+eps)-transformed IMFs.
double imf_nsr(const ImfSet& set, ImfParam param);

// Petrosian-form fractal dimension of the first IMF.
double imf_fd(const ImfSet& set);

// Cepstral peak prominence of the first IMF's real cepstrum.
double imf_cpp(const ImfSet& set, double rate, double f_max = 350.0);

// Glottal-to-noise excitation ratio of one frame: first IMF, LPC-13 inverse
// filtering, 1000 Hz Hilbert envelopes, peak normalized cross-correlation
// over all band pairs. Values in [0,1]; silence yields missing.
double imf_gne_frame(const std::vector<double>& frame, double rate);
// Same computation on an already extracted first IMF.
double gne_from_first_imf(const std::vector<double>& f1, double rate);

// Interior extrema located by slope sign changes (plateau start wins).
void find_extrema(const std::vector<double>& x, std::vector<std::size_t>& maxima,
                  std::vector<std::size_t>& minima);

// Linear-prediction coefficients via autocorrelation + Levinson-Durbin.
// Returns a[1..order]; empty when the input is degenerate.
std::vector<double> lpc(const std::vector<double>& x, std::size_t order);

}  // namespace voxpath

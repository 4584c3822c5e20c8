#pragma once

#include <complex>
#include <vector>

#include "voxpath/common.hpp"

namespace voxpath {

// Guard added to magnitudes before the log in both cepstra.
inline constexpr double kLogGuard = 1e-12;

struct RegressionLine {
    double slope = 0.0;
    double offset = 0.0;     // intercept at x = 0
    double rss_error = 0.0;  // residual sum of squares over the fit range

    double at(double x) const { return offset + slope * x; }
};

// Forward DFT, e^{-j2pi kn/N} kernel, no 1/N factor.
std::vector<std::complex<double>> dft(const std::vector<double>& x);
std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& x);

// Squared magnitudes of the forward DFT.
std::vector<double> power_spectrum(const std::vector<double>& x);

// IDFT(ln(|DFT(x)| + eps)), real part.
std::vector<double> real_cepstrum(const std::vector<double>& x);

// IDFT of ln|X| + j*unwrapped phase. Kept complex; the imaginary part is
// only non-trivial when unwrapping breaks the odd phase symmetry.
std::vector<std::complex<double>> complex_cepstrum(const std::vector<double>& x);

// Unwrap a phase sequence in place (pi-jump convention).
void unwrap_phase(std::vector<double>& phase);

// (c[i]-r[i])/c[i] where i is the argmax of c over n = round(rate/f_max)..N-1
// and r the least-squares line over that range. Returns missing when c[i]=0.
double cepstral_peak_prominence(const std::vector<double>& ceps, double rate, double f_max);

// Ordinary least squares of y against the integer abscissae x_start..x_end.
RegressionLine fit_line(const std::vector<double>& y, std::size_t x_start, std::size_t x_end);

// Teager-Kaiser energy: x[n]^2 - x[n-1]x[n+1] at interior samples.
std::vector<double> tkeo(const std::vector<double>& x);
// Squared energy operator: x[n]^2.
std::vector<double> seo(const std::vector<double>& x);
// (1/N) sum |sgn x[n] - sgn x[n-1]| with sgn(0)=0.
double zcr(const std::vector<double>& x);

// Histogram entropies over ceil(sqrt(N)) equal-width bins spanning [min,max].
double shannon_entropy(const std::vector<double>& x);  // bits
double renyi2_entropy(const std::vector<double>& x);   // bits

}  // namespace voxpath

#pragma once

#include <complex>
#include <vector>

namespace voxpath::fft {

using cvec = std::vector<std::complex<double>>;

// In-place complex transform of arbitrary length (radix-2 when the size is a
// power of two, Bluestein otherwise). Forward kernel e^{-j2pi kn/N}, no 1/N;
// the inverse applies 1/N.
void transform(cvec& data, bool inverse);

cvec forward(const std::vector<double>& x);
cvec forward(const cvec& x);
cvec inverse(const cvec& x);

}  // namespace voxpath::fft

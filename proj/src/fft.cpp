#include "voxpath/fft.hpp"

#include <cmath>
#include <cstdint>
#include <mutex>
#include <unordered_map>

namespace voxpath::fft {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Twiddle table for a power-of-two size: w[k] = e^{-j2pi k/n}, k < n/2.
struct Pow2Plan {
    std::size_t n = 0;
    std::vector<std::complex<double>> w;
};

const Pow2Plan& pow2_plan(std::size_t n) {
    thread_local std::unordered_map<std::size_t, Pow2Plan> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Pow2Plan plan;
    plan.n = n;
    plan.w.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        plan.w[k] = {std::cos(ang), std::sin(ang)};
    }
    return cache.emplace(n, std::move(plan)).first->second;
}

// Iterative radix-2 Cooley-Tukey, n a power of two.
void fft_pow2(std::complex<double>* a, std::size_t n, bool inverse) {
    if (n < 2) return;
    const Pow2Plan& plan = pow2_plan(n);

    // bit reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = plan.w[k * step];
                if (inverse) w = std::conj(w);
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Chirp tables for Bluestein at a given size.
struct BluesteinPlan {
    std::size_t n = 0;
    std::size_t m = 0;  // padded power-of-two size >= 2n-1
    std::vector<std::complex<double>> chirp;    // e^{-j pi k^2 / n}
    std::vector<std::complex<double>> kern_f;   // FFT of the wrapped conj chirp
};

const BluesteinPlan& bluestein_plan(std::size_t n) {
    thread_local std::unordered_map<std::size_t, BluesteinPlan> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    BluesteinPlan plan;
    plan.n = n;
    plan.m = next_pow2(2 * n - 1);
    plan.chirp.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the argument small and the table exact
        std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        double ang = -kPi * static_cast<double>(k2) / static_cast<double>(n);
        plan.chirp[k] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> kern(plan.m, {0.0, 0.0});
    kern[0] = std::conj(plan.chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        kern[k] = std::conj(plan.chirp[k]);
        kern[plan.m - k] = std::conj(plan.chirp[k]);
    }
    fft_pow2(kern.data(), plan.m, false);
    plan.kern_f = std::move(kern);
    return cache.emplace(n, std::move(plan)).first->second;
}

void fft_bluestein(std::complex<double>* a, std::size_t n, bool inverse) {
    const BluesteinPlan& plan = bluestein_plan(n);
    std::vector<std::complex<double>> buf(plan.m, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> c = inverse ? std::conj(plan.chirp[k]) : plan.chirp[k];
        buf[k] = a[k] * c;
    }
    fft_pow2(buf.data(), plan.m, false);
    if (inverse) {
        for (std::size_t k = 0; k < plan.m; ++k) buf[k] *= std::conj(plan.kern_f[k]);
    } else {
        for (std::size_t k = 0; k < plan.m; ++k) buf[k] *= plan.kern_f[k];
    }
    fft_pow2(buf.data(), plan.m, true);
    const double scale = 1.0 / static_cast<double>(plan.m);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> c = inverse ? std::conj(plan.chirp[k]) : plan.chirp[k];
        a[k] = buf[k] * c * scale;
    }
}

}  // namespace

void transform(cvec& data, bool inverse) {
    const std::size_t n = data.size();
    if (n < 2) return;
    if (is_pow2(n)) {
        fft_pow2(data.data(), n, inverse);
    } else {
        fft_bluestein(data.data(), n, inverse);
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : data) v *= scale;
    }
}

cvec forward(const std::vector<double>& x) {
    cvec data(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) data[i] = {x[i], 0.0};
    transform(data, false);
    return data;
}

cvec forward(const cvec& x) {
    cvec data = x;
    transform(data, false);
    return data;
}

cvec inverse(const cvec& x) {
    cvec data = x;
    transform(data, true);
    return data;
}

}  // namespace voxpath::fft

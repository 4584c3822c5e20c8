#pragma once

#include <array>

#include "voxpath/common.hpp"

namespace voxpath {

enum class KernelKind {
    heaviside,
    gaussian,
    exponential,
    laplacian,
    circular,
    spherical,
    cauchy,
    triangular,
};

inline constexpr std::array<KernelKind, 8> kAllKernels = {
    KernelKind::heaviside, KernelKind::gaussian,  KernelKind::exponential,
    KernelKind::laplacian, KernelKind::circular,  KernelKind::spherical,
    KernelKind::cauchy,    KernelKind::triangular,
};

const char* kernel_name(KernelKind kind);

// Delay-coordinate embedding: row n = [s[n], s[n+tau], ..., s[n+(m-1)tau]].
struct Embedding {
    std::size_t m = 0;
    std::size_t tau = 0;
    std::vector<std::vector<double>> vectors;
};

Embedding embed(const std::vector<double>& sig, std::size_t m, std::size_t tau);

// Kernel similarity for a pair at distance d with radius r; values in [0,1].
// The Heaviside kernel consumes the Chebyshev distance, all others the
// Euclidean norm of the embedding-vector difference.
double kernel(KernelKind kind, double d, double r);

// Approximate / sample entropy with m=2, tau=1, r = 0.2 * sample std.
// Sample entropy excludes self-matches; a zero match count yields missing.
double approx_entropy(const std::vector<double>& sig, KernelKind kind);
double sample_entropy(const std::vector<double>& sig, KernelKind kind);

// One pass over the pair distances producing AE and SE for every kernel;
// equals the per-kernel operations exactly. first 8 entries AE, last 8 SE,
// both in kAllKernels order.
std::array<double, 16> entropy_all_kernels(const std::vector<double>& sig);

}  // namespace voxpath

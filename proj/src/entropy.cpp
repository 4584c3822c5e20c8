#include "voxpath/entropy.hpp"

#include <cmath>

namespace voxpath {

const char* kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::heaviside: return "heaviside";
        case KernelKind::gaussian: return "gaussian";
        case KernelKind::exponential: return "exponential";
        case KernelKind::laplacian: return "laplacian";
        case KernelKind::circular: return "circular";
        case KernelKind::spherical: return "spherical";
        case KernelKind::cauchy: return "cauchy";
        case KernelKind::triangular: return "triangular";
    }
    return "?";
}

Embedding embed(const std::vector<double>& sig, std::size_t m, std::size_t tau) {
    if (m == 0 || tau == 0) throw std::invalid_argument("embed needs m >= 1 and tau >= 1");
    if (sig.size() <= (m - 1) * tau)
        throw InsufficientDataError("signal too short for the requested embedding");
    const std::size_t count = sig.size() - (m - 1) * tau;
    Embedding e;
    e.m = m;
    e.tau = tau;
    e.vectors.assign(count, std::vector<double>(m));
    for (std::size_t n = 0; n < count; ++n)
        for (std::size_t k = 0; k < m; ++k) e.vectors[n][k] = sig[n + k * tau];
    return e;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Shared by the public kernel() and the entropy inner loops so both paths
// run identical arithmetic.
inline double kernel_eval(KernelKind kind, double d, double r) {
    switch (kind) {
        case KernelKind::heaviside:
            return d <= r ? 1.0 : 0.0;
        case KernelKind::gaussian:
            return std::exp(-(d * d) / (10.0 * r * r));
        case KernelKind::exponential:
            return std::exp(-d / (2.0 * r * r));
        case KernelKind::laplacian:
            return std::exp(-d / r);
        case KernelKind::circular: {
            if (d >= r) return 0.0;
            const double u = d / r;
            return (2.0 / kPi) * (std::acos(u) - u * std::sqrt(1.0 - u * u));
        }
        case KernelKind::spherical: {
            if (d >= r) return 0.0;
            const double u = d / r;
            return 1.0 - 1.5 * u + 0.5 * u * u * u;
        }
        case KernelKind::cauchy:
            return d >= r ? 0.0 : 1.0 / (1.0 + (d * d) / r);
        case KernelKind::triangular:
            return d >= r ? 0.0 : 1.0 - d / r;
    }
    return 0.0;
}

double sample_std(const std::vector<double>& sig) {
    const std::size_t n = sig.size();
    double mean = 0.0;
    for (double v : sig) mean += v;
    mean /= static_cast<double>(n);
    double acc = 0.0;
    for (double v : sig) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(n - 1));
}

// Distance between embedding vectors i and j at level m (tau = 1).
inline double pair_distance(const std::vector<double>& s, std::size_t i, std::size_t j,
                            std::size_t m, bool chebyshev) {
    if (chebyshev) {
        double mx = 0.0;
        for (std::size_t k = 0; k < m; ++k) mx = std::max(mx, std::abs(s[i + k] - s[j + k]));
        return mx;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double d = s[i + k] - s[j + k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

// Phi[m,r] for one kernel: (1/(N-m)) sum_i ln C[i] with C[i] either
// including or excluding the self term. Returns false when some C is zero.
bool phi_level(const std::vector<double>& sig, std::size_t m, double r, KernelKind kind,
               bool exclude_self, double& phi_out) {
    const std::size_t n = sig.size();
    const std::size_t count = n - m + 1;  // embedding vectors, i = 0..N-m
    const double norm = 1.0 / static_cast<double>(n - m);
    const bool cheb = kind == KernelKind::heaviside;

    double phi = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            if (exclude_self && j == i) continue;
            s += kernel_eval(kind, pair_distance(sig, i, j, m, cheb), r);
        }
        if (s == 0.0) return false;
        phi += std::log(s * norm);
    }
    phi_out = phi * norm;
    return true;
}

double radius(const std::vector<double>& sig) {
    if (sig.size() < 6) throw InsufficientDataError("entropy needs a longer signal");
    const double r = 0.2 * sample_std(sig);
    if (r <= 0.0) throw DegenerateInputError("entropy radius is zero (constant signal)");
    return r;
}

constexpr std::size_t kEmbedDim = 2;

}  // namespace

double kernel(KernelKind kind, double d, double r) {
    if (r <= 0.0) throw std::invalid_argument("kernel radius must be positive");
    if (d < 0.0) throw std::invalid_argument("kernel distance must be nonnegative");
    return kernel_eval(kind, d, r);
}

double approx_entropy(const std::vector<double>& sig, KernelKind kind) {
    const double r = radius(sig);
    double phi_m = 0.0, phi_m1 = 0.0;
    if (!phi_level(sig, kEmbedDim, r, kind, false, phi_m)) return missing();
    if (!phi_level(sig, kEmbedDim + 1, r, kind, false, phi_m1)) return missing();
    return phi_m - phi_m1;
}

double sample_entropy(const std::vector<double>& sig, KernelKind kind) {
    const double r = radius(sig);
    double phi_m = 0.0, phi_m1 = 0.0;
    if (!phi_level(sig, kEmbedDim, r, kind, true, phi_m)) return missing();
    if (!phi_level(sig, kEmbedDim + 1, r, kind, true, phi_m1)) return missing();
    return phi_m - phi_m1;
}

std::array<double, 16> entropy_all_kernels(const std::vector<double>& sig) {
    const double r = radius(sig);
    const std::size_t n = sig.size();

    std::array<double, 16> out;

    // per level: accumulate ln-sums for all kernels, AE and SE variants
    std::array<double, 8> phi_incl[2], phi_excl[2];
    std::array<bool, 8> dead_excl[2] = {{}, {}};

    for (int level = 0; level < 2; ++level) {
        const std::size_t m = kEmbedDim + static_cast<std::size_t>(level);
        const std::size_t count = n - m + 1;
        const double norm = 1.0 / static_cast<double>(n - m);
        phi_incl[level].fill(0.0);
        phi_excl[level].fill(0.0);

        for (std::size_t i = 0; i < count; ++i) {
            std::array<double, 8> s_incl{}, s_excl{};
            for (std::size_t j = 0; j < count; ++j) {
                const double d_cheb = pair_distance(sig, i, j, m, true);
                const double d_eucl = pair_distance(sig, i, j, m, false);
                for (std::size_t k = 0; k < 8; ++k) {
                    const KernelKind kind = kAllKernels[k];
                    const double kv = kernel_eval(
                        kind, kind == KernelKind::heaviside ? d_cheb : d_eucl, r);
                    s_incl[k] += kv;
                    if (j != i) s_excl[k] += kv;
                }
            }
            for (std::size_t k = 0; k < 8; ++k) {
                phi_incl[level][k] += std::log(s_incl[k] * norm);
                if (s_excl[k] == 0.0)
                    dead_excl[level][k] = true;
                else
                    phi_excl[level][k] += std::log(s_excl[k] * norm);
            }
        }
        for (std::size_t k = 0; k < 8; ++k) {
            phi_incl[level][k] *= norm;
            phi_excl[level][k] *= norm;
        }
    }

    for (std::size_t k = 0; k < 8; ++k) {
        out[k] = phi_incl[0][k] - phi_incl[1][k];
        out[8 + k] = (dead_excl[0][k] || dead_excl[1][k])
                         ? missing()
                         : phi_excl[0][k] - phi_excl[1][k];
    }
    return out;
}

}  // namespace voxpath

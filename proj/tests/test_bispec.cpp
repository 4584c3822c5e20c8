#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "voxpath/bispec.hpp"
#include "voxpath/fft.hpp"
#include "voxpath/spectral.hpp"

using namespace voxpath;

namespace {

// brute-force triple correlation, written independently of the library path
std::vector<double> naive_gamma(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> g(n * n, 0.0);
    for (std::size_t n1 = 0; n1 < n; ++n1)
        for (std::size_t n2 = 0; n2 < n; ++n2) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += x[i] * x[(i + n1) % n] * x[(i + n2) % n];
            g[n1 * n + n2] = acc / static_cast<double>(n);
        }
    return g;
}

// direct frequency-domain identity B[k1,k2] = (1/N) X[k1] X[k2] X*[(k1+k2) mod N]
std::vector<std::complex<double>> identity_bispectrum(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const auto spec = fft::forward(x);
    std::vector<std::complex<double>> b(n * n);
    for (std::size_t k1 = 0; k1 < n; ++k1)
        for (std::size_t k2 = 0; k2 < n; ++k2)
            b[k1 * n + k2] =
                spec[k1] * spec[k2] * std::conj(spec[(k1 + k2) % n]) / static_cast<double>(n);
    return b;
}

}  // namespace

TEST_CASE("triple correlation closed forms") {
    // constant frame: gamma is the cube everywhere
    const std::vector<double> c(8, 2.0);
    for (double v : triple_correlation(c)) CHECK(v == doctest::Approx(8.0));

    // gamma[0,0] is the mean cube sum
    std::mt19937_64 rng(41);
    const auto x = testutil::uniform_vec(rng, 16);
    const auto g = triple_correlation(x);
    double cube = 0.0;
    for (double v : x) cube += v * v * v;
    CHECK(g[0] == doctest::Approx(cube / 16.0).epsilon(1e-12));
}

TEST_CASE("triple correlation matches the brute-force loop") {
    std::mt19937_64 rng(42);
    const auto x = testutil::uniform_vec(rng, 16);
    const auto got = triple_correlation(x);
    const auto expect = naive_gamma(x);
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("triple correlation is symmetric") {
    std::mt19937_64 rng(43);
    const auto x = testutil::uniform_vec(rng, 20);
    const auto g = triple_correlation(x);
    for (std::size_t a = 0; a < 20; ++a)
        for (std::size_t b = 0; b < 20; ++b)
            CHECK(g[a * 20 + b] == doctest::Approx(g[b * 20 + a]).epsilon(1e-12));
}

TEST_CASE("bispectrum equals the direct DFT identity") {
    std::mt19937_64 rng(44);
    const auto x = testutil::gaussian_vec(rng, 256);
    const auto bs = bispectrum(x);
    const auto expect = identity_bispectrum(x);

    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < bs.values.size(); ++i) {
        err += std::norm(bs.values[i] - expect[i]);
        ref += std::norm(expect[i]);
    }
    CHECK(std::sqrt(err / ref) < 1e-6);

    // symmetry B[k1,k2] = B[k2,k1]
    for (std::size_t a = 0; a < 16; ++a)
        for (std::size_t b = 0; b < 16; ++b)
            CHECK(std::abs(bs.at(a, b) - bs.at(b, a)) < 1e-6);
}

TEST_CASE("quadratic phase coupling dominates the uncoupled control") {
    // mean bispectrum over segments with locked vs random phase triples
    const std::size_t n = 64, segments = 64;
    const std::size_t k1 = 6, k2 = 9;
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * testutil::kPi);

    auto mean_bispec_peak = [&](bool coupled) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t s = 0; s < segments; ++s) {
            const double p1 = phase(rng), p2 = phase(rng);
            const double p3 = coupled ? p1 + p2 : phase(rng);
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double t = 2.0 * testutil::kPi * static_cast<double>(i) / n;
                x[i] = std::cos(t * k1 + p1) + std::cos(t * k2 + p2) +
                       std::cos(t * (k1 + k2) + p3);
            }
            acc += bispectrum(x).at(k1, k2);
        }
        return std::abs(acc) / static_cast<double>(segments);
    };

    CHECK(mean_bispec_peak(true) > 10.0 * mean_bispec_peak(false));
}

TEST_CASE("bicepstrum is symmetric and finite") {
    std::mt19937_64 rng(46);
    const auto x = testutil::uniform_vec(rng, 32);
    const auto bc = bicepstrum(x);
    for (std::size_t a = 0; a < 32; ++a)
        for (std::size_t b = 0; b < 32; ++b) {
            CHECK(std::isfinite(bc.real_at(a, b)));
            CHECK(bc.real_at(a, b) == doctest::Approx(bc.real_at(b, a)).epsilon(1e-9));
        }
}

TEST_CASE("identical frames collapse the coherence features") {
    std::mt19937_64 rng(47);
    const auto frame = testutil::uniform_vec(rng, 32);
    const std::vector<std::vector<double>> frames(5, frame);

    const auto analysis = analyze_bispec(frames, 16000.0);
    CHECK(analysis.features.bcii == doctest::Approx(0.0).epsilon(1e-9));
    for (double v : analysis.distances.bcmd) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
    for (double v : analysis.distances.bcpd) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
    for (double v : analysis.distances.bmd) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
    for (double v : analysis.distances.bpd) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(analysis.interference.bcmii == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(analysis.interference.bcpii == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("single frame yields zero BCII") {
    std::mt19937_64 rng(48);
    const std::vector<std::vector<double>> frames(1, testutil::uniform_vec(rng, 16));
    CHECK(analyze_bispec(frames, 16000.0).features.bcii == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("LFEBC and HFEBC partition to one") {
    std::mt19937_64 rng(49);
    std::vector<std::vector<double>> frames;
    for (int m = 0; m < 4; ++m) frames.push_back(testutil::uniform_vec(rng, 64));
    const auto feats = bicepstral_features(frames, 16000.0);
    CHECK(feats.lfebc + feats.hfebc == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(feats.lfebc >= 0.0);
    CHECK(feats.hfebc >= 0.0);
}

TEST_CASE("gain between frames leaves BPD at zero") {
    std::mt19937_64 rng(50);
    const auto base = testutil::uniform_vec(rng, 32);
    std::vector<double> scaled(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) scaled[i] = 2.0 * base[i];

    const auto dist = bicepstral_distances({base, scaled});
    REQUIRE(dist.bpd.size() == 1);
    // |B| scales by 8, phases are identical
    CHECK(dist.bpd[0] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("bispectral distances match a naive recomputation") {
    std::mt19937_64 rng(51);
    const auto f0 = testutil::uniform_vec(rng, 16);
    const auto f1 = testutil::uniform_vec(rng, 16);
    const auto dist = bicepstral_distances({f0, f1});

    const auto b0 = bispectrum(f0), b1 = bispectrum(f1);
    const auto c0 = bicepstrum_of(b0), c1 = bicepstrum_of(b1);
    double bcmd = 0.0, bcpd = 0.0, bmd = 0.0, bpd = 0.0;
    for (std::size_t i = 0; i < b0.values.size(); ++i) {
        bcmd += std::abs(std::abs(c1.complex_variant[i]) - std::abs(c0.complex_variant[i]));
        bcpd += std::abs(std::arg(c1.complex_variant[i]) - std::arg(c0.complex_variant[i]));
        bmd += std::abs(std::abs(b1.values[i]) - std::abs(b0.values[i]));
        bpd += std::abs(std::arg(b1.values[i]) - std::arg(b0.values[i]));
    }
    CHECK(dist.bcmd[0] == doctest::Approx(bcmd).epsilon(1e-9));
    CHECK(dist.bcpd[0] == doctest::Approx(bcpd).epsilon(1e-9));
    CHECK(dist.bmd[0] == doctest::Approx(bmd).epsilon(1e-9));
    CHECK(dist.bpd[0] == doctest::Approx(bpd).epsilon(1e-9));
}

TEST_CASE("interference indices match the printed normalization") {
    // two frames: index = |eta1 - eta0| / ((N^2-1) max eta), eta recomputed
    // here from the per-frame cepstra and bicepstrum diagonals
    std::mt19937_64 rng(52);
    const std::size_t n = 16;
    std::vector<std::vector<double>> frames;
    frames.push_back(testutil::uniform_vec(rng, n));
    frames.push_back(testutil::uniform_vec(rng, n));
    const auto inter = bicepstrum_interference(frames);

    auto eta_pair = [&](const std::vector<double>& frame) {
        const auto bc = bicepstrum(frame);
        const auto ceps = real_cepstrum(frame);
        const auto cceps = complex_cepstrum(frame);
        double em = 0.0, ep = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dm = std::abs(ceps[i]) - std::abs(bc.real_at(i, i));
            em += dm * dm;
            const double dp = std::arg(cceps[i]) - std::arg(bc.complex_at(i, i));
            ep += dp * dp;
        }
        return std::pair{em, ep};
    };
    const auto [em0, ep0] = eta_pair(frames[0]);
    const auto [em1, ep1] = eta_pair(frames[1]);
    const double nn1 = static_cast<double>(n * n) - 1.0;
    CHECK(inter.bcmii ==
          doctest::Approx(std::abs(em1 - em0) / (nn1 * std::max(em0, em1))).epsilon(1e-9));
    CHECK(inter.bcpii ==
          doctest::Approx(std::abs(ep1 - ep0) / (nn1 * std::max(ep0, ep1))).epsilon(1e-9));
}

TEST_CASE("noise raises BCMII on a synthetic vowel pair") {
    std::mt19937_64 rng(53);
    testutil::VowelSpec clean_spec;
    clean_spec.snr_db = 60.0;
    clean_spec.seconds = 0.2;
    const auto clean = testutil::synth_vowel(clean_spec, rng);

    std::mt19937_64 rng2(53);
    testutil::VowelSpec noisy_spec = clean_spec;
    noisy_spec.snr_db = 5.0;
    const auto noisy = testutil::synth_vowel(noisy_spec, rng2);

    auto bcmii_of = [](const Signal& sig) {
        std::vector<std::vector<double>> frames;
        const std::size_t flen = 128, hop = 64;
        for (std::size_t start = 0; start + flen <= sig.samples.size(); start += hop)
            frames.emplace_back(sig.samples.begin() + start, sig.samples.begin() + start + flen);
        return bicepstrum_interference(frames).bcmii;
    };
    CHECK(bcmii_of(noisy) > bcmii_of(clean));
}

TEST_CASE("bispec_frame_len caps at a power of two") {
    CHECK(bispec_frame_len(400) == 256);
    CHECK(bispec_frame_len(512) == 512);
    CHECK(bispec_frame_len(600) == 512);
    CHECK(bispec_frame_len(100) == 64);
}

#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "voxpath/audio.hpp"
#include "voxpath/fft.hpp"

using namespace voxpath;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

// hand-rolled 16-bit PCM writer independent of the library writer
void write_pcm16(const std::string& path, const std::vector<std::int16_t>& samples,
                 std::uint16_t channels, std::uint32_t rate) {
    std::ofstream f(path, std::ios::binary);
    const std::uint32_t data_len = static_cast<std::uint32_t>(samples.size()) * 2;
    auto u32 = [&](std::uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
    auto u16 = [&](std::uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); };
    f.write("RIFF", 4);
    u32(36 + data_len);
    f.write("WAVE", 4);
    f.write("fmt ", 4);
    u32(16);
    u16(1);
    u16(channels);
    u32(rate);
    u32(rate * channels * 2);
    u16(channels * 2);
    u16(16);
    f.write("data", 4);
    u32(data_len);
    f.write(reinterpret_cast<const char*>(samples.data()), data_len);
}

}  // namespace

TEST_CASE("read_wav scales 16-bit PCM") {
    const auto path = temp_path("vx_pcm16.wav");
    write_pcm16(path, {0, 16384, -16384}, 1, 16000);
    const Signal sig = read_wav(path);
    CHECK(sig.rate == 16000.0);
    REQUIRE(sig.samples.size() == 3);
    CHECK(sig.samples[0] == doctest::Approx(0.0));
    CHECK(sig.samples[1] == doctest::Approx(0.5));
    CHECK(sig.samples[2] == doctest::Approx(-0.5));
}

TEST_CASE("read_wav averages channels") {
    const auto path = temp_path("vx_stereo.wav");
    // frames: (1.0, 0.0), (1.0, 0.0) -> mono 0.5, 0.5
    write_pcm16(path, {32767, 0, 32767, 0}, 2, 8000);
    const Signal sig = read_wav(path);
    REQUIRE(sig.samples.size() == 2);
    CHECK(sig.samples[0] == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(sig.samples[1] == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("read_wav rejects a truncated header") {
    const auto path = temp_path("vx_trunc.wav");
    std::ofstream(path, std::ios::binary) << "RIFFxx";
    CHECK_THROWS_AS(read_wav(path), FormatError);
}

TEST_CASE("read_wav rejects unsupported codecs") {
    const auto path = temp_path("vx_alaw.wav");
    std::ofstream f(path, std::ios::binary);
    auto u32 = [&](std::uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
    auto u16 = [&](std::uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); };
    f.write("RIFF", 4);
    u32(40);
    f.write("WAVE", 4);
    f.write("fmt ", 4);
    u32(16);
    u16(6);  // A-law
    u16(1);
    u32(8000);
    u32(8000);
    u16(1);
    u16(8);
    f.write("data", 4);
    u32(4);
    u32(0);
    f.close();
    CHECK_THROWS_AS(read_wav(path), UnsupportedError);
}

TEST_CASE("wav round trip through the library writer") {
    const auto path = temp_path("vx_roundtrip.wav");
    std::mt19937_64 rng(7);
    Signal sig{testutil::uniform_vec(rng, 256, -0.9, 0.9), 16000.0};
    write_wav(path, sig);
    const Signal back = read_wav(path);
    REQUIRE(back.samples.size() == sig.samples.size());
    for (std::size_t i = 0; i < sig.samples.size(); ++i)
        CHECK(back.samples[i] == doctest::Approx(sig.samples[i]).epsilon(1e-3));
}

TEST_CASE("resample is the identity at equal rates") {
    std::mt19937_64 rng(3);
    Signal sig{testutil::uniform_vec(rng, 100), 16000.0};
    const Signal out = resample(sig, 16000.0);
    CHECK(out.samples == sig.samples);
}

TEST_CASE("resample 48k -> 16k tracks an analytic sine") {
    const double f = 1000.0;
    Signal in{testutil::sine(4800, f, 48000.0), 48000.0};
    const Signal out = resample(in, 16000.0);
    REQUIRE(out.samples.size() == 1600);
    for (std::size_t n = 32; n + 32 < out.samples.size(); ++n) {
        const double expect = std::sin(2.0 * testutil::kPi * f * static_cast<double>(n) / 16000.0);
        CHECK(std::abs(out.samples[n] - expect) < 1e-3);
    }
}

TEST_CASE("resample halves the length at a 2:1 ratio") {
    Signal in{std::vector<double>(100, 0.25), 32000.0};
    const Signal out = resample(in, 16000.0);
    CHECK(std::abs(static_cast<long>(out.samples.size()) - 50) <= 1);
}

TEST_CASE("resample keeps a tone at its frequency") {
    // DFT peak of the output maps back to the input frequency within a bin
    const double f = 440.0;
    Signal in{testutil::sine(32000, f, 32000.0), 32000.0};
    const Signal out = resample(in, 16000.0);
    auto spec = fft::forward(out.samples);
    std::size_t peak = 1;
    for (std::size_t k = 1; k < spec.size() / 2; ++k)
        if (std::abs(spec[k]) > std::abs(spec[peak])) peak = k;
    const double peak_hz = static_cast<double>(peak) * 16000.0 / static_cast<double>(spec.size());
    CHECK(std::abs(peak_hz - f) <= 16000.0 / static_cast<double>(spec.size()));
}

TEST_CASE("framing produces the specified rows") {
    Signal sig{{1, 2, 3, 4}, 100.0};
    const FrameGrid grid = make_frames_n(sig, 2, 2, Window::rectangular);
    REQUIRE(grid.frame_count() == 2);
    CHECK(grid.frames[0] == std::vector<double>{1, 2});
    CHECK(grid.frames[1] == std::vector<double>{3, 4});

    Signal sig2{{1, 2, 3}, 100.0};
    const FrameGrid grid2 = make_frames_n(sig2, 2, 1, Window::rectangular);
    REQUIRE(grid2.frame_count() == 2);
    CHECK(grid2.frames[0] == std::vector<double>{1, 2});
    CHECK(grid2.frames[1] == std::vector<double>{2, 3});
}

TEST_CASE("framing rejects too-short signals") {
    Signal sig{{1, 2, 3}, 100.0};
    CHECK_THROWS_AS(make_frames_n(sig, 4, 2, Window::rectangular), InsufficientDataError);
}

TEST_CASE("rectangular non-overlapping frames concatenate to a prefix") {
    std::mt19937_64 rng(11);
    Signal sig{testutil::uniform_vec(rng, 103), 1000.0};
    const FrameGrid grid = make_frames_n(sig, 10, 10, Window::rectangular);
    std::size_t i = 0;
    for (const auto& frame : grid.frames)
        for (double v : frame) CHECK(v == sig.samples[i++]);
    CHECK(i == 100);
}

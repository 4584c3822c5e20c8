#include "voxpath/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace voxpath {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint32_t rd_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t rd_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

Signal read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open " + path);
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
    if (raw.size() < 12 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
        std::memcmp(raw.data() + 8, "WAVE", 4) != 0)
        throw FormatError("not a RIFF/WAVE file: " + path);

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    const unsigned char* data = nullptr;
    std::size_t data_len = 0;
    bool have_fmt = false;

    std::size_t pos = 12;
    while (pos + 8 <= raw.size()) {
        const unsigned char* hdr = raw.data() + pos;
        std::uint32_t chunk_len = rd_u32(hdr + 4);
        const unsigned char* body = hdr + 8;
        if (pos + 8 + chunk_len > raw.size()) {
            // tolerate a truncated final data chunk only
            if (std::memcmp(hdr, "data", 4) != 0)
                throw FormatError("truncated chunk in " + path);
            chunk_len = static_cast<std::uint32_t>(raw.size() - pos - 8);
        }
        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (chunk_len < 16) throw FormatError("fmt chunk too short in " + path);
            format = rd_u16(body);
            channels = rd_u16(body + 2);
            rate = rd_u32(body + 4);
            bits = rd_u16(body + 14);
            if (format == 0xFFFE) {  // WAVE_FORMAT_EXTENSIBLE
                if (chunk_len < 40) throw FormatError("extensible fmt chunk too short in " + path);
                format = rd_u16(body + 24);  // first two bytes of the SubFormat GUID
            }
            have_fmt = true;
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            data = body;
            data_len = chunk_len;
        }
        pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word aligned
    }

    if (!have_fmt || data == nullptr) throw FormatError("missing fmt/data chunk in " + path);
    if (channels == 0 || rate == 0) throw FormatError("bad fmt fields in " + path);
    if (format != 1 && format != 3)
        throw UnsupportedError("unsupported codec tag " + std::to_string(format) + " in " + path);
    if (format == 1 && bits != 8 && bits != 16 && bits != 24 && bits != 32)
        throw UnsupportedError("unsupported PCM depth " + std::to_string(bits) + " in " + path);
    if (format == 3 && bits != 32)
        throw UnsupportedError("unsupported float depth " + std::to_string(bits) + " in " + path);

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t stride = bytes_per_sample * channels;
    const std::size_t n_frames = data_len / stride;
    if (n_frames == 0) throw FormatError("empty data chunk in " + path);

    Signal sig;
    sig.rate = static_cast<double>(rate);
    sig.samples.resize(n_frames);
    const double inv_channels = 1.0 / channels;

    for (std::size_t i = 0; i < n_frames; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
            const unsigned char* p = data + i * stride + c * bytes_per_sample;
            double v = 0.0;
            if (format == 3) {
                float fv;
                std::memcpy(&fv, p, 4);
                v = fv;
            } else if (bits == 8) {
                v = (static_cast<int>(p[0]) - 128) / 128.0;
            } else if (bits == 16) {
                std::int16_t s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
                v = s / 32768.0;
            } else if (bits == 24) {
                std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
                if (s & 0x800000) s |= ~0xFFFFFF;
                v = s / 8388608.0;
            } else {
                std::int32_t s;
                std::memcpy(&s, p, 4);
                v = s / 2147483648.0;
            }
            acc += v;
        }
        sig.samples[i] = acc * inv_channels;
    }
    return sig;
}

void write_wav(const std::string& path, const Signal& sig) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot create " + path);
    const std::uint32_t n = static_cast<std::uint32_t>(sig.samples.size());
    const std::uint32_t data_len = n * 2;
    auto w_u32 = [&](std::uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
    auto w_u16 = [&](std::uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); };
    f.write("RIFF", 4);
    w_u32(36 + data_len);
    f.write("WAVE", 4);
    f.write("fmt ", 4);
    w_u32(16);
    w_u16(1);  // PCM
    w_u16(1);  // mono
    w_u32(static_cast<std::uint32_t>(sig.rate));
    w_u32(static_cast<std::uint32_t>(sig.rate) * 2);
    w_u16(2);
    w_u16(16);
    f.write("data", 4);
    w_u32(data_len);
    for (double v : sig.samples) {
        double c = std::clamp(v, -1.0, 1.0);
        std::int16_t s = static_cast<std::int16_t>(std::lrint(c * 32767.0));
        f.write(reinterpret_cast<const char*>(&s), 2);
    }
}

namespace {

// Kaiser-windowed sinc tap. half_width in input samples.
double kaiser_sinc(double t, double cutoff, double half_width, double beta, double i0_beta) {
    double u = t / half_width;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    double win = std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - u * u)) / i0_beta;
    double arg = kPi * cutoff * t;
    double s = (std::abs(arg) < 1e-12) ? 1.0 : std::sin(arg) / arg;
    return cutoff * s * win;
}

}  // namespace

Signal resample(const Signal& sig, double target_rate) {
    if (target_rate <= 0.0) throw std::invalid_argument("target rate must be positive");
    if (sig.rate <= 0.0) throw std::invalid_argument("signal rate must be positive");
    if (sig.rate == target_rate) return sig;

    const double ratio = target_rate / sig.rate;
    const std::size_t in_len = sig.samples.size();
    const std::size_t out_len =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(in_len * ratio)));

    constexpr int kTaps = 32;
    constexpr double kBeta = 8.0;
    const double half_width = kTaps / 2.0;                 // 16 input samples each side
    const double cutoff = std::min(1.0, ratio) * 0.97;     // leave headroom below Nyquist
    const double i0_beta = std::cyl_bessel_i(0.0, kBeta);

    Signal out;
    out.rate = target_rate;
    out.samples.resize(out_len);

    for (std::size_t n = 0; n < out_len; ++n) {
        const double center = static_cast<double>(n) / ratio;  // position in input samples
        const long first = static_cast<long>(std::ceil(center - half_width));
        const long last = static_cast<long>(std::floor(center + half_width));
        double acc = 0.0;
        for (long m = first; m <= last; ++m) {
            if (m < 0 || m >= static_cast<long>(in_len)) continue;
            acc += sig.samples[static_cast<std::size_t>(m)] *
                   kaiser_sinc(static_cast<double>(m) - center, cutoff, half_width, kBeta, i0_beta);
        }
        out.samples[n] = acc;
    }
    return out;
}

FrameGrid make_frames_n(const Signal& sig, std::size_t frame_len, std::size_t hop, Window window) {
    if (frame_len == 0 || hop == 0) throw std::invalid_argument("frame_len and hop must be positive");
    if (hop > frame_len) throw std::invalid_argument("hop must not exceed frame_len");
    if (sig.samples.size() < frame_len)
        throw InsufficientDataError("signal shorter than one frame");

    FrameGrid grid;
    grid.frame_len = frame_len;
    grid.hop = hop;
    grid.window = window;
    grid.rate = sig.rate;

    std::vector<double> win(frame_len, 1.0);
    if (window == Window::hamming && frame_len > 1) {
        for (std::size_t n = 0; n < frame_len; ++n)
            win[n] = 0.54 - 0.46 * std::cos(2.0 * kPi * n / (frame_len - 1));
    }

    const std::size_t m_count = (sig.samples.size() - frame_len) / hop + 1;
    grid.frames.resize(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        auto& row = grid.frames[m];
        row.resize(frame_len);
        const double* src = sig.samples.data() + m * hop;
        for (std::size_t n = 0; n < frame_len; ++n) row[n] = src[n] * win[n];
    }
    return grid;
}

FrameGrid make_frames(const Signal& sig, double frame_ms, double hop_ms, Window window) {
    const auto frame_len = static_cast<std::size_t>(std::lround(frame_ms * 1e-3 * sig.rate));
    const auto hop = static_cast<std::size_t>(std::lround(hop_ms * 1e-3 * sig.rate));
    return make_frames_n(sig, frame_len, hop, window);
}

}  // namespace voxpath

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace voxpath {

// Undefined feature values are carried as quiet NaN and serialized as
// empty CSV cells. Every consumer must go through is_missing().
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

inline double missing() { return kMissing; }

// Error taxonomy. All derive from std::runtime_error so callers that do
// not care about the category can catch one type.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};
struct InsufficientDataError : std::runtime_error {
    explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};
struct DegenerateInputError : std::runtime_error {
    explicit DegenerateInputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mono waveform plus its sampling rate. The universal pipeline input.
struct Signal {
    std::vector<double> samples;
    double rate = 0.0;  // Hz

    std::size_t size() const { return samples.size(); }
};

enum class Window { hamming, rectangular };

// Windowed segmentation of a signal. Row m covers samples
// [m*hop, m*hop + frame_len) multiplied pointwise by the window.
struct FrameGrid {
    std::size_t frame_len = 0;  // samples
    std::size_t hop = 0;        // samples (the step L)
    Window window = Window::hamming;
    double rate = 0.0;          // Hz of the underlying signal
    std::vector<std::vector<double>> frames;

    std::size_t frame_count() const { return frames.size(); }
    // Frames per second along the m axis.
    double frame_rate() const { return rate / static_cast<double>(hop); }
};

}  // namespace voxpath

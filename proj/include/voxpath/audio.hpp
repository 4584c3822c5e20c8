#pragma once

#include <string>

#include "voxpath/common.hpp"

namespace voxpath {

// RIFF/WAVE reader. PCM 8/16/24/32-bit and float32, little-endian.
// Multichannel input is averaged to mono; samples land in [-1, 1].
Signal read_wav(const std::string& path);

// 16-bit PCM writer, mono. Used by the test fixtures and synth tooling.
void write_wav(const std::string& path, const Signal& sig);

// Windowed-sinc resampler (Kaiser window, beta=8, 32 taps per phase).
// Returns the input unchanged when the rates already agree.
Signal resample(const Signal& sig, double target_rate);

// Segment a signal into overlapping frames. frame_ms/hop_ms are converted
// to sample counts at the signal rate; each row is multiplied by the window.
FrameGrid make_frames(const Signal& sig, double frame_ms, double hop_ms, Window window);
FrameGrid make_frames_n(const Signal& sig, std::size_t frame_len, std::size_t hop, Window window);

}  // namespace voxpath

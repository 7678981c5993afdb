#pragma once

#include "countem/types.hpp"

#include <string>

namespace countem {

struct WavData {
    Vec samples;  // mono, [-1, 1]
    int sample_rate = 0;
};

/// RIFF WAV, PCM 16-bit signed little-endian, mono.
void write_wav(const std::string& path, const Vec& samples, int sample_rate);
WavData read_wav(const std::string& path);

}  // namespace countem

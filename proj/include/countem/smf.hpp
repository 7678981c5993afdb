#pragma once

#include "countem/events.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace countem {

/// Parse failure with the byte offset where the problem was detected.
class SmfError : public std::runtime_error {
public:
    SmfError(std::string message, std::size_t offset)
        : std::runtime_error(message + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct SmfParseResult {
    EventTrack track;
    int dropped_out_of_range = 0;  // note-ons outside MIDI [21, 108]
    int dropped_duplicates = 0;    // identical (onset, pitch) collisions
};

/// Reads a Standard MIDI File (format 0 or 1). Note-ons with velocity > 0
/// become events; note-offs and zero-velocity note-ons are ignored. Ticks
/// are converted to seconds through the merged tempo map (120 BPM before
/// the first tempo meta-event). duration_s = last onset + 1 s.
SmfParseResult parse_smf(const std::vector<std::uint8_t>& bytes);

}  // namespace countem

#pragma once

#include "countem/events.hpp"
#include "countem/types.hpp"

namespace countem {

/// Uniform time quantization shared by features, posteriorgrams and labels.
/// Frame t covers [t*frame_len_s, (t+1)*frame_len_s).
struct FrameGrid {
    double frame_len_s = kDefaultFrameLenS;
    Index frame_count = 0;
    Index pitch_count = kDefaultPitchCount;

    static FrameGrid covering(const EventTrack& track,
                              double frame_len_s = kDefaultFrameLenS) {
        return {frame_len_s, frames_for(track.duration_s, frame_len_s),
                track.pitch_count};
    }
    friend bool operator==(const FrameGrid&, const FrameGrid&) = default;
};

/// Predicted note-onset probabilities, one row per frame, values in [0, 1].
struct Posteriorgram {
    FrameGrid grid;
    Mat values;  // frame_count x pitch_count
};

/// Binary onset labels on the same grid (multi-hot rows).
struct LabelMatrix {
    FrameGrid grid;
    MatU8 values;  // frame_count x pitch_count, entries in {0, 1}

    static LabelMatrix zero(const FrameGrid& g) {
        return {g, MatU8::Zero(g.frame_count, g.pitch_count)};
    }
};

struct RasterizeResult {
    LabelMatrix labels;
    int collapsed = 0;  // same-pitch onsets that shared a frame
};

/// Y[t,p] = 1 iff some pitch-p event starts in frame t. Same-frame
/// same-pitch onsets collapse to a single 1 (counted in `collapsed`).
/// Throws std::out_of_range for onsets beyond the grid extent.
RasterizeResult events_to_labels(const EventTrack& track, const FrameGrid& grid);

/// One event per 1-entry, onset at the frame center.
EventTrack labels_to_events(const LabelMatrix& labels);

/// Shift label columns by `semitones` pitch indices (positive = up).
/// Entries shifted outside [0, P) are dropped.
LabelMatrix transpose_labels(const LabelMatrix& labels, int semitones);

/// Transpose all event pitches; throws std::out_of_range if any pitch leaves
/// [0, pitch_count).
EventTrack transpose_events(const EventTrack& track, int semitones);

}  // namespace countem

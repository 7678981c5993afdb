#include "countem/grid.hpp"

#include <stdexcept>

namespace countem {

RasterizeResult events_to_labels(const EventTrack& track, const FrameGrid& grid) {
    RasterizeResult result{LabelMatrix::zero(grid), 0};
    for (const NoteEvent& e : track.events) {
        const Index t = frame_of(e.onset_s, grid.frame_len_s);
        if (t < 0 || t >= grid.frame_count)
            throw std::out_of_range("events_to_labels: onset beyond grid extent");
        if (e.pitch < 0 || e.pitch >= grid.pitch_count)
            throw std::out_of_range("events_to_labels: pitch beyond grid extent");
        auto& cell = result.labels.values(t, e.pitch);
        if (cell) ++result.collapsed;
        cell = 1;
    }
    return result;
}

EventTrack labels_to_events(const LabelMatrix& labels) {
    EventTrack track;
    track.pitch_count = static_cast<int>(labels.grid.pitch_count);
    track.duration_s = static_cast<double>(labels.grid.frame_count) * labels.grid.frame_len_s;
    if (track.duration_s <= 0.0) track.duration_s = labels.grid.frame_len_s;
    for (Index t = 0; t < labels.values.rows(); ++t)
        for (Index p = 0; p < labels.values.cols(); ++p)
            if (labels.values(t, p))
                track.events.push_back(
                    {(static_cast<double>(t) + 0.5) * labels.grid.frame_len_s,
                     static_cast<int>(p), std::nullopt});
    track.normalize();
    return track;
}

LabelMatrix transpose_labels(const LabelMatrix& labels, int semitones) {
    LabelMatrix out = LabelMatrix::zero(labels.grid);
    const Index P = labels.grid.pitch_count;
    for (Index p = 0; p < P; ++p) {
        const Index q = p + semitones;
        if (q < 0 || q >= P) continue;
        out.values.col(q) = labels.values.col(p);
    }
    return out;
}

EventTrack transpose_events(const EventTrack& track, int semitones) {
    EventTrack out = track;
    for (NoteEvent& e : out.events) {
        e.pitch += semitones;
        if (e.pitch < 0 || e.pitch >= track.pitch_count)
            throw std::out_of_range("transpose_events: pitch leaves range");
    }
    out.normalize();
    return out;
}

}  // namespace countem

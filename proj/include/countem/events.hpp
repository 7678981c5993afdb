#pragma once

#include "countem/types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace countem {

/// A note onset. Offsets and durations are out of scope; velocity is
/// informational only and never affects supervision or metrics.
struct NoteEvent {
    double onset_s = 0.0;
    int pitch = 0;  // pitch index, 0 = lowest supported pitch
    std::optional<int> velocity;

    friend bool operator==(const NoteEvent& a, const NoteEvent& b) {
        return a.onset_s == b.onset_s && a.pitch == b.pitch;
    }
};

/// Symbolic track: events sorted by (onset_s, pitch), all onsets inside
/// [0, duration_s), no duplicate (onset, pitch) pairs.
struct EventTrack {
    std::vector<NoteEvent> events;
    double duration_s = 0.0;
    int pitch_count = kDefaultPitchCount;

    /// Sorts, checks invariants; throws std::invalid_argument on violation.
    void normalize();
};

/// Non-overlapping counting windows; hop equals window length.
struct WindowSpec {
    std::optional<double> window_len_s;  // nullopt = full track

    static WindowSpec full_track() { return WindowSpec{std::nullopt}; }
    static WindowSpec of(double len_s) { return WindowSpec{len_s}; }
    bool is_full_track() const { return !window_len_s.has_value(); }
    void validate() const;
};

struct Window {
    double start_s = 0.0;
    double end_s = 0.0;
};

/// Per-window note-onset counts per pitch: the weak label.
struct Histogram {
    VecI counts;  // length = pitch_count
    double window_start_s = 0.0;
    double window_end_s = 0.0;

    Index pitch_count() const { return counts.size(); }
    std::int64_t total() const { return counts.sum(); }
};

/// Tile [0, duration) with half-open windows; the last one may be shorter.
/// FULL_TRACK yields exactly one window.
std::vector<Window> segment(const EventTrack& track, const WindowSpec& spec);

/// Same tiling, but every boundary is snapped down to a frame edge and the
/// final end is rounded up to cover the whole frame grid. Guarantees each
/// frame of the grid lands in exactly one window.
std::vector<Window> segment_to_frames(const EventTrack& track,
                                      const WindowSpec& spec,
                                      double frame_len_s);

/// Events of `track` falling in window w (onset in [start, end)).
std::vector<NoteEvent> events_in_window(const EventTrack& track, const Window& w);

/// One histogram per window of `windows`, counting onsets by pitch.
std::vector<Histogram> compute_histograms(const EventTrack& track,
                                          const std::vector<Window>& windows);
std::vector<Histogram> compute_histograms(const EventTrack& track,
                                          const WindowSpec& spec);

/// Multiplicative noise: counts'[p] = max(0, round(counts[p] * u_p)) with
/// u_p ~ U[1-alpha, 1+alpha] keyed by (seed, window_index, pitch). alpha = 0
/// returns the input unchanged.
Histogram corrupt_histogram(const Histogram& h, double alpha, std::uint64_t seed,
                            std::uint64_t window_index = 0);

// ---- document I/O (JSON) ----

struct HistogramDoc {
    int pitch_count = kDefaultPitchCount;
    WindowSpec window_spec;
    std::vector<Histogram> windows;
};

std::string event_track_to_json(const EventTrack& track);
EventTrack event_track_from_json(const std::string& text);

std::string histogram_doc_to_json(const HistogramDoc& doc);
HistogramDoc histogram_doc_from_json(const std::string& text);

/// Loads an event file: Standard MIDI ("MThd" magic) or the JSON document.
EventTrack load_event_file(const std::string& path);

}  // namespace countem

#include "countem/events.hpp"

#include "countem/rng.hpp"
#include "countem/smf.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace countem {

using nlohmann::json;

void EventTrack::normalize() {
    std::sort(events.begin(), events.end(), [](const NoteEvent& a, const NoteEvent& b) {
        return a.onset_s != b.onset_s ? a.onset_s < b.onset_s : a.pitch < b.pitch;
    });
    if (duration_s <= 0.0)
        throw std::invalid_argument("EventTrack: duration_s must be positive");
    if (pitch_count <= 0)
        throw std::invalid_argument("EventTrack: pitch_count must be positive");
    for (size_t i = 0; i < events.size(); ++i) {
        const NoteEvent& e = events[i];
        if (e.onset_s < 0.0)
            throw std::invalid_argument("EventTrack: negative onset");
        if (e.onset_s >= duration_s)
            throw std::invalid_argument("EventTrack: onset beyond duration");
        if (e.pitch < 0 || e.pitch >= pitch_count)
            throw std::invalid_argument("EventTrack: pitch out of range");
        if (i > 0 && events[i - 1] == e)
            throw std::invalid_argument("EventTrack: duplicate (onset, pitch)");
    }
}

void WindowSpec::validate() const {
    if (window_len_s && *window_len_s <= 0.0)
        throw std::invalid_argument("WindowSpec: window_len_s must be positive");
}

std::vector<Window> segment(const EventTrack& track, const WindowSpec& spec) {
    spec.validate();
    if (spec.is_full_track()) return {{0.0, track.duration_s}};
    const double len = *spec.window_len_s;
    std::vector<Window> out;
    for (double start = 0.0; start < track.duration_s; start += len)
        out.push_back({start, std::min(start + len, track.duration_s)});
    if (out.empty()) out.push_back({0.0, track.duration_s});
    return out;
}

std::vector<Window> segment_to_frames(const EventTrack& track,
                                      const WindowSpec& spec,
                                      double frame_len_s) {
    spec.validate();
    if (frame_len_s <= 0.0)
        throw std::invalid_argument("segment_to_frames: frame_len_s must be positive");
    const Index total_frames = frames_for(track.duration_s, frame_len_s);
    std::vector<Index> bounds;
    bounds.push_back(0);
    if (!spec.is_full_track()) {
        const double len = *spec.window_len_s;
        for (int k = 1; k * len < track.duration_s; ++k) {
            const Index b = frame_of(k * len, frame_len_s);
            if (b > bounds.back() && b < total_frames) bounds.push_back(b);
        }
    }
    bounds.push_back(total_frames);

    std::vector<Window> out;
    out.reserve(bounds.size() - 1);
    for (size_t i = 0; i + 1 < bounds.size(); ++i)
        out.push_back({static_cast<double>(bounds[i]) * frame_len_s,
                       static_cast<double>(bounds[i + 1]) * frame_len_s});
    return out;
}

std::vector<NoteEvent> events_in_window(const EventTrack& track, const Window& w) {
    std::vector<NoteEvent> out;
    for (const NoteEvent& e : track.events)
        if (e.onset_s >= w.start_s && e.onset_s < w.end_s) out.push_back(e);
    return out;
}

std::vector<Histogram> compute_histograms(const EventTrack& track,
                                          const std::vector<Window>& windows) {
    std::vector<Histogram> out;
    out.reserve(windows.size());
    for (const Window& w : windows) {
        Histogram h;
        h.counts = VecI::Zero(track.pitch_count);
        h.window_start_s = w.start_s;
        h.window_end_s = w.end_s;
        out.push_back(std::move(h));
    }
    for (const NoteEvent& e : track.events) {
        for (size_t i = 0; i < windows.size(); ++i) {
            if (e.onset_s >= windows[i].start_s && e.onset_s < windows[i].end_s) {
                out[i].counts[e.pitch] += 1;
                break;
            }
        }
    }
    return out;
}

std::vector<Histogram> compute_histograms(const EventTrack& track,
                                          const WindowSpec& spec) {
    return compute_histograms(track, segment(track, spec));
}

Histogram corrupt_histogram(const Histogram& h, double alpha, std::uint64_t seed,
                            std::uint64_t window_index) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("corrupt_histogram: alpha must be in [0, 1)");
    if (alpha == 0.0) return h;
    Histogram out = h;
    for (Index p = 0; p < h.counts.size(); ++p) {
        const double u =
            1.0 - alpha + 2.0 * alpha * counter_uniform(seed, window_index, static_cast<std::uint64_t>(p));
        const double scaled = static_cast<double>(h.counts[p]) * u;
        out.counts[p] = std::max<std::int64_t>(0, std::llround(scaled));
    }
    return out;
}

// ---- JSON documents ----

std::string event_track_to_json(const EventTrack& track) {
    json j;
    j["pitch_count"] = track.pitch_count;
    j["duration_s"] = track.duration_s;
    json evs = json::array();
    for (const NoteEvent& e : track.events) {
        json je;
        je["onset_s"] = e.onset_s;
        je["pitch"] = e.pitch;
        evs.push_back(std::move(je));
    }
    j["events"] = std::move(evs);
    return j.dump(2) + "\n";
}

EventTrack event_track_from_json(const std::string& text) {
    const json j = json::parse(text);
    EventTrack track;
    track.pitch_count = j.at("pitch_count").get<int>();
    track.duration_s = j.at("duration_s").get<double>();
    for (const json& je : j.at("events")) {
        NoteEvent e;
        e.onset_s = je.at("onset_s").get<double>();
        e.pitch = je.at("pitch").get<int>();
        if (je.contains("velocity")) e.velocity = je["velocity"].get<int>();
        track.events.push_back(e);
    }
    track.normalize();
    return track;
}

std::string histogram_doc_to_json(const HistogramDoc& doc) {
    json j;
    j["pitch_count"] = doc.pitch_count;
    if (doc.window_spec.is_full_track())
        j["window_len_s"] = "full";
    else
        j["window_len_s"] = *doc.window_spec.window_len_s;
    json ws = json::array();
    for (const Histogram& h : doc.windows) {
        json jw;
        jw["start_s"] = h.window_start_s;
        jw["end_s"] = h.window_end_s;
        jw["counts"] = std::vector<std::int64_t>(h.counts.data(), h.counts.data() + h.counts.size());
        ws.push_back(std::move(jw));
    }
    j["windows"] = std::move(ws);
    return j.dump(2) + "\n";
}

HistogramDoc histogram_doc_from_json(const std::string& text) {
    const json j = json::parse(text);
    HistogramDoc doc;
    doc.pitch_count = j.at("pitch_count").get<int>();
    const json& wl = j.at("window_len_s");
    if (wl.is_string()) {
        if (wl.get<std::string>() != "full")
            throw std::invalid_argument("histogram doc: window_len_s must be a number or \"full\"");
        doc.window_spec = WindowSpec::full_track();
    } else {
        doc.window_spec = WindowSpec::of(wl.get<double>());
    }
    for (const json& jw : j.at("windows")) {
        Histogram h;
        h.window_start_s = jw.at("start_s").get<double>();
        h.window_end_s = jw.at("end_s").get<double>();
        const auto counts = jw.at("counts").get<std::vector<std::int64_t>>();
        if (static_cast<int>(counts.size()) != doc.pitch_count)
            throw std::invalid_argument("histogram doc: counts length != pitch_count");
        h.counts = Eigen::Map<const VecI>(counts.data(), counts.size());
        for (Index p = 0; p < h.counts.size(); ++p)
            if (h.counts[p] < 0)
                throw std::invalid_argument("histogram doc: negative count");
        doc.windows.push_back(std::move(h));
    }
    return doc;
}

EventTrack load_event_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open event file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (text.size() >= 4 && text.compare(0, 4, "MThd") == 0) {
        const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
        return parse_smf(std::vector<std::uint8_t>(bytes, bytes + text.size())).track;
    }
    return event_track_from_json(text);
}

}  // namespace countem

#include "countem/smf.hpp"

#include <algorithm>

namespace countem {

namespace {

class ByteReader {
public:
    ByteReader(const std::vector<std::uint8_t>& bytes, std::size_t pos, std::size_t end)
        : bytes_(bytes), pos_(pos), end_(end) {}

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= end_; }
    std::size_t remaining() const { return end_ - pos_; }

    std::uint8_t u8() {
        require(1, "unexpected end of data");
        return bytes_[pos_++];
    }
    std::uint8_t peek() const {
        if (pos_ >= end_) throw SmfError("unexpected end of data", pos_);
        return bytes_[pos_];
    }
    std::uint16_t u16() {
        require(2, "unexpected end of data");
        std::uint16_t v = (std::uint16_t(bytes_[pos_]) << 8) | bytes_[pos_ + 1];
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        require(4, "unexpected end of data");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_ + i];
        pos_ += 4;
        return v;
    }
    void skip(std::size_t n, const char* what) {
        require(n, what);
        pos_ += n;
    }
    /// Variable-length quantity, at most 4 bytes.
    std::uint32_t vlq() {
        const std::size_t start = pos_;
        std::uint32_t value = 0;
        for (int i = 0; i < 4; ++i) {
            if (pos_ >= end_) throw SmfError("truncated variable-length quantity", start);
            const std::uint8_t b = bytes_[pos_++];
            value = (value << 7) | (b & 0x7f);
            if (!(b & 0x80)) return value;
        }
        throw SmfError("variable-length quantity exceeds 4 bytes", start);
    }

private:
    void require(std::size_t n, const char* what) const {
        if (end_ - pos_ < n) throw SmfError(what, pos_);
    }
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_;
    std::size_t end_;
};

struct RawNoteOn {
    std::uint64_t tick;
    int midi_pitch;
    int velocity;
};

struct TempoChange {
    std::uint64_t tick;
    std::uint32_t usec_per_quarter;
};

constexpr std::uint32_t kDefaultTempo = 500000;  // 120 BPM

}  // namespace

SmfParseResult parse_smf(const std::vector<std::uint8_t>& bytes) {
    ByteReader header(bytes, 0, bytes.size());
    if (bytes.size() < 4 || !(bytes[0] == 'M' && bytes[1] == 'T' && bytes[2] == 'h' && bytes[3] == 'd'))
        throw SmfError("missing MThd magic", 0);
    header.skip(4, "missing MThd magic");
    const std::size_t len_offset = header.pos();
    const std::uint32_t header_len = header.u32();
    if (header_len != 6) throw SmfError("MThd length must be 6", len_offset);
    const std::size_t format_offset = header.pos();
    const std::uint16_t format = header.u16();
    if (format > 1) throw SmfError("unsupported SMF format " + std::to_string(format), format_offset);
    const std::uint16_t declared_tracks = header.u16();
    const std::size_t division_offset = header.pos();
    const std::uint16_t division = header.u16();
    if (division & 0x8000) throw SmfError("SMPTE time division not supported", division_offset);
    if (division == 0) throw SmfError("division must be positive", division_offset);

    std::vector<RawNoteOn> notes;
    std::vector<TempoChange> tempos;

    std::size_t pos = header.pos();
    std::uint16_t tracks_seen = 0;
    while (pos < bytes.size() && tracks_seen < declared_tracks) {
        ByteReader chunk_hdr(bytes, pos, bytes.size());
        if (chunk_hdr.remaining() < 8) throw SmfError("truncated chunk header", pos);
        const std::uint8_t c0 = chunk_hdr.u8(), c1 = chunk_hdr.u8(), c2 = chunk_hdr.u8(), c3 = chunk_hdr.u8();
        const std::uint32_t chunk_len = chunk_hdr.u32();
        const std::size_t body_start = chunk_hdr.pos();
        if (chunk_len > bytes.size() - body_start)
            throw SmfError("chunk length exceeds file size", pos + 4);
        const bool is_track = c0 == 'M' && c1 == 'T' && c2 == 'r' && c3 == 'k';
        pos = body_start + chunk_len;
        if (!is_track) continue;  // unknown chunks are skipped per the standard
        ++tracks_seen;

        ByteReader r(bytes, body_start, body_start + chunk_len);
        std::uint64_t tick = 0;
        int running_status = -1;
        bool end_of_track = false;
        while (!r.at_end() && !end_of_track) {
            tick += r.vlq();
            const std::size_t status_offset = r.pos();
            std::uint8_t status = r.peek();
            if (status < 0x80) {
                if (running_status < 0)
                    throw SmfError("running status without a preceding status byte", status_offset);
                status = static_cast<std::uint8_t>(running_status);
            } else {
                r.u8();
            }

            if (status == 0xff) {  // meta event
                running_status = -1;
                const std::uint8_t type = r.u8();
                const std::uint32_t len = r.vlq();
                const std::size_t data_start = r.pos();
                if (type == 0x51) {
                    if (len != 3) throw SmfError("tempo meta-event must carry 3 bytes", data_start);
                    std::uint32_t uspq = 0;
                    for (int i = 0; i < 3; ++i) uspq = (uspq << 8) | r.u8();
                    if (uspq == 0) throw SmfError("tempo of zero microseconds per quarter", data_start);
                    tempos.push_back({tick, uspq});
                } else {
                    r.skip(len, "truncated meta event");
                    if (type == 0x2f) end_of_track = true;
                }
            } else if (status == 0xf0 || status == 0xf7) {  // sysex
                running_status = -1;
                const std::uint32_t len = r.vlq();
                r.skip(len, "truncated sysex event");
            } else {
                const int kind = status >> 4;
                if (kind < 0x8) throw SmfError("invalid status byte", status_offset);
                running_status = status;
                const int data_bytes = (kind == 0xc || kind == 0xd) ? 1 : 2;
                const std::uint8_t d0 = r.u8();
                std::uint8_t d1 = 0;
                if (data_bytes == 2) d1 = r.u8();
                if ((d0 & 0x80) || (d1 & 0x80))
                    throw SmfError("data byte with high bit set", status_offset);
                if (kind == 0x9 && d1 > 0) notes.push_back({tick, d0, d1});
            }
        }
        if (!end_of_track && r.at_end() && r.pos() != body_start + chunk_len)
            throw SmfError("track data overruns chunk", r.pos());
    }
    if (tracks_seen < declared_tracks)
        throw SmfError("fewer track chunks than declared", pos);
    if (notes.empty()) throw SmfError("no note-on events", bytes.size());

    // Merge tempo changes from all tracks (format 1 keeps them in track 0 by
    // convention, but merging is safe either way). Later duplicates win.
    std::stable_sort(tempos.begin(), tempos.end(),
                     [](const TempoChange& a, const TempoChange& b) { return a.tick < b.tick; });

    auto tick_to_seconds = [&](std::uint64_t tick) {
        double seconds = 0.0;
        std::uint64_t prev_tick = 0;
        std::uint32_t tempo = kDefaultTempo;
        for (const TempoChange& tc : tempos) {
            if (tc.tick >= tick) break;
            seconds += static_cast<double>(tc.tick - prev_tick) * tempo / (1e6 * division);
            prev_tick = tc.tick;
            tempo = tc.usec_per_quarter;
        }
        seconds += static_cast<double>(tick - prev_tick) * tempo / (1e6 * division);
        return seconds;
    };

    SmfParseResult result;
    EventTrack& track = result.track;
    track.pitch_count = kDefaultPitchCount;
    for (const RawNoteOn& n : notes) {
        if (n.midi_pitch < kMidiPitchOffset || n.midi_pitch >= kMidiPitchOffset + kDefaultPitchCount) {
            ++result.dropped_out_of_range;
            continue;
        }
        NoteEvent e;
        e.onset_s = tick_to_seconds(n.tick);
        e.pitch = n.midi_pitch - kMidiPitchOffset;
        e.velocity = n.velocity;
        track.events.push_back(e);
    }
    if (track.events.empty()) throw SmfError("no note-on events within pitch range", bytes.size());

    std::sort(track.events.begin(), track.events.end(), [](const NoteEvent& a, const NoteEvent& b) {
        return a.onset_s != b.onset_s ? a.onset_s < b.onset_s : a.pitch < b.pitch;
    });
    auto last = std::unique(track.events.begin(), track.events.end());
    result.dropped_duplicates = static_cast<int>(track.events.end() - last);
    track.events.erase(last, track.events.end());

    track.duration_s = track.events.back().onset_s + 1.0;
    track.normalize();
    return result;
}

}  // namespace countem

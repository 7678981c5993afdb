#include "countem/matrix_io.hpp"

#include "countem/io_util.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace countem {

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::string read_file_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

void write_file_atomic(const std::string& path, const void* data, std::size_t size) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open file for writing: " + tmp);
        out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::string& path, const std::string& text) {
    write_file_atomic(path, text.data(), text.size());
}

namespace {

constexpr char kMagic[4] = {'T', 'P', 'G', 'M'};
constexpr std::uint16_t kVersion = 1;

struct Header {
    std::uint8_t elem_type;
    std::uint8_t reserved;
    std::uint16_t version;
    std::uint32_t frames;
    std::uint32_t pitches;
    double frame_len_s;
};

void append(std::vector<std::uint8_t>& buf, const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    buf.insert(buf.end(), p, p + n);
}

std::vector<std::uint8_t> encode_header(std::uint8_t elem_type, const FrameGrid& grid) {
    if (grid.frame_count < 0 || grid.pitch_count < 0 ||
        grid.frame_count > std::numeric_limits<std::uint32_t>::max() ||
        grid.pitch_count > std::numeric_limits<std::uint32_t>::max())
        throw MatrixIoError("matrix dimensions overflow the header");
    std::vector<std::uint8_t> buf;
    append(buf, kMagic, 4);
    buf.push_back(elem_type);
    buf.push_back(0);  // reserved
    append(buf, &kVersion, 2);
    const std::uint32_t t = static_cast<std::uint32_t>(grid.frame_count);
    const std::uint32_t p = static_cast<std::uint32_t>(grid.pitch_count);
    append(buf, &t, 4);
    append(buf, &p, 4);
    append(buf, &grid.frame_len_s, 8);
    return buf;
}

Header decode_header(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 24) throw MatrixIoError("file too short for header");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw MatrixIoError("bad magic (expected TPGM)");
    Header h{};
    h.elem_type = bytes[4];
    h.reserved = bytes[5];
    std::memcpy(&h.version, bytes.data() + 6, 2);
    std::memcpy(&h.frames, bytes.data() + 8, 4);
    std::memcpy(&h.pitches, bytes.data() + 12, 4);
    std::memcpy(&h.frame_len_s, bytes.data() + 16, 8);
    if (h.version != kVersion)
        throw MatrixIoError("unsupported version " + std::to_string(h.version));
    if (h.elem_type > 1)
        throw MatrixIoError("unknown element type " + std::to_string(h.elem_type));
    if (h.reserved != 0) throw MatrixIoError("reserved byte must be zero");
    if (!(h.frame_len_s > 0.0)) throw MatrixIoError("frame_len_s must be positive");
    const std::uint64_t cells = std::uint64_t(h.frames) * h.pitches;
    const std::uint64_t elem_size = h.elem_type == 0 ? 4 : 1;
    if (cells > (std::uint64_t(1) << 40))
        throw MatrixIoError("matrix dimensions overflow");
    if (bytes.size() != 24 + cells * elem_size)
        throw MatrixIoError("payload size mismatch (truncated or trailing data)");
    return h;
}

}  // namespace

void write_matrix(const std::string& path, const Posteriorgram& z) {
    std::vector<std::uint8_t> buf = encode_header(0, z.grid);
    buf.reserve(buf.size() + static_cast<std::size_t>(z.values.size()) * 4);
    for (Index t = 0; t < z.values.rows(); ++t)
        for (Index p = 0; p < z.values.cols(); ++p) {
            const float v = z.values(t, p);
            append(buf, &v, 4);
        }
    write_file_atomic(path, buf.data(), buf.size());
}

void write_matrix(const std::string& path, const LabelMatrix& y) {
    std::vector<std::uint8_t> buf = encode_header(1, y.grid);
    buf.reserve(buf.size() + static_cast<std::size_t>(y.values.size()));
    for (Index t = 0; t < y.values.rows(); ++t)
        for (Index p = 0; p < y.values.cols(); ++p) buf.push_back(y.values(t, p));
    write_file_atomic(path, buf.data(), buf.size());
}

AnyMatrix read_matrix(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_file_bytes(path);
    const Header h = decode_header(bytes);
    const FrameGrid grid{h.frame_len_s, static_cast<Index>(h.frames),
                         static_cast<Index>(h.pitches)};
    const std::uint8_t* payload = bytes.data() + 24;
    if (h.elem_type == 0) {
        Posteriorgram z{grid, Mat(grid.frame_count, grid.pitch_count)};
        for (Index t = 0; t < z.values.rows(); ++t)
            for (Index p = 0; p < z.values.cols(); ++p) {
                float v;
                std::memcpy(&v, payload, 4);
                payload += 4;
                if (!(v >= 0.0f && v <= 1.0f))
                    throw MatrixIoError("posteriorgram value outside [0, 1]");
                z.values(t, p) = v;
            }
        return z;
    }
    LabelMatrix y{grid, MatU8(grid.frame_count, grid.pitch_count)};
    for (Index t = 0; t < y.values.rows(); ++t)
        for (Index p = 0; p < y.values.cols(); ++p) {
            const std::uint8_t v = *payload++;
            if (v > 1) throw MatrixIoError("label value outside {0, 1}");
            y.values(t, p) = v;
        }
    return y;
}

Posteriorgram read_posteriorgram(const std::string& path) {
    AnyMatrix m = read_matrix(path);
    if (auto* z = std::get_if<Posteriorgram>(&m)) return std::move(*z);
    throw MatrixIoError("expected a posteriorgram (f32) matrix: " + path);
}

LabelMatrix read_label_matrix(const std::string& path) {
    AnyMatrix m = read_matrix(path);
    if (auto* y = std::get_if<LabelMatrix>(&m)) return std::move(*y);
    throw MatrixIoError("expected a label (u8) matrix: " + path);
}

}  // namespace countem

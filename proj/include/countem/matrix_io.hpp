#pragma once

#include "countem/grid.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace countem {

/// Malformed matrix file (bad magic, unknown element type, size mismatch...).
class MatrixIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Binary time-pitch grid format, little-endian:
//   magic "TPGM" | u8 element type (0 = f32, 1 = u8 binary) | u8 reserved = 0
//   | u16 version = 1 | u32 T | u32 P | f64 frame_len_s
//   | T*P elements, row-major (row = frame)

void write_matrix(const std::string& path, const Posteriorgram& z);
void write_matrix(const std::string& path, const LabelMatrix& y);

using AnyMatrix = std::variant<Posteriorgram, LabelMatrix>;
AnyMatrix read_matrix(const std::string& path);

Posteriorgram read_posteriorgram(const std::string& path);
LabelMatrix read_label_matrix(const std::string& path);

}  // namespace countem

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace countem {

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
std::string read_file_text(const std::string& path);

/// Write to a sibling temp file, then rename over the target.
void write_file_atomic(const std::string& path, const void* data, std::size_t size);
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace countem

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace mlsds {

// IoError on a missing or unreadable file.
std::string read_file(const std::filesystem::path& path);

// Writes to a temp file in the target directory, then renames into place,
// so readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& target,
                       std::string_view content);

}  // namespace mlsds

#include "mlsds/fsio.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "mlsds/validation.hpp"

namespace mlsds {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& target,
                       std::string_view content) {
  std::filesystem::path dir = target.parent_path();
  std::filesystem::path tmp =
      (dir.empty() ? std::filesystem::path(".") : dir) /
      (".tmp." + target.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + target.string());
  }
}

}  // namespace mlsds

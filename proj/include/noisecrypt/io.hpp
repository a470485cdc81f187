#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "noisecrypt/error.hpp"

namespace noisecrypt {

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return bytes;
}

inline std::string read_file_text(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return {bytes.begin(), bytes.end()};
}

/// Writes to a sibling temporary and renames it over `path` once complete,
/// so a failed write never leaves a partial file behind.
class StagedFile {
 public:
  StagedFile(std::filesystem::path target, std::span<const std::uint8_t> contents)
      : target_(std::move(target)) {
    std::random_device rd;
    temp_ = target_;
    temp_ += ".tmp" + std::to_string(rd());
    std::ofstream out(temp_, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + temp_.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(contents.data()),
              static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
      discard();
      throw IoError("write failed for '" + target_.string() + "'");
    }
  }

  StagedFile(const StagedFile&) = delete;
  StagedFile& operator=(const StagedFile&) = delete;

  ~StagedFile() { discard(); }

  void commit() {
    std::error_code ec;
    std::filesystem::rename(temp_, target_, ec);
    if (ec) {
      discard();
      throw IoError("cannot move output into place at '" + target_.string() + "': " +
                    ec.message());
    }
    committed_ = true;
  }

 private:
  void discard() noexcept {
    if (!committed_) {
      std::error_code ec;
      std::filesystem::remove(temp_, ec);
    }
  }

  std::filesystem::path target_;
  std::filesystem::path temp_;
  bool committed_ = false;
};

inline std::span<const std::uint8_t> as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline void write_file_atomic(const std::filesystem::path& path,
                              std::span<const std::uint8_t> contents) {
  StagedFile staged(path, contents);
  staged.commit();
}

}  // namespace noisecrypt

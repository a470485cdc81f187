#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "noisecrypt/error.hpp"
#include "noisecrypt/grid.hpp"
#include "noisecrypt/io.hpp"

namespace noisecrypt {

/// Largest accepted width or height.
inline constexpr std::size_t pgm_max_dimension = 1u << 16;

namespace detail {

class PgmHeaderParser {
 public:
  explicit PgmHeaderParser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t number(const char* field) {
    skip_whitespace_and_comments();
    if (pos_ >= bytes_.size()) {
      throw PgmError(PgmErrorKind::truncated, std::string("PGM header ends before ") + field);
    }
    if (!is_digit(bytes_[pos_])) {
      throw PgmError(PgmErrorKind::bad_header, std::string("PGM header: expected ") + field);
    }
    std::size_t value = 0;
    while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > pgm_max_dimension) {
        throw PgmError(PgmErrorKind::oversized, std::string("PGM header: ") + field + " too large");
      }
    }
    return value;
  }

  /// The single whitespace byte that separates maxval from the raster.
  void raster_separator() {
    if (pos_ >= bytes_.size()) throw PgmError(PgmErrorKind::truncated, "PGM header is truncated");
    if (!is_space(bytes_[pos_])) {
      throw PgmError(PgmErrorKind::bad_header, "PGM header: expected whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t position() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

 private:
  static bool is_digit(std::uint8_t c) noexcept { return c >= '0' && c <= '9'; }
  static bool is_space(std::uint8_t c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a binary (P5) PGM with maxval 255. Header comments are accepted;
/// bytes after the raster are rejected.
inline GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw PgmError(PgmErrorKind::bad_magic, "not a binary PGM (expected magic 'P5')");
  }
  detail::PgmHeaderParser parser(bytes);
  parser.advance(2);
  const std::size_t width = parser.number("width");
  const std::size_t height = parser.number("height");
  const std::size_t maxval = parser.number("maxval");
  if (width == 0 || height == 0) {
    throw PgmError(PgmErrorKind::bad_header, "PGM dimensions must be positive");
  }
  if (maxval != 255) {
    throw PgmError(PgmErrorKind::unsupported_depth,
                   "unsupported PGM maxval " + std::to_string(maxval) + " (only 255 is accepted)");
  }
  parser.raster_separator();

  const std::size_t payload = width * height;
  const std::size_t available = bytes.size() - parser.position();
  if (available < payload) {
    throw PgmError(PgmErrorKind::truncated, "PGM raster truncated: expected " +
                                                std::to_string(payload) + " bytes, found " +
                                                std::to_string(available));
  }
  if (available > payload) {
    throw PgmError(PgmErrorKind::trailing_data,
                   "PGM has " + std::to_string(available - payload) + " trailing bytes");
  }
  const auto raster = bytes.subspan(parser.position(), payload);
  return GrayImage(height, width, std::vector<std::uint8_t>(raster.begin(), raster.end()));
}

/// Canonical form: "P5\n<width> <height>\n255\n" followed by the raster.
inline std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.flat().begin(), img.flat().end());
  return out;
}

inline GrayImage load_pgm(const std::filesystem::path& path) {
  return read_pgm(read_file_bytes(path));
}

inline void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file_atomic(path, write_pgm(img));
}

}  // namespace noisecrypt

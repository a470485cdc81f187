#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "noisecrypt/chaos.hpp"
#include "noisecrypt/error.hpp"
#include "noisecrypt/grid.hpp"
#include "noisecrypt/io.hpp"
#include "noisecrypt/sha256.hpp"
#include "noisecrypt/text.hpp"

namespace noisecrypt {

/// Seed quantities derived from the plaintext hash.
///
/// `hash_prefix` is the first 11 lowercase hex characters of the SHA-256
/// digest of the raw row-major pixel bytes; `d` is its base-16 value and
/// `dd = d / 1e14` is the initial state of all three chaotic sequences. Since
/// 0 is a fixed point of both maps, d == 0 is mapped to dd = 1e-14.
struct SeedMaterial {
  static constexpr std::size_t prefix_length = 11;
  static constexpr double zero_guard = 1e-14;

  std::string hash_prefix;
  std::uint64_t d = 0;
  double dd = zero_guard;

  friend bool operator==(const SeedMaterial&, const SeedMaterial&) = default;
};

inline bool is_valid_hash_prefix(std::string_view s) noexcept {
  if (s.size() != SeedMaterial::prefix_length) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

inline SeedMaterial seed_from_prefix(std::string_view prefix) {
  if (!is_valid_hash_prefix(prefix)) {
    throw ParameterError("hash prefix must be 11 lowercase hex characters, got '" +
                         std::string(prefix) + "'");
  }
  SeedMaterial s;
  s.hash_prefix = std::string(prefix);
  std::from_chars(prefix.data(), prefix.data() + prefix.size(), s.d, 16);
  s.dd = s.d == 0 ? SeedMaterial::zero_guard : static_cast<double>(s.d) / quantization_scale;
  return s;
}

inline SeedMaterial derive_seed(const GrayImage& img) {
  if (img.empty()) {
    throw ParameterError("cannot derive a seed from an empty image");
  }
  const Sha256Digest digest = sha256(img.flat());
  return seed_from_prefix(to_hex(digest).substr(0, SeedMaterial::prefix_length));
}

inline SelectorGrid build_key1(const SeedMaterial& seed, const MapParams& params, std::size_t rows,
                               std::size_t cols) {
  const auto seq = generate(seed.dd, params.r_lt(), rows * cols, MapKind::logistic_tent);
  return reshape_row_major<std::uint8_t>(quantize(seq, 3), rows, cols);
}

inline ByteGrid build_key2(const SeedMaterial& seed, const MapParams& params,
                           std::size_t block_size) {
  if (block_size == 0) throw ParameterError("block size must be at least 1");
  const auto seq =
      generate(seed.dd, params.r_lt(), block_size * block_size, MapKind::logistic_tent);
  return reshape_row_major<std::uint8_t>(quantize(seq, 256), block_size, block_size);
}

inline ByteGrid build_key3(const SeedMaterial& seed, const MapParams& params, std::size_t rows,
                           std::size_t cols) {
  const auto seq = generate(seed.dd, params.r_lsc(), rows * cols, MapKind::logistic_sine_cosine);
  return reshape_row_major<std::uint8_t>(quantize(seq, 256), rows, cols);
}

inline void check_block_geometry(std::size_t rows, std::size_t cols, std::size_t block_size) {
  if (rows == 0 || cols == 0) {
    throw ParameterError("image must be non-empty");
  }
  if (block_size == 0) {
    throw ParameterError("block size must be at least 1");
  }
  if (rows % block_size != 0 || cols % block_size != 0) {
    throw ValidationError("image dimensions " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " are not multiples of block size " +
                          std::to_string(block_size));
  }
}

struct KeySchedule {
  SelectorGrid key1;  // S-box selectors, M x N
  ByteGrid key2;      // first-block chaining key, Z x Z
  ByteGrid key3;      // noise layer, M x N
  MapParams params;
  std::size_t block_size = 0;
  SeedMaterial seed;
};

inline KeySchedule make_key_schedule(const SeedMaterial& seed, const MapParams& params,
                                     std::size_t block_size, std::size_t rows, std::size_t cols) {
  check_block_geometry(rows, cols, block_size);
  return KeySchedule{build_key1(seed, params, rows, cols), build_key2(seed, params, block_size),
                     build_key3(seed, params, rows, cols), params, block_size, seed};
}

// ---------------------------------------------------------------------------
// Key file
// ---------------------------------------------------------------------------

/// Everything a decryptor needs. Expanded keys are regenerated, never stored.
/// The file is secret: anyone holding it can decrypt the matching cipher.
struct KeyMetadata {
  static constexpr int current_version = 1;

  int version = current_version;
  std::string hash_prefix;
  MapParams params;
  std::size_t block_size = 16;
  std::size_t width = 0;
  std::size_t height = 0;

  friend bool operator==(const KeyMetadata&, const KeyMetadata&) = default;
};

inline void validate(const KeyMetadata& meta) {
  if (meta.version != KeyMetadata::current_version) {
    throw KeyFileError(KeyFileErrorKind::version_mismatch,
                       "unsupported key file version " + std::to_string(meta.version));
  }
  if (!is_valid_hash_prefix(meta.hash_prefix)) {
    throw KeyFileError(KeyFileErrorKind::malformed, "hash_prefix must be 11 lowercase hex digits");
  }
  check_block_geometry(meta.height, meta.width, meta.block_size);
}

namespace detail {

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw KeyFileError(KeyFileErrorKind::malformed,
                       "invalid value for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

inline std::string format_key_file(const KeyMetadata& meta) {
  std::ostringstream out;
  out << "# noisecrypt key file -- SECRET, keep private\n"
      << "version = " << meta.version << '\n'
      << "hash_prefix = " << meta.hash_prefix << '\n'
      << "r_lt = " << detail::format_double(meta.params.r_lt()) << '\n'
      << "r_lsc = " << detail::format_double(meta.params.r_lsc()) << '\n'
      << "z = " << meta.block_size << '\n'
      << "width = " << meta.width << '\n'
      << "height = " << meta.height << '\n';
  return out.str();
}

/// Parses and validates the `key = value` text form. Blank lines and lines
/// starting with '#' are skipped; every key must appear exactly once.
inline KeyMetadata parse_key_file(std::string_view text) {
  static constexpr std::string_view required[] = {"version", "hash_prefix", "r_lt", "r_lsc",
                                                   "z",       "width",       "height"};
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw KeyFileError(KeyFileErrorKind::malformed,
                         "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (std::find(std::begin(required), std::end(required), key) == std::end(required)) {
      throw KeyFileError(KeyFileErrorKind::malformed, "unknown key '" + key + "'");
    }
    if (!fields.emplace(key, value).second) {
      throw KeyFileError(KeyFileErrorKind::malformed, "duplicate key '" + key + "'");
    }
  }
  for (auto key : required) {
    if (!fields.contains(key)) {
      throw KeyFileError(KeyFileErrorKind::malformed, "missing key '" + std::string(key) + "'");
    }
  }

  KeyMetadata meta;
  meta.version = detail::parse_number<int>("version", fields["version"]);
  if (meta.version != KeyMetadata::current_version) {
    throw KeyFileError(KeyFileErrorKind::version_mismatch,
                       "unsupported key file version " + std::to_string(meta.version));
  }
  meta.hash_prefix = fields["hash_prefix"];
  meta.params = MapParams(detail::parse_number<double>("r_lt", fields["r_lt"]),
                          detail::parse_number<double>("r_lsc", fields["r_lsc"]));
  meta.block_size = detail::parse_number<std::size_t>("z", fields["z"]);
  meta.width = detail::parse_number<std::size_t>("width", fields["width"]);
  meta.height = detail::parse_number<std::size_t>("height", fields["height"]);
  validate(meta);
  return meta;
}

inline void write_key_file(const std::filesystem::path& path, const KeyMetadata& meta) {
  validate(meta);
  write_file_atomic(path, as_bytes(format_key_file(meta)));
}

inline KeyMetadata read_key_file(const std::filesystem::path& path) {
  return parse_key_file(read_file_text(path));
}

}  // namespace noisecrypt

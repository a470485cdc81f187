#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>

#include "noisecrypt/chaos.hpp"
#include "noisecrypt/error.hpp"
#include "noisecrypt/grid.hpp"
#include "noisecrypt/io.hpp"

namespace noisecrypt {

using SBoxTable = std::array<std::uint8_t, 256>;

/// A bijective byte substitution with its precomputed inverse.
class SBox {
 public:
  /// Throws ParameterError unless `table` is a permutation of 0..255.
  SBox(std::string name, const SBoxTable& table) : name_(std::move(name)), table_(table) {
    std::array<bool, 256> seen{};
    for (std::size_t v = 0; v < 256; ++v) {
      if (seen[table_[v]]) {
        throw ParameterError("S-box '" + name_ + "' is not bijective: value " +
                             std::to_string(table_[v]) + " appears twice");
      }
      seen[table_[v]] = true;
      inverse_[table_[v]] = static_cast<std::uint8_t>(v);
    }
  }

  std::uint8_t forward(std::uint8_t v) const noexcept { return table_[v]; }
  std::uint8_t backward(std::uint8_t v) const noexcept { return inverse_[v]; }

  /// Row/column lookup by high and low nibble; identical to forward(16*row + col).
  std::uint8_t lookup(std::uint8_t row, std::uint8_t col) const noexcept {
    return table_[(row << 4) | (col & 0x0F)];
  }

  const SBoxTable& table() const noexcept { return table_; }
  const SBoxTable& inverse() const noexcept { return inverse_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  SBoxTable table_{};
  SBoxTable inverse_{};
};

namespace gf256 {

/// Multiplication in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1.
constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept {
  std::uint8_t p = 0;
  while (b != 0) {
    if (b & 1) p ^= a;
    const bool carry = a & 0x80;
    a = static_cast<std::uint8_t>(a << 1);
    if (carry) a ^= 0x1B;
    b >>= 1;
  }
  return p;
}

/// a^254, which is a^-1 for a != 0 and 0 for a == 0.
constexpr std::uint8_t inverse(std::uint8_t a) noexcept {
  std::uint8_t result = 1;
  std::uint8_t base = a;
  for (unsigned e = 254; e != 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return a == 0 ? 0 : result;
}

constexpr std::uint8_t rotl(std::uint8_t x, unsigned n) noexcept {
  return static_cast<std::uint8_t>((x << n) | (x >> (8 - n)));
}

constexpr std::uint8_t aes_affine(std::uint8_t b) noexcept {
  return static_cast<std::uint8_t>(b ^ rotl(b, 1) ^ rotl(b, 2) ^ rotl(b, 3) ^ rotl(b, 4) ^ 0x63);
}

}  // namespace gf256

constexpr std::uint8_t gray_code(std::uint8_t x) noexcept {
  return static_cast<std::uint8_t>(x ^ (x >> 1));
}

inline SBox build_aes_sbox() {
  SBoxTable t{};
  for (unsigned v = 0; v < 256; ++v) {
    t[v] = gf256::aes_affine(gf256::inverse(static_cast<std::uint8_t>(v)));
  }
  return SBox("aes", t);
}

inline SBox build_gray_sbox() {
  const SBox aes = build_aes_sbox();
  SBoxTable t{};
  for (unsigned v = 0; v < 256; ++v) t[v] = gray_code(aes.forward(static_cast<std::uint8_t>(v)));
  return SBox("gray", t);
}

/// Published, non-secret constants for the chaotic S-box.
inline constexpr double chaotic_sbox_x0 = 0.37;
inline constexpr double chaotic_sbox_r = 3.999;

/// Argsort of 256 logistic-tent iterates (ascending, ties by index).
inline SBox build_chaotic_sbox(double x0 = chaotic_sbox_x0, double r = chaotic_sbox_r) {
  const auto seq = generate(x0, r, 256, MapKind::logistic_tent);
  std::array<std::size_t, 256> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return seq.values[a] < seq.values[b]; });
  SBoxTable t{};
  std::transform(order.begin(), order.end(), t.begin(),
                 [](std::size_t i) { return static_cast<std::uint8_t>(i); });
  return SBox("chaotic", t);
}

/// Parses 256 whitespace-separated decimal bytes and checks bijectivity.
inline SBox parse_sbox_text(std::string_view text, std::string name = "custom") {
  SBoxTable t{};
  std::size_t count = 0;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    unsigned value = 0;
    std::size_t digits = 0;
    while (i < text.size() && !is_space(text[i])) {
      const char c = text[i++];
      if (c < '0' || c > '9' || ++digits > 3) {
        throw SBoxFileError("S-box file: invalid token near entry " + std::to_string(count));
      }
      value = value * 10 + static_cast<unsigned>(c - '0');
    }
    if (value > 255) {
      throw SBoxFileError("S-box file: value " + std::to_string(value) + " exceeds 255");
    }
    if (count == 256) throw SBoxFileError("S-box file: more than 256 entries");
    t[count++] = static_cast<std::uint8_t>(value);
  }
  if (count != 256) {
    throw SBoxFileError("S-box file: expected 256 entries, found " + std::to_string(count));
  }
  try {
    return SBox(std::move(name), t);
  } catch (const ParameterError& e) {
    throw SBoxFileError(std::string("S-box file: ") + e.what());
  }
}

inline SBox load_sbox_file(const std::filesystem::path& path) {
  return parse_sbox_text(read_file_text(path), path.filename().string());
}

/// Boxes indexed by selector value: 0 -> AES, 1 -> chaotic, 2 -> Gray.
struct SBoxSet {
  std::array<SBox, 3> boxes;

  const SBox& operator[](std::size_t selector) const noexcept { return boxes[selector]; }
};

inline SBoxSet default_sbox_set() {
  return SBoxSet{{build_aes_sbox(), build_chaotic_sbox(), build_gray_sbox()}};
}

/// Default set with the selector-1 box replaced, e.g. by a published table.
inline SBoxSet sbox_set_with_override(SBox middle) {
  return SBoxSet{{build_aes_sbox(), std::move(middle), build_gray_sbox()}};
}

namespace detail {

inline void check_selectors(const GrayImage& img, const SelectorGrid& key1, const char* what) {
  require_same_shape(img, key1, what);
  for (std::uint8_t s : key1.flat()) {
    if (s > 2) throw ParameterError(std::string(what) + ": selector out of range");
  }
}

}  // namespace detail

inline GrayImage substitute_image(const GrayImage& img, const SelectorGrid& key1,
                                  const SBoxSet& boxes) {
  detail::check_selectors(img, key1, "substitute_image");
  GrayImage out(img.rows(), img.cols());
  const auto src = img.flat();
  const auto sel = key1.flat();
  auto dst = out.flat();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = boxes[sel[k]].forward(src[k]);
  return out;
}

inline GrayImage inverse_substitute_image(const GrayImage& img, const SelectorGrid& key1,
                                          const SBoxSet& boxes) {
  detail::check_selectors(img, key1, "inverse_substitute_image");
  GrayImage out(img.rows(), img.cols());
  const auto src = img.flat();
  const auto sel = key1.flat();
  auto dst = out.flat();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = boxes[sel[k]].backward(src[k]);
  return out;
}

}  // namespace noisecrypt

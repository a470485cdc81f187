#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "noisecrypt/error.hpp"
#include "noisecrypt/grid.hpp"
#include "noisecrypt/text.hpp"

namespace noisecrypt {

struct Histogram {
  std::array<std::uint64_t, 256> counts{};

  std::uint64_t total() const noexcept {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }
};

inline Histogram histogram(const GrayImage& img) {
  Histogram h;
  for (std::uint8_t v : img.flat()) ++h.counts[v];
  return h;
}

/// Pearson chi-square statistic against the uniform distribution,
/// sum over bins of (f_i - e)^2 / e with e = total / 256.
inline double chi_square(const Histogram& h) {
  const auto n = h.total();
  if (n == 0) throw ParameterError("chi_square: empty histogram");
  const double expected = static_cast<double>(n) / 256.0;
  double sum = 0.0;
  for (auto c : h.counts) {
    const double diff = static_cast<double>(c) - expected;
    sum += diff * diff / expected;
  }
  return sum;
}

/// Shannon entropy in bits; empty bins contribute nothing.
inline double entropy(const Histogram& h) {
  const auto n = h.total();
  if (n == 0) throw ParameterError("entropy: empty histogram");
  double sum = 0.0;
  for (auto c : h.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    sum -= p * std::log2(p);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Gray-level co-occurrence
// ---------------------------------------------------------------------------

/// Quantizes [0, 255] into `levels` equal bins and counts pixel pairs
/// (p, p + offset). Non-symmetric; normalized to unit mass.
struct GlcmConfig {
  int levels = 8;
  int row_offset = 0;
  int col_offset = 1;

  friend bool operator==(const GlcmConfig&, const GlcmConfig&) = default;
};

class Glcm {
 public:
  Glcm(int levels, std::vector<double> p) : levels_(levels), p_(std::move(p)) {}

  int levels() const noexcept { return levels_; }
  double operator()(int i, int j) const noexcept {
    return p_[static_cast<std::size_t>(i) * static_cast<std::size_t>(levels_) +
              static_cast<std::size_t>(j)];
  }
  const std::vector<double>& cells() const noexcept { return p_; }

 private:
  int levels_;
  std::vector<double> p_;
};

inline Glcm glcm(const GrayImage& img, const GlcmConfig& config = {}) {
  if (config.levels < 2 || config.levels > 256) {
    throw ParameterError("GLCM levels must lie in [2, 256]");
  }
  if (config.row_offset == 0 && config.col_offset == 0) {
    throw ParameterError("GLCM offset must be nonzero");
  }
  const auto rows = static_cast<long>(img.rows());
  const auto cols = static_cast<long>(img.cols());
  const long dr = config.row_offset;
  const long dc = config.col_offset;
  const long r_begin = std::max(0L, -dr), r_end = std::min(rows, rows - dr);
  const long c_begin = std::max(0L, -dc), c_end = std::min(cols, cols - dc);
  if (r_begin >= r_end || c_begin >= c_end) {
    throw ParameterError("GLCM: image " + detail::shape_string(img) +
                         " is too small for the offset");
  }

  std::array<int, 256> bin{};
  for (int v = 0; v < 256; ++v) bin[v] = v * config.levels / 256;

  const auto L = static_cast<std::size_t>(config.levels);
  std::vector<std::uint64_t> counts(L * L, 0);
  for (long r = r_begin; r < r_end; ++r) {
    for (long c = c_begin; c < c_end; ++c) {
      const auto i = static_cast<std::size_t>(bin[img(r, c)]);
      const auto j = static_cast<std::size_t>(bin[img(r + dr, c + dc)]);
      ++counts[i * L + j];
    }
  }
  const double pairs = static_cast<double>((r_end - r_begin) * (c_end - c_begin));
  std::vector<double> p(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) p[k] = static_cast<double>(counts[k]) / pairs;
  return Glcm(config.levels, std::move(p));
}

inline double contrast(const Glcm& g) {
  double sum = 0.0;
  for (int i = 0; i < g.levels(); ++i) {
    for (int j = 0; j < g.levels(); ++j) sum += static_cast<double>((i - j) * (i - j)) * g(i, j);
  }
  return sum;
}

inline double homogeneity(const Glcm& g) {
  double sum = 0.0;
  for (int i = 0; i < g.levels(); ++i) {
    for (int j = 0; j < g.levels(); ++j) sum += g(i, j) / (1.0 + std::abs(i - j));
  }
  return sum;
}

inline double energy(const Glcm& g) {
  double sum = 0.0;
  for (double p : g.cells()) sum += p * p;
  return sum;
}

// ---------------------------------------------------------------------------
// Correlation
// ---------------------------------------------------------------------------

enum class Direction { horizontal, vertical, diagonal };

namespace detail {

/// Two-pass Pearson coefficient over paired samples produced by `pair(k)`.
template <typename PairFn>
double pearson(std::size_t n, PairFn&& pair, const char* what) {
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [a, b] = pair(k);
    mean_a += a;
    mean_b += b;
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [a, b] = pair(k);
    const double da = a - mean_a;
    const double db = b - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw UndefinedCorrelationError(std::string(what) + ": zero variance, correlation undefined");
  }
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace detail

/// Pearson correlation over every adjacent pixel pair in the direction.
inline double adjacent_correlation(const GrayImage& img, Direction dir = Direction::horizontal) {
  const std::size_t dr = dir == Direction::horizontal ? 0 : 1;
  const std::size_t dc = dir == Direction::vertical ? 0 : 1;
  if (img.rows() <= dr || img.cols() <= dc) {
    throw ParameterError("adjacent_correlation: image " + detail::shape_string(img) +
                         " has no pixel pairs in this direction");
  }
  const std::size_t pair_cols = img.cols() - dc;
  const std::size_t n = (img.rows() - dr) * pair_cols;
  return detail::pearson(
      n,
      [&](std::size_t k) {
        const std::size_t r = k / pair_cols, c = k % pair_cols;
        return std::pair<double, double>(img(r, c), img(r + dr, c + dc));
      },
      "adjacent_correlation");
}

/// Pixel-wise Pearson correlation between two equally sized images.
inline double cross_correlation(const GrayImage& p, const GrayImage& c) {
  detail::require_same_shape(p, c, "cross_correlation");
  if (p.empty()) throw ParameterError("cross_correlation: empty images");
  const auto a = p.flat();
  const auto b = c.flat();
  return detail::pearson(
      a.size(), [&](std::size_t k) { return std::pair<double, double>(a[k], b[k]); },
      "cross_correlation");
}

// ---------------------------------------------------------------------------
// Differential
// ---------------------------------------------------------------------------

/// Percentage of positions where the two ciphers differ.
inline double npcr(const GrayImage& c1, const GrayImage& c2) {
  detail::require_same_shape(c1, c2, "npcr");
  if (c1.empty()) throw ParameterError("npcr: empty images");
  const auto a = c1.flat();
  const auto b = c2.flat();
  std::size_t differing = 0;
  for (std::size_t k = 0; k < a.size(); ++k) differing += a[k] != b[k];
  return 100.0 * static_cast<double>(differing) / static_cast<double>(a.size());
}

/// Mean absolute difference as a percentage of 255.
inline double uaci(const GrayImage& c1, const GrayImage& c2) {
  detail::require_same_shape(c1, c2, "uaci");
  if (c1.empty()) throw ParameterError("uaci: empty images");
  const auto a = c1.flat();
  const auto b = c2.flat();
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] > b[k] ? a[k] - b[k] : b[k] - a[k];
  return 100.0 * static_cast<double>(sum) / (255.0 * static_cast<double>(a.size()));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ImageStats {
  double entropy = 0.0;
  double chi_square = 0.0;
  double contrast = 0.0;
  double homogeneity = 0.0;
  double energy = 0.0;
  std::optional<double> adjacent_correlation;  // empty when the image has zero variance
};

struct MetricsReport {
  static constexpr int current_version = 1;

  std::size_t width = 0;
  std::size_t height = 0;
  GlcmConfig glcm;
  std::optional<ImageStats> plain;
  std::optional<ImageStats> cipher;
  std::optional<double> cross_correlation;
  std::optional<double> npcr;
  std::optional<double> uaci;
};

inline ImageStats image_stats(const GrayImage& img, const GlcmConfig& config = {}) {
  ImageStats s;
  const Histogram h = histogram(img);
  s.entropy = entropy(h);
  s.chi_square = chi_square(h);
  const Glcm g = glcm(img, config);
  s.contrast = contrast(g);
  s.homogeneity = homogeneity(g);
  s.energy = energy(g);
  try {
    s.adjacent_correlation = adjacent_correlation(img, Direction::horizontal);
  } catch (const UndefinedCorrelationError&) {
    s.adjacent_correlation.reset();
  }
  return s;
}

/// Statistics for a plain/cipher pair. NPCR and UACI are filled in only when
/// a second cipher (of a one-bit-modified plaintext) is supplied.
inline MetricsReport full_report(const GrayImage& plain, const GrayImage& cipher,
                                 const GlcmConfig& config = {}) {
  detail::require_same_shape(plain, cipher, "full_report");
  MetricsReport r;
  r.width = plain.cols();
  r.height = plain.rows();
  r.glcm = config;
  r.plain = image_stats(plain, config);
  r.cipher = image_stats(cipher, config);
  try {
    r.cross_correlation = cross_correlation(plain, cipher);
  } catch (const UndefinedCorrelationError&) {
    r.cross_correlation.reset();
  }
  return r;
}

inline MetricsReport full_report(const GrayImage& plain, const GrayImage& cipher,
                                 const GrayImage& tampered_cipher, const GlcmConfig& config = {}) {
  MetricsReport r = full_report(plain, cipher, config);
  r.npcr = npcr(cipher, tampered_cipher);
  r.uaci = uaci(cipher, tampered_cipher);
  return r;
}

/// Versioned `key = value` text. Absent optional metrics are omitted; an
/// undefined correlation is written as `undefined`.
inline std::string format_report(const MetricsReport& r) {
  std::ostringstream out;
  auto num = [](double v) { return detail::format_double(v); };
  auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string("undefined"); };
  out << "# noisecrypt metrics report\n"
      << "version = " << MetricsReport::current_version << '\n'
      << "width = " << r.width << '\n'
      << "height = " << r.height << '\n'
      << "glcm.levels = " << r.glcm.levels << '\n'
      << "glcm.offset = " << r.glcm.row_offset << ',' << r.glcm.col_offset << '\n';
  auto stats = [&](const char* prefix, const ImageStats& s) {
    out << prefix << ".entropy = " << num(s.entropy) << '\n'
        << prefix << ".chi_square = " << num(s.chi_square) << '\n'
        << prefix << ".contrast = " << num(s.contrast) << '\n'
        << prefix << ".homogeneity = " << num(s.homogeneity) << '\n'
        << prefix << ".energy = " << num(s.energy) << '\n'
        << prefix << ".correlation = " << opt(s.adjacent_correlation) << '\n';
  };
  if (r.plain) stats("plain", *r.plain);
  if (r.cipher) stats("cipher", *r.cipher);
  if (r.plain && r.cipher) out << "cross_correlation = " << opt(r.cross_correlation) << '\n';
  if (r.npcr) out << "npcr = " << num(*r.npcr) << '\n';
  if (r.uaci) out << "uaci = " << num(*r.uaci) << '\n';
  return out.str();
}

/// `value,count` header followed by exactly 256 data rows.
inline std::string format_histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "value,count\n";
  for (std::size_t v = 0; v < h.counts.size(); ++v) out << v << ',' << h.counts[v] << '\n';
  return out.str();
}

}  // namespace noisecrypt

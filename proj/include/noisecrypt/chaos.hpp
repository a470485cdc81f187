#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "noisecrypt/error.hpp"
#include "noisecrypt/grid.hpp"

namespace noisecrypt {

/// Control parameters of the two hybrid maps. Validated on construction:
/// r_lt in (0, 4], r_lsc in [0, 1].
class MapParams {
 public:
  static constexpr double default_r_lt = 3.99;
  static constexpr double default_r_lsc = 0.5;

  MapParams() = default;

  MapParams(double r_lt, double r_lsc) : r_lt_(r_lt), r_lsc_(r_lsc) {
    if (!(r_lt > 0.0 && r_lt <= 4.0)) {
      throw ParameterError("r_lt must lie in (0, 4], got " + std::to_string(r_lt));
    }
    if (!(r_lsc >= 0.0 && r_lsc <= 1.0)) {
      throw ParameterError("r_lsc must lie in [0, 1], got " + std::to_string(r_lsc));
    }
  }

  double r_lt() const noexcept { return r_lt_; }
  double r_lsc() const noexcept { return r_lsc_; }

  friend bool operator==(const MapParams&, const MapParams&) = default;

 private:
  double r_lt_ = default_r_lt;
  double r_lsc_ = default_r_lsc;
};

enum class MapKind { logistic_tent, logistic_sine_cosine };

struct ChaoticSequence {
  MapKind kind;
  double seed;
  std::vector<double> values;  // x_1 .. x_n; the seed is not included

  std::size_t length() const noexcept { return values.size(); }
};

/// Scale applied before rounding chaotic reals to integers.
inline constexpr double quantization_scale = 1e14;

namespace detail {

inline double lt_next(double x, double r) noexcept {
  const double logistic = r * x * (1.0 - x);
  const double tent = x < 0.5 ? (4.0 - r) * x / 2.0 : (4.0 - r) * (1.0 - x) / 2.0;
  return std::fmod(logistic + tent, 1.0);
}

inline double lsc_next(double x, double r) noexcept {
  constexpr double pi = std::numbers::pi;
  return std::cos(pi * (4.0 * r * x * (1.0 - x) + (1.0 - r) * std::sin(pi * x) - 0.5));
}

inline void check_r_lt(double r) {
  if (!(r > 0.0 && r <= 4.0)) {
    throw ParameterError("logistic-tent r must lie in (0, 4], got " + std::to_string(r));
  }
}

inline void check_r_lsc(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw ParameterError("logistic-sine-cosine r must lie in [0, 1], got " + std::to_string(r));
  }
}

inline void check_lt_state(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw ParameterError("logistic-tent state must lie in [0, 1), got " + std::to_string(x));
  }
}

}  // namespace detail

/// One logistic-tent iteration, taken mod 1.
inline double lt_step(double x, double r) {
  detail::check_lt_state(x);
  detail::check_r_lt(r);
  return detail::lt_next(x, r);
}

/// One logistic-sine-cosine iteration. Total in x; output in [-1, 1].
inline double lsc_step(double x, double r) {
  detail::check_r_lsc(r);
  if (!std::isfinite(x)) {
    throw ParameterError("logistic-sine-cosine state must be finite");
  }
  return detail::lsc_next(x, r);
}

/// Iterates the chosen map n times from x0 and returns x_1 .. x_n.
inline ChaoticSequence generate(double x0, double r, std::size_t n, MapKind kind) {
  if (n == 0) {
    throw ParameterError("sequence length must be at least 1");
  }
  ChaoticSequence seq{kind, x0, {}};
  seq.values.reserve(n);
  double x = x0;
  if (kind == MapKind::logistic_tent) {
    detail::check_lt_state(x0);
    detail::check_r_lt(r);
    for (std::size_t k = 0; k < n; ++k) {
      x = detail::lt_next(x, r);
      seq.values.push_back(x);
    }
  } else {
    detail::check_r_lsc(r);
    if (!std::isfinite(x0)) {
      throw ParameterError("logistic-sine-cosine seed must be finite");
    }
    for (std::size_t k = 0; k < n; ++k) {
      x = detail::lsc_next(x, r);
      seq.values.push_back(x);
    }
  }
  return seq;
}

/// EuclideanMod(round(x * 1e14), modulus). Rounding is half away from zero;
/// the result is non-negative for negative x.
inline std::uint32_t quantize_value(double x, std::uint32_t modulus) noexcept {
  const auto scaled = static_cast<std::int64_t>(std::round(x * quantization_scale));
  const auto m = static_cast<std::int64_t>(modulus);
  auto v = scaled % m;
  if (v < 0) v += m;
  return static_cast<std::uint32_t>(v);
}

inline std::vector<std::uint32_t> quantize(const ChaoticSequence& seq, std::uint32_t modulus) {
  if (modulus < 2) {
    throw ParameterError("quantization modulus must be at least 2");
  }
  std::vector<std::uint32_t> out;
  out.reserve(seq.values.size());
  for (double x : seq.values) out.push_back(quantize_value(x, modulus));
  return out;
}

/// Element k lands at row k / cols, column k % cols.
template <typename T, typename U>
Grid<T> reshape_row_major(const std::vector<U>& values, std::size_t rows, std::size_t cols) {
  if (values.size() != rows * cols) {
    throw ParameterError("reshape: " + std::to_string(values.size()) + " values cannot fill " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  std::vector<T> data;
  data.reserve(values.size());
  for (const U& v : values) data.push_back(static_cast<T>(v));
  return Grid<T>(rows, cols, std::move(data));
}

}  // namespace noisecrypt

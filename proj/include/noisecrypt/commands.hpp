#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "noisecrypt/chaos.hpp"
#include "noisecrypt/error.hpp"
#include "noisecrypt/io.hpp"
#include "noisecrypt/key_schedule.hpp"
#include "noisecrypt/metrics.hpp"
#include "noisecrypt/pgm.hpp"
#include "noisecrypt/pipeline.hpp"
#include "noisecrypt/sbox.hpp"

namespace noisecrypt::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_validation = 2,
  exit_io = 3,
  exit_integrity = 4,
};

inline int exit_code_for(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::io: return exit_io;
    case ErrorCategory::integrity: return exit_integrity;
    default: return exit_validation;
  }
}

/// Runs `body`, converting library errors into `error:<category>: ...` on
/// `err` and the matching exit code.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error:" << to_string(e.category()) << ": " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error:io: " << e.what() << '\n';
    return exit_io;
  } catch (const std::bad_alloc&) {
    err << "error:io: out of memory\n";
    return exit_io;
  }
}

inline SBoxSet load_boxes(const std::optional<std::filesystem::path>& sbox_override) {
  return sbox_override ? sbox_set_with_override(load_sbox_file(*sbox_override))
                       : default_sbox_set();
}

/// Pixel position and bit index flipped by the differential command.
struct BitFlip {
  std::size_t row = 0;
  std::size_t col = 0;
  unsigned bit = 0;
};

/// Accepts "row,col,bit" or "none".
inline std::optional<BitFlip> parse_bit_flip(std::string_view text) {
  if (text == "none") return std::nullopt;
  const auto bad = [&] {
    return ParameterError("bit position must be 'row,col,bit' or 'none', got '" +
                          std::string(text) + "'");
  };
  std::vector<std::size_t> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    std::size_t value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size()) throw bad();
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw bad();
  if (parts[2] > 7) throw ParameterError("bit index must lie in [0, 7]");
  return BitFlip{parts[0], parts[1], static_cast<unsigned>(parts[2])};
}

inline GrayImage flip_bit(GrayImage img, const BitFlip& flip) {
  if (flip.row >= img.rows() || flip.col >= img.cols()) {
    throw ParameterError("bit position (" + std::to_string(flip.row) + "," +
                         std::to_string(flip.col) + ") lies outside the " +
                         detail::shape_string(img) + " image");
  }
  img(flip.row, flip.col) ^= static_cast<std::uint8_t>(1u << flip.bit);
  return img;
}

// ---------------------------------------------------------------------------

struct EncryptOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path key_out;
  double r_lt = MapParams::default_r_lt;
  double r_lsc = MapParams::default_r_lsc;
  std::size_t block_size = 16;
  std::optional<std::filesystem::path> sbox_override;
};

inline int cmd_encrypt(const EncryptOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MapParams params(opt.r_lt, opt.r_lsc);
    const SBoxSet boxes = load_boxes(opt.sbox_override);
    const GrayImage plain = load_pgm(opt.input);
    const CipherArtifacts result = encrypt(plain, params, opt.block_size, boxes);

    StagedFile cipher_file(opt.output, write_pgm(result.cipher));
    StagedFile key_file(opt.key_out, as_bytes(format_key_file(result.key)));
    cipher_file.commit();
    key_file.commit();

    out << "encrypted " << plain.rows() << "x" << plain.cols() << " z=" << opt.block_size
        << " cipher_entropy=" << std::fixed << std::setprecision(4)
        << entropy(histogram(result.cipher)) << '\n';
    return static_cast<int>(exit_ok);
  });
}

struct DecryptOptions {
  std::filesystem::path input;
  std::filesystem::path key_file;
  std::filesystem::path output;
  std::optional<std::filesystem::path> sbox_override;
};

inline int cmd_decrypt(const DecryptOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const KeyMetadata meta = read_key_file(opt.key_file);
    const SBoxSet boxes = load_boxes(opt.sbox_override);
    const GrayImage cipher = load_pgm(opt.input);
    const GrayImage plain = decrypt(cipher, meta, boxes);
    save_pgm(opt.output, plain);
    out << "decrypted " << plain.rows() << "x" << plain.cols() << " hash_prefix "
        << meta.hash_prefix << " verified\n";
    return static_cast<int>(exit_ok);
  });
}

struct AnalyzeOptions {
  std::filesystem::path plain;
  std::filesystem::path cipher;
  std::filesystem::path report_out;
  std::optional<std::filesystem::path> plain_histogram_csv;
  std::optional<std::filesystem::path> cipher_histogram_csv;
};

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GrayImage plain = load_pgm(opt.plain);
    const GrayImage cipher = load_pgm(opt.cipher);
    const MetricsReport report = full_report(plain, cipher);

    StagedFile report_file(opt.report_out, as_bytes(format_report(report)));
    std::optional<StagedFile> plain_csv, cipher_csv;
    if (opt.plain_histogram_csv) {
      plain_csv.emplace(*opt.plain_histogram_csv,
                        as_bytes(format_histogram_csv(histogram(plain))));
    }
    if (opt.cipher_histogram_csv) {
      cipher_csv.emplace(*opt.cipher_histogram_csv,
                         as_bytes(format_histogram_csv(histogram(cipher))));
    }
    report_file.commit();
    if (plain_csv) plain_csv->commit();
    if (cipher_csv) cipher_csv->commit();

    out << std::fixed << std::setprecision(4) << "entropy plain=" << report.plain->entropy
        << " cipher=" << report.cipher->entropy << '\n';
    return static_cast<int>(exit_ok);
  });
}

struct DiffOptions {
  std::filesystem::path plain;
  std::filesystem::path report_out;
  double r_lt = MapParams::default_r_lt;
  double r_lsc = MapParams::default_r_lsc;
  std::size_t block_size = 16;
  std::string bit_position = "0,0,0";
  std::optional<std::filesystem::path> sbox_override;
};

struct DiffResult {
  double npcr = 0.0;
  double uaci = 0.0;
};

/// Encrypts the image and a one-bit-modified copy, each under keys derived
/// from its own hash, and compares the two ciphers.
inline DiffResult differential(const GrayImage& plain, const std::optional<BitFlip>& flip,
                               const MapParams& params, std::size_t block_size,
                               const SBoxSet& boxes) {
  const GrayImage tampered = flip ? flip_bit(plain, *flip) : plain;
  const GrayImage c1 = encrypt(plain, params, block_size, boxes).cipher;
  const GrayImage c2 = encrypt(tampered, params, block_size, boxes).cipher;
  return {npcr(c1, c2), uaci(c1, c2)};
}

inline int cmd_diff(const DiffOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MapParams params(opt.r_lt, opt.r_lsc);
    const auto flip = parse_bit_flip(opt.bit_position);
    const SBoxSet boxes = load_boxes(opt.sbox_override);
    const GrayImage plain = load_pgm(opt.plain);
    const DiffResult result = differential(plain, flip, params, opt.block_size, boxes);

    MetricsReport report;
    report.width = plain.cols();
    report.height = plain.rows();
    report.npcr = result.npcr;
    report.uaci = result.uaci;
    write_file_atomic(opt.report_out, as_bytes(format_report(report)));

    out << std::fixed << std::setprecision(4) << "npcr=" << result.npcr
        << " uaci=" << result.uaci << '\n';
    return static_cast<int>(exit_ok);
  });
}

}  // namespace noisecrypt::cli

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "noisecrypt/chaos.hpp"
#include "noisecrypt/error.hpp"
#include "noisecrypt/grid.hpp"
#include "noisecrypt/key_schedule.hpp"
#include "noisecrypt/sbox.hpp"

namespace noisecrypt {

namespace detail {

inline void check_chain_inputs(const GrayImage& img, const ByteGrid& key2,
                               std::size_t block_size) {
  check_block_geometry(img.rows(), img.cols(), block_size);
  if (key2.rows() != block_size || key2.cols() != block_size) {
    throw ParameterError("key2 must be " + std::to_string(block_size) + "x" +
                         std::to_string(block_size) + ", got " + shape_string(key2));
  }
}

/// Calls f(here, prev, in_block) for every pixel, visiting blocks in
/// row-major block order. `prev` is the same position in the previous block,
/// or npos in the first block, which pairs with key2 entry `in_block`.
template <typename F>
void for_each_chained_pixel(std::size_t rows, std::size_t cols, std::size_t z, F&& f) {
  const std::size_t blocks_across = cols / z;
  const std::size_t block_count = (rows / z) * blocks_across;
  std::size_t prev_r0 = 0, prev_c0 = 0;
  for (std::size_t b = 0; b < block_count; ++b) {
    const std::size_t r0 = (b / blocks_across) * z;
    const std::size_t c0 = (b % blocks_across) * z;
    for (std::size_t i = 0; i < z; ++i) {
      for (std::size_t j = 0; j < z; ++j) {
        const std::size_t here = (r0 + i) * cols + (c0 + j);
        const std::size_t prev =
            b == 0 ? static_cast<std::size_t>(-1) : (prev_r0 + i) * cols + (prev_c0 + j);
        f(here, prev, i * z + j);
      }
    }
    prev_r0 = r0;
    prev_c0 = c0;
  }
}

}  // namespace detail

/// X_1 = B_1 ^ key2, X_k = B_k ^ X_{k-1} over Z x Z blocks in row-major
/// block order.
inline GrayImage block_chain_forward(const GrayImage& sub, const ByteGrid& key2,
                                     std::size_t block_size) {
  detail::check_chain_inputs(sub, key2, block_size);
  GrayImage out(sub.rows(), sub.cols());
  const auto src = sub.flat();
  const auto key = key2.flat();
  auto dst = out.flat();
  detail::for_each_chained_pixel(sub.rows(), sub.cols(), block_size,
                                 [&](std::size_t here, std::size_t prev, std::size_t in_block) {
                                   const std::uint8_t mask =
                                       prev == static_cast<std::size_t>(-1) ? key[in_block]
                                                                            : dst[prev];
                                   dst[here] = src[here] ^ mask;
                                 });
  return out;
}

/// B_1 = X_1 ^ key2, B_k = X_k ^ X_{k-1}. Reads only the received blocks, so
/// blocks are independent of one another.
inline GrayImage block_chain_inverse(const GrayImage& x, const ByteGrid& key2,
                                     std::size_t block_size) {
  detail::check_chain_inputs(x, key2, block_size);
  GrayImage out(x.rows(), x.cols());
  const auto src = x.flat();
  const auto key = key2.flat();
  auto dst = out.flat();
  detail::for_each_chained_pixel(x.rows(), x.cols(), block_size,
                                 [&](std::size_t here, std::size_t prev, std::size_t in_block) {
                                   const std::uint8_t mask =
                                       prev == static_cast<std::size_t>(-1) ? key[in_block]
                                                                            : src[prev];
                                   dst[here] = src[here] ^ mask;
                                 });
  return out;
}

/// Pixel-wise XOR with the noise layer. Self-inverse.
inline GrayImage noise_xor(const GrayImage& img, const ByteGrid& key3) {
  detail::require_same_shape(img, key3, "noise_xor");
  GrayImage out(img.rows(), img.cols());
  const auto src = img.flat();
  const auto key = key3.flat();
  auto dst = out.flat();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] ^ key[k];
  return out;
}

inline GrayImage encrypt_with_schedule(const GrayImage& plain, const KeySchedule& keys,
                                       const SBoxSet& boxes) {
  const GrayImage substituted = substitute_image(plain, keys.key1, boxes);
  const GrayImage chained = block_chain_forward(substituted, keys.key2, keys.block_size);
  return noise_xor(chained, keys.key3);
}

inline GrayImage decrypt_with_schedule(const GrayImage& cipher, const KeySchedule& keys,
                                       const SBoxSet& boxes) {
  const GrayImage chained = noise_xor(cipher, keys.key3);
  const GrayImage substituted = block_chain_inverse(chained, keys.key2, keys.block_size);
  return inverse_substitute_image(substituted, keys.key1, boxes);
}

struct CipherArtifacts {
  GrayImage cipher;
  KeyMetadata key;
};

/// Full forward pipeline. Keys are re-derived from the plaintext's own hash,
/// so every distinct plaintext encrypts under a distinct keystream.
inline CipherArtifacts encrypt(const GrayImage& plain, const MapParams& params,
                               std::size_t block_size, const SBoxSet& boxes) {
  check_block_geometry(plain.rows(), plain.cols(), block_size);
  const SeedMaterial seed = derive_seed(plain);
  const KeySchedule keys = make_key_schedule(seed, params, block_size, plain.rows(), plain.cols());
  KeyMetadata meta;
  meta.hash_prefix = seed.hash_prefix;
  meta.params = params;
  meta.block_size = block_size;
  meta.width = plain.cols();
  meta.height = plain.rows();
  return CipherArtifacts{encrypt_with_schedule(plain, keys, boxes), meta};
}

inline CipherArtifacts encrypt(const GrayImage& plain, const MapParams& params = {},
                               std::size_t block_size = 16) {
  return encrypt(plain, params, block_size, default_sbox_set());
}

/// Inverse pipeline. Throws IntegrityError when the recovered plaintext's
/// hash prefix differs from the key file's, which indicates a wrong key or a
/// corrupted cipher. A single corrupted cipher byte garbles the matching
/// pixel of its own block and of the block that follows it.
inline GrayImage decrypt(const GrayImage& cipher, const KeyMetadata& meta, const SBoxSet& boxes) {
  validate(meta);
  if (cipher.rows() != meta.height || cipher.cols() != meta.width) {
    throw ValidationError("cipher is " + detail::shape_string(cipher) + " but key file expects " +
                          std::to_string(meta.height) + "x" + std::to_string(meta.width));
  }
  const SeedMaterial seed = seed_from_prefix(meta.hash_prefix);
  const KeySchedule keys =
      make_key_schedule(seed, meta.params, meta.block_size, cipher.rows(), cipher.cols());
  GrayImage plain = decrypt_with_schedule(cipher, keys, boxes);
  const SeedMaterial recovered = derive_seed(plain);
  if (recovered.hash_prefix != meta.hash_prefix) {
    throw IntegrityError("recovered plaintext hash prefix " + recovered.hash_prefix +
                         " does not match key file " + meta.hash_prefix);
  }
  return plain;
}

inline GrayImage decrypt(const GrayImage& cipher, const KeyMetadata& meta) {
  return decrypt(cipher, meta, default_sbox_set());
}

}  // namespace noisecrypt

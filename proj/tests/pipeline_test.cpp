#include <gtest/gtest.h>

#include <random>

#include "noisecrypt/pipeline.hpp"
#include "oracle/reference.hpp"
#include "test_support.hpp"

namespace nc = noisecrypt;
using testing_support::random_image;

namespace {

nc::GrayImage image_from(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> px) {
  return nc::GrayImage(rows, cols, std::move(px));
}

}  // namespace

TEST(BlockChain, SingleBlockIsKeyXor) {
  std::mt19937 rng(1);
  const auto img = random_image(8, 8, rng);
  const auto key2 = random_image(8, 8, rng);
  const auto out = nc::block_chain_forward(img, key2, 8);
  for (std::size_t k = 0; k < img.size(); ++k) {
    ASSERT_EQ(out.flat()[k], img.flat()[k] ^ key2.flat()[k]);
  }
}

TEST(BlockChain, TwoBlocks) {
  std::mt19937 rng(2);
  const auto img = random_image(4, 8, rng);
  const auto key2 = random_image(4, 4, rng);
  const auto out = nc::block_chain_forward(img, key2, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      ASSERT_EQ(out(i, j + 4), img(i, j + 4) ^ img(i, j) ^ key2(i, j));
    }
  }
}

TEST(BlockChain, ZerosStayZero) {
  const nc::GrayImage zero(16, 16, 0);
  EXPECT_EQ(nc::block_chain_forward(zero, nc::ByteGrid(4, 4, 0), 4), zero);
}

TEST(BlockChain, HandComputedFourBlockChain) {
  // 4x4, Z=2. Blocks in row-major block order: TL, TR, BL, BR.
  const auto sub = image_from(4, 4, {1, 2, 3, 4,  //
                                     5, 6, 7, 8,  //
                                     9, 10, 11, 12,  //
                                     13, 14, 15, 16});
  const auto key2 = image_from(2, 2, {0xA0, 0xB0, 0xC0, 0xD0});
  // X1 = TL ^ key2; X2 = TR ^ X1; X3 = BL ^ X2; X4 = BR ^ X3
  const std::uint8_t x1[4] = {1 ^ 0xA0, 2 ^ 0xB0, 5 ^ 0xC0, 6 ^ 0xD0};
  const std::uint8_t x2[4] = {std::uint8_t(3 ^ x1[0]), std::uint8_t(4 ^ x1[1]),
                              std::uint8_t(7 ^ x1[2]), std::uint8_t(8 ^ x1[3])};
  const std::uint8_t x3[4] = {std::uint8_t(9 ^ x2[0]), std::uint8_t(10 ^ x2[1]),
                              std::uint8_t(13 ^ x2[2]), std::uint8_t(14 ^ x2[3])};
  const std::uint8_t x4[4] = {std::uint8_t(11 ^ x3[0]), std::uint8_t(12 ^ x3[1]),
                              std::uint8_t(15 ^ x3[2]), std::uint8_t(16 ^ x3[3])};
  const auto expected = image_from(4, 4, {x1[0], x1[1], x2[0], x2[1],  //
                                          x1[2], x1[3], x2[2], x2[3],  //
                                          x3[0], x3[1], x4[0], x4[1],  //
                                          x3[2], x3[3], x4[2], x4[3]});
  const auto out = nc::block_chain_forward(sub, key2, 2);
  EXPECT_EQ(out, expected);
  EXPECT_EQ(nc::block_chain_inverse(out, key2, 2), sub);
}

TEST(BlockChain, InverseOfZeroImage) {
  std::mt19937 rng(3);
  const auto key2 = random_image(4, 4, rng);
  const auto out = nc::block_chain_inverse(nc::GrayImage(8, 12, 0), key2, 4);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      const std::uint8_t expected = (i < 4 && j < 4) ? key2(i, j) : 0;
      ASSERT_EQ(out(i, j), expected);
    }
  }
}

TEST(BlockChain, RoundTrip) {
  std::mt19937 rng(4);
  const auto img = random_image(64, 64, rng);
  const auto key2 = random_image(16, 16, rng);
  EXPECT_EQ(nc::block_chain_inverse(nc::block_chain_forward(img, key2, 16), key2, 16), img);
}

TEST(BlockChain, Errors) {
  EXPECT_THROW(nc::block_chain_forward(nc::GrayImage(10, 16), nc::ByteGrid(4, 4), 4),
               nc::ValidationError);
  EXPECT_THROW(nc::block_chain_inverse(nc::GrayImage(16, 10), nc::ByteGrid(4, 4), 4),
               nc::ValidationError);
  EXPECT_THROW(nc::block_chain_forward(nc::GrayImage(16, 16), nc::ByteGrid(2, 2), 4),
               nc::ParameterError);
}

TEST(NoiseXor, Properties) {
  std::mt19937 rng(5);
  const auto img = random_image(32, 32, rng);
  const auto key3 = random_image(32, 32, rng);
  EXPECT_EQ(nc::noise_xor(nc::noise_xor(img, key3), key3), img);
  EXPECT_EQ(nc::noise_xor(img, nc::ByteGrid(32, 32, 0)), img);
  EXPECT_EQ(nc::noise_xor(nc::GrayImage(4, 4, 0x55), nc::ByteGrid(4, 4, 0xAA)),
            nc::GrayImage(4, 4, 0xFF));
  EXPECT_THROW(nc::noise_xor(img, nc::ByteGrid(32, 31)), nc::ParameterError);
}

TEST(Encrypt, GoldenFourByFour) {
  // Frozen from tests/oracle/golden_vectors.py.
  std::vector<std::uint8_t> px(16);
  for (int k = 0; k < 16; ++k) px[k] = static_cast<std::uint8_t>(17 * k);
  const auto result = nc::encrypt(image_from(4, 4, px), nc::MapParams(3.99, 0.5), 2);
  EXPECT_EQ(result.key.hash_prefix, "a8faed6abbf");
  EXPECT_EQ(nc::flatten_row_major(result.cipher),
            (std::vector<std::uint8_t>{2, 166, 212, 15, 251, 55, 28, 231, 0, 88, 133, 181, 171,
                                       203, 98, 0}));

  const auto zeros = nc::encrypt(nc::GrayImage(4, 4, 0), nc::MapParams(3.99, 0.5), 2);
  EXPECT_EQ(zeros.key.hash_prefix, "374708fff77");
  EXPECT_EQ(nc::flatten_row_major(zeros.cipher),
            (std::vector<std::uint8_t>{178, 105, 183, 133, 62, 155, 119, 6, 12, 187, 231, 86, 209,
                                       243, 199, 190}));
}

TEST(Encrypt, MatchesStraightLineOracle) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t z = 1u << (rng() % 3);
    const std::size_t rows = z * (1 + rng() % 4), cols = z * (1 + rng() % 4);
    const auto img = random_image(rows, cols, rng);
    const auto got = nc::encrypt(img, nc::MapParams(3.99, 0.5), z).cipher;
    const auto want = reference::encrypt(nc::flatten_row_major(img), static_cast<int>(rows),
                                         static_cast<int>(cols), static_cast<int>(z), 3.99, 0.5);
    ASSERT_EQ(nc::flatten_row_major(got), want) << rows << "x" << cols << " z=" << z;
  }
}

TEST(Encrypt, RoundTripAndDeterminism) {
  std::mt19937 rng(7);
  for (std::size_t size : {64u, 256u}) {
    const auto img = random_image(size, size, rng);
    const auto a = nc::encrypt(img);
    const auto b = nc::encrypt(img);
    EXPECT_EQ(a.cipher, b.cipher);
    EXPECT_EQ(a.key, b.key);
    EXPECT_EQ(nc::decrypt(a.cipher, a.key), img);
  }
}

TEST(Encrypt, MetadataEchoesInputs) {
  std::mt19937 rng(8);
  const auto img = random_image(32, 48, rng);
  const auto out = nc::encrypt(img, nc::MapParams(3.7, 0.25), 8);
  EXPECT_EQ(out.key.width, 48u);
  EXPECT_EQ(out.key.height, 32u);
  EXPECT_EQ(out.key.block_size, 8u);
  EXPECT_EQ(out.key.params, nc::MapParams(3.7, 0.25));
  EXPECT_EQ(out.key.hash_prefix, nc::derive_seed(img).hash_prefix);
  EXPECT_EQ(out.cipher.rows(), 32u);
  EXPECT_EQ(out.cipher.cols(), 48u);
}

TEST(Encrypt, Errors) {
  EXPECT_THROW(nc::encrypt(nc::GrayImage(250, 250)), nc::ValidationError);
  EXPECT_THROW(nc::encrypt(nc::GrayImage{}), nc::ParameterError);
  EXPECT_THROW(nc::encrypt(nc::GrayImage(16, 16), {}, 0), nc::ParameterError);
}

TEST(Encrypt, StageIsolationWithZeroKeys) {
  std::mt19937 rng(9);
  const auto img = random_image(32, 32, rng);
  nc::KeySchedule keys;
  keys.key1 = nc::SelectorGrid(32, 32, 0);
  keys.key2 = nc::ByteGrid(8, 8, 0);
  keys.key3 = nc::ByteGrid(32, 32, 0);
  keys.block_size = 8;
  const auto boxes = nc::default_sbox_set();

  const auto substituted = nc::substitute_image(img, keys.key1, boxes);
  const auto cipher = nc::encrypt_with_schedule(img, keys, boxes);
  EXPECT_EQ(cipher, nc::block_chain_forward(substituted, keys.key2, 8));
  // With zero key2 the chain reduces to running XOR of substituted blocks;
  // the first block is the substitution alone.
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      ASSERT_EQ(cipher(i, j), reference::fips197_sbox[img(i, j)]);
    }
  }
  EXPECT_EQ(nc::decrypt_with_schedule(cipher, keys, boxes), img);
}

TEST(Encrypt, AvalancheOnSingleBitFlip) {
  std::mt19937 rng(10);
  const auto img = random_image(256, 256, rng);
  auto flipped = img;
  flipped(100, 37) ^= 0x08;
  const auto a = nc::encrypt(img).cipher;
  const auto b = nc::encrypt(flipped).cipher;
  std::size_t differing = 0;
  for (std::size_t k = 0; k < a.size(); ++k) differing += a.flat()[k] != b.flat()[k];
  EXPECT_GE(static_cast<double>(differing) / static_cast<double>(a.size()), 0.995);
}

TEST(Decrypt, AlteredHashPrefixIsIntegrityError) {
  std::mt19937 rng(11);
  const auto img = random_image(64, 64, rng);
  const auto out = nc::encrypt(img);
  auto key = out.key;
  key.hash_prefix[10] = key.hash_prefix[10] == '0' ? '1' : '0';
  EXPECT_THROW(nc::decrypt(out.cipher, key), nc::IntegrityError);
}

TEST(Decrypt, CorruptedCipherIsIntegrityError) {
  std::mt19937 rng(12);
  const auto img = random_image(64, 64, rng);
  const auto out = nc::encrypt(img, {}, 16);
  auto cipher = out.cipher;
  cipher(20, 3) ^= 0x01;  // block 4 (second block row, first column)
  EXPECT_THROW(nc::decrypt(cipher, out.key), nc::IntegrityError);

  // The corruption garbles the matching pixel of its own block and of the
  // next block in chaining order, and nothing else.
  const auto seed = nc::seed_from_prefix(out.key.hash_prefix);
  const auto keys = nc::make_key_schedule(seed, out.key.params, 16, 64, 64);
  const auto garbled = nc::decrypt_with_schedule(cipher, keys, nc::default_sbox_set());
  std::vector<std::pair<std::size_t, std::size_t>> diffs;
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      if (garbled(i, j) != img(i, j)) diffs.emplace_back(i, j);
    }
  }
  const std::vector<std::pair<std::size_t, std::size_t>> expected = {{20, 3}, {20, 19}};
  EXPECT_EQ(diffs, expected);
}

TEST(Decrypt, PerturbedParameterFailsIntegrity) {
  std::mt19937 rng(13);
  const auto img = random_image(64, 64, rng);
  const auto out = nc::encrypt(img);
  auto key = out.key;
  key.params = nc::MapParams(key.params.r_lt() + 1e-10, key.params.r_lsc());
  EXPECT_THROW(nc::decrypt(out.cipher, key), nc::IntegrityError);
}

TEST(Decrypt, DimensionMismatchIsValidationError) {
  std::mt19937 rng(14);
  const auto out = nc::encrypt(random_image(32, 32, rng));
  EXPECT_THROW(nc::decrypt(nc::GrayImage(32, 48), out.key), nc::ValidationError);
}

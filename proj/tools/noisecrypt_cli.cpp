#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "noisecrypt/commands.hpp"

namespace nc = noisecrypt;
namespace cli = noisecrypt::cli;

namespace {

void add_map_options(CLI::App* cmd, double& r_lt, double& r_lsc, std::size_t& block_size) {
  cmd->add_option("--r-lt", r_lt, "logistic-tent control parameter, (0, 4]")
      ->capture_default_str();
  cmd->add_option("--r-lsc", r_lsc, "logistic-sine-cosine control parameter, [0, 1]")
      ->capture_default_str();
  cmd->add_option("-z,--block-size", block_size, "chaining block edge Z")->capture_default_str();
}

void add_sbox_option(CLI::App* cmd, std::optional<std::filesystem::path>& path) {
  cmd->add_option("--sbox", path,
                  "file of 256 decimal bytes replacing the selector-1 (chaotic) S-box");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisecrypt: chaotic grayscale image encryption and security metrics"};
  app.require_subcommand(1);

  cli::EncryptOptions enc;
  auto* encrypt = app.add_subcommand("encrypt", "encrypt a P5 PGM and write its key file");
  encrypt->add_option("input", enc.input, "plain image (PGM)")->required();
  encrypt->add_option("output", enc.output, "cipher image (PGM)")->required();
  encrypt->add_option("-k,--key-out", enc.key_out, "key file to write (secret)")->required();
  add_map_options(encrypt, enc.r_lt, enc.r_lsc, enc.block_size);
  add_sbox_option(encrypt, enc.sbox_override);

  cli::DecryptOptions dec;
  auto* decrypt = app.add_subcommand("decrypt", "decrypt a cipher PGM and verify its hash prefix");
  decrypt->add_option("input", dec.input, "cipher image (PGM)")->required();
  decrypt->add_option("output", dec.output, "recovered image (PGM)")->required();
  decrypt->add_option("-k,--key", dec.key_file, "key file written by encrypt")->required();
  add_sbox_option(decrypt, dec.sbox_override);

  cli::AnalyzeOptions ana;
  auto* analyze = app.add_subcommand("analyze", "compute security metrics for a plain/cipher pair");
  analyze->add_option("plain", ana.plain, "plain image (PGM)")->required();
  analyze->add_option("cipher", ana.cipher, "cipher image (PGM)")->required();
  analyze->add_option("-r,--report", ana.report_out, "metrics report to write")->required();
  analyze->add_option("--plain-hist", ana.plain_histogram_csv, "plain histogram CSV");
  analyze->add_option("--cipher-hist", ana.cipher_histogram_csv, "cipher histogram CSV");

  cli::DiffOptions dif;
  auto* diff = app.add_subcommand("diff", "NPCR/UACI of ciphers of an image and a one-bit variant");
  diff->add_option("plain", dif.plain, "plain image (PGM)")->required();
  diff->add_option("-r,--report", dif.report_out, "report to write")->required();
  diff->add_option("--bit", dif.bit_position, "bit to flip as row,col,bit, or 'none'")
      ->capture_default_str();
  add_map_options(diff, dif.r_lt, dif.r_lsc, dif.block_size);
  add_sbox_option(diff, dif.sbox_override);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error:usage: " << message << '\n';
    return cli::exit_validation;
  }

  if (*encrypt) return cli::cmd_encrypt(enc, std::cout, std::cerr);
  if (*decrypt) return cli::cmd_decrypt(dec, std::cout, std::cerr);
  if (*analyze) return cli::cmd_analyze(ana, std::cout, std::cerr);
  return cli::cmd_diff(dif, std::cout, std::cerr);
}

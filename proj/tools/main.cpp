#include "commands.hpp"

#include <curvforge/json_io.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

namespace {

constexpr int kUsageError = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace curvforge;
  using namespace curvforge::cli;

  CLI::App app{
      "exact algebraic curvature operators, their GL decomposition, and "
      "polynomial-jet connections realizing them"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int m = 3;
  int order = 6;
  std::string mask_text = "weyl,sym,alt";
  std::string mode_text = "linear";
  std::string file;
  std::optional<std::string> out;

  CLI::App* gen = app.add_subcommand(
      "gen", "generate a seeded operator supported on chosen components");
  gen->add_option("--seed", seed, "pseudo-random seed")->capture_default_str();
  gen->add_option("--m", m, "dimension")->capture_default_str();
  gen->add_option("--mask", mask_text, "none or a comma list of weyl,sym,alt")
      ->capture_default_str();
  gen->add_option("--out", out, "write the tensor JSON here");

  CLI::App* check = app.add_subcommand(
      "check", "validate a tensor file and its decomposition");
  check->add_option("file", file, "tensor JSON file")->required();

  CLI::App* realize = app.add_subcommand(
      "realize", "build a connection whose curvature realizes a tensor file");
  realize->add_option("file", file, "tensor JSON file")->required();
  realize->add_option("--mode", mode_text, "linear, ricci-constant, or projective")
      ->capture_default_str();
  realize->add_option("--order", order, "jet truncation order")
      ->capture_default_str();
  realize->add_option("--out", out, "write the connection JSON here");

  CLI::App* verify = app.add_subcommand(
      "verify", "audit a connection file's curvature identities");
  verify->add_option("file", file, "connection JSON file")->required();

  CLI::App* table = app.add_subcommand(
      "table", "realize one seeded operator per component mask");
  table->add_option("--seed", seed, "pseudo-random seed")->capture_default_str();
  table->add_option("--m", m, "dimension")->capture_default_str();
  table->add_option("--order", order, "jet truncation order")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    Report report;
    if (gen->parsed()) {
      report = cmd_gen(seed, m, parse_mask(mask_text), out);
    } else if (check->parsed()) {
      report = cmd_check(file);
    } else if (realize->parsed()) {
      report = cmd_realize(file, parse_mode(mode_text), order, out);
    } else if (verify->parsed()) {
      report = cmd_verify(file);
    } else {
      report = cmd_table(seed, m, order);
    }
    std::cout << report_to_string(report);
    return exit_code(report);
  } catch (const JsonParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

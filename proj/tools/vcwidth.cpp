#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vcwidth/cli.hpp"

int main(int argc, char** argv) {
  using vcw::cli::Command;
  CLI::App app{"Exact treewidth and pathwidth parameterized by vertex cover"};
  app.require_subcommand(1);
  vcw::cli::RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool with_algo) {
    sub->add_option("-i,--input", cfg.input, "input .gr file (default: stdin)");
    if (with_algo) {
      sub->add_option("-a,--algo", cfg.algorithm, "algorithm");
      sub->add_option("--cover", cfg.cover_file, "file with a vertex cover (1-indexed ids)");
      sub->add_flag("--emit-witness", cfg.emit_witness, "print the decomposition in .td format");
      sub->add_flag("--stats", cfg.stats, "print solver counters");
      sub->add_option("--max-k", cfg.max_k, "cap on the cover size")->check(CLI::PositiveNumber);
    }
    sub->add_option("--max-n", cfg.max_n, "cap on the vertex count for oracle algorithms")
        ->check(CLI::PositiveNumber);
  };

  auto* pw = app.add_subcommand("pw", "pathwidth (algorithms: pw-vc, pw-cvc, oracle-pw)");
  add_common(pw, true);
  auto* tw = app.add_subcommand("tw", "treewidth (algorithms: tw-vc-3k, tw-vc-4k, oracle-tw)");
  add_common(tw, true);
  auto* check = app.add_subcommand("check", "validate a .td decomposition against a .gr graph");
  add_common(check, false);
  check->add_option("--td", cfg.decomposition_file, "decomposition file")->required();
  auto* oracle = app.add_subcommand("oracle", "exhaustive treewidth and pathwidth for small graphs");
  add_common(oracle, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vcw::cli::kInputError;
  }

  if (pw->parsed()) cfg.command = Command::Pathwidth;
  if (tw->parsed()) cfg.command = Command::Treewidth;
  if (check->parsed()) cfg.command = Command::Check;
  if (oracle->parsed()) cfg.command = Command::Oracle;
  return vcw::cli::run(cfg, std::cin, std::cout, std::cerr);
}

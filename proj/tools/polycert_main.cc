#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polycert/commands.h"
#include "polycert/text_format.h"

namespace {

void AddGridFlags(CLI::App* cmd, polycert::cli::GridFlags& grid) {
  cmd->add_option("--grid-low", grid.low,
                  "Lower bound per axis (repeatable; default -10)");
  cmd->add_option("--grid-high", grid.high,
                  "Upper bound per axis (repeatable; default 10)");
  cmd->add_option("--grid-count", grid.count,
                  "Points per axis (repeatable; default 21)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = polycert::cli;
  CLI::App app{"Exact diagonalization and positivity certificates for "
               "symmetric polynomial matrices"};
  app.set_version_flag("--version", polycert::kToolVersion);
  app.require_subcommand(1);

  cli::DiagonalizeOptions diag;
  auto* diagonalize = app.add_subcommand("diagonalize",
                                         "Diagonalize by congruence and emit a "
                                         "certificate");
  diagonalize->add_option("matrix", diag.matrix_path, "Matrix file")->required();
  diagonalize->add_option("--mode", diag.mode, "standard | single | bundle")
      ->check(CLI::IsMember({"standard", "single", "bundle"}));
  diagonalize->add_option("--out", diag.out_path, "Certificate path (stdout)");
  diagonalize->add_option("--cap-branches", diag.cap_branches,
                          "Branch cap for bundle mode");
  diagonalize->add_flag("--witness", diag.witness,
                        "Emit the A ~ D equivalence witness");

  std::string verify_matrix, verify_cert, expect_kind;
  auto* verify = app.add_subcommand("verify", "Verify a certificate");
  verify->add_option("matrix", verify_matrix, "Subject matrix file")->required();
  verify->add_option("certificate", verify_cert, "Certificate file")->required();
  verify->add_option("--expect-kind", expect_kind,
                     "Reject certificates of another kind");

  std::string grid_matrix;
  cli::GridFlags psd_flags;
  auto* psd = app.add_subcommand("psd-grid", "Pointwise PSD test on a grid");
  psd->add_option("matrix", grid_matrix, "Matrix file")->required();
  AddGridFlags(psd, psd_flags);

  std::string eq_matrix, eq_cert;
  cli::GridFlags eq_flags;
  auto* equiv = app.add_subcommand(
      "equiv-check", "Compare the PSD oracle with a bundle's sign condition");
  equiv->add_option("matrix", eq_matrix, "Matrix file")->required();
  equiv->add_option("bundle", eq_cert, "Bundle certificate file")->required();
  AddGridFlags(equiv, eq_flags);

  std::vector<std::string> gens_paths;
  std::string gens_out;
  auto* gens = app.add_subcommand("gens", "Ascending products of diagonal "
                                          "generators");
  gens->add_option("matrices", gens_paths, "Diagonal matrix files")->required();
  gens->add_option("--out", gens_out, "Output path (stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitParseOrUsage;
  }

  if (*diagonalize) return cli::Diagonalize(diag, std::cout, std::cerr);
  if (*verify) {
    return cli::Verify(verify_matrix, verify_cert,
                       expect_kind.empty() ? std::nullopt
                                           : std::optional(expect_kind),
                       std::cout, std::cerr);
  }
  if (*psd) return cli::PsdGrid(grid_matrix, psd_flags, std::cout, std::cerr);
  if (*equiv) {
    return cli::EquivCheck(eq_matrix, eq_cert, eq_flags, std::cout, std::cerr);
  }
  if (*gens) return cli::Gens(gens_paths, gens_out, std::cout, std::cerr);
  return cli::kExitParseOrUsage;
}

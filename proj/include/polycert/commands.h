#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polycert::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParseOrUsage = 1,
  kExitAlgorithm = 2,
  kExitVerification = 3,
  kExitGridPositivity = 4,
  kExitDisagreement = 5,
};

/// Per-axis grid flags; a single value applies to every axis, an empty list
/// means the default ([-10, 10], 21 points).
struct GridFlags {
  std::vector<std::string> low;
  std::vector<std::string> high;
  std::vector<long> count;
};

struct DiagonalizeOptions {
  std::string matrix_path;
  std::string mode = "single";  // standard | single | bundle
  std::string out_path;         // empty: stdout
  std::size_t cap_branches = 10000;
  bool witness = false;         // emit the A ~ D equiv certificate instead
};

int Diagonalize(const DiagonalizeOptions& options, std::ostream& out,
                std::ostream& err);

int Verify(const std::string& matrix_path, const std::string& certificate_path,
           const std::optional<std::string>& expect_kind, std::ostream& out,
           std::ostream& err);

int PsdGrid(const std::string& matrix_path, const GridFlags& grid,
            std::ostream& out, std::ostream& err);

int EquivCheck(const std::string& matrix_path,
               const std::string& certificate_path, const GridFlags& grid,
               std::ostream& out, std::ostream& err);

/// Prints the 2^r ascending products of the diagonal matrices in
/// `matrix_paths`, each preceded by a `# indices:` comment.
int Gens(const std::vector<std::string>& matrix_paths,
         const std::string& out_path, std::ostream& out, std::ostream& err);

}  // namespace polycert::cli

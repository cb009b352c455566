#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polycert/certificates.h"
#include "polycert/diagonal.h"
#include "polycert/poly_matrix.h"

namespace polycert {

inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed matrix or certificate text; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Matrix file: `rows cols nvars`, then rows*cols polynomial lines in
/// row-major order. Lines starting with '#' and blank lines are ignored.
PolyMatrix ParseMatrix(std::string_view text);
std::string FormatMatrix(const PolyMatrix& m);

enum class CertificateKind { kDiag, kBundle, kEquiv, kSos, kMembership };

const char* KindName(CertificateKind kind);

struct EquivCertificate {
  EquivWitness witness;
  PolyMatrix target;  ///< a2 in a1 ~ a2; a1 is the verified subject
};

struct MembershipCertificateFile {
  std::vector<PolyMatrix> generators;
  ModuleMembershipCertificate certificate;
};

using CertificateBody =
    std::variant<TracedCertificate, DiagBundle, EquivCertificate,
                 SosMatrixCertificate, MembershipCertificateFile>;

/// Sectioned text: `[meta]` (kind, dims, nvars, ...), `[matrix <name>]`
/// blocks in the matrix format, `[poly <name>]` single lines and
/// `[trace]` / `[trace <l>]` lines `i j num/den` with 1-based indices.
struct CertificateFile {
  CertificateKind kind = CertificateKind::kDiag;
  std::size_t dims = 0;
  std::size_t nvars = 0;
  CertificateBody body;
};

/// Fills kind from the body and dims/nvars from the subject matrix.
CertificateFile MakeCertificateFile(const PolyMatrix& subject,
                                    CertificateBody body);

std::string FormatCertificate(const CertificateFile& file);
CertificateFile ParseCertificate(std::string_view text);

}  // namespace polycert

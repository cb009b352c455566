#include "polycert/commands.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include "polycert/certificates.h"
#include "polycert/diagonal.h"
#include "polycert/positivity.h"
#include "polycert/text_format.h"

namespace polycert::cli {

namespace {

// Usage or input problem, reported with exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PolyMatrix LoadMatrix(const std::string& path) {
  try {
    return ParseMatrix(ReadFile(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

CertificateFile LoadCertificate(const std::string& path) {
  try {
    return ParseCertificate(ReadFile(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void Emit(const std::string& text, const std::string& out_path,
          std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + out_path + "'");
  file << text;
}

std::string FormatPoint(const Point& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    s += (k ? ", " : "") + p[k].ToString();
  }
  return s + ")";
}

Rational ParseRationalFlag(const std::string& text, const char* flag) {
  try {
    return Rational::Parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": not a rational number: '" + text +
                     "'");
  }
}

GridSpec BuildGrid(const GridFlags& flags, std::size_t nvars) {
  GridSpec spec = GridSpec::Uniform(nvars);
  auto pick = [&](std::size_t n_given, const char* flag) {
    if (n_given != 0 && n_given != 1 && n_given != nvars) {
      throw UsageError(std::string(flag) + " given " + std::to_string(n_given) +
                       " times; expected 1 or " + std::to_string(nvars));
    }
  };
  pick(flags.low.size(), "--grid-low");
  pick(flags.high.size(), "--grid-high");
  pick(flags.count.size(), "--grid-count");
  for (std::size_t v = 0; v < nvars; ++v) {
    auto& axis = spec.axes[v];
    if (!flags.low.empty()) {
      axis.low = ParseRationalFlag(flags.low[flags.low.size() == 1 ? 0 : v],
                                   "--grid-low");
    }
    if (!flags.high.empty()) {
      axis.high = ParseRationalFlag(flags.high[flags.high.size() == 1 ? 0 : v],
                                    "--grid-high");
    }
    if (!flags.count.empty()) {
      const long c = flags.count[flags.count.size() == 1 ? 0 : v];
      if (c <= 0) throw UsageError("--grid-count must be positive");
      axis.count = static_cast<std::size_t>(c);
    }
    if (axis.low > axis.high) throw UsageError("grid low exceeds high");
  }
  if (spec.total_points() > spec.max_points) {
    throw UsageError("grid exceeds " + std::to_string(spec.max_points) +
                     " points");
  }
  return spec;
}

void RequireSubjectMatches(const CertificateFile& cert, const PolyMatrix& a) {
  if (cert.dims != a.rows() || !a.is_square() || cert.nvars != a.nvars()) {
    throw UsageError(std::string("certificate of kind ") + KindName(cert.kind) +
                     " declares dims " + std::to_string(cert.dims) +
                     ", nvars " + std::to_string(cert.nvars) +
                     "; subject is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " over " +
                     std::to_string(a.nvars()) + " variables");
  }
  if (!a.is_symmetric()) {
    throw UsageError("subject matrix is not symmetric");
  }
}

// w must be the product of the squared pivots recorded in the trace.
Verdict CheckTrace(const PolyMatrix& a, const TracedCertificate& t) {
  if (t.trace.steps.empty()) return Verdict::Pass();
  std::vector<Polynomial> pivots;
  try {
    pivots = ReplayTracePivots(a, t.trace);
  } catch (const std::exception& e) {
    return Verdict::Fail(std::string("trace replay (") + e.what() + ")");
  }
  Polynomial w = Polynomial::Constant(a.nvars(), Rational(1));
  for (const auto& p : pivots) w *= p * p;
  if (!(w == t.certificate.w)) return Verdict::Fail("w = prod alpha^2 (trace)");
  return Verdict::Pass();
}

template <typename Fn>
int Guard(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseOrUsage;
  } catch (const DiagonalizationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitAlgorithm;
  } catch (const UnverifiedBundle& e) {
    err << "error: bundle does not verify: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseOrUsage;
  }
}

}  // namespace

int Diagonalize(const DiagonalizeOptions& options, std::ostream& out,
                std::ostream& err) {
  return Guard(err, [&] {
    const PolyMatrix a = LoadMatrix(options.matrix_path);
    if (!a.is_square()) throw UsageError("matrix is not square");
    std::optional<CertificateBody> body;
    if (options.mode == "standard" || options.mode == "single") {
      TracedCertificate traced =
          options.mode == "standard"
              ? TracedCertificate{StandardFormDiagonalize(a), {}}
              : SinglePathDiagonalize(a);
      if (options.witness) {
        body = EquivCertificate{WitnessFromDiagonalization(traced.certificate),
                                traced.certificate.d};
      } else {
        body = std::move(traced);
      }
    } else if (options.mode == "bundle") {
      if (options.witness) {
        throw UsageError("--witness needs mode standard or single");
      }
      body = DiagonalizationBundle(a, {options.cap_branches});
    } else {
      throw UsageError("unknown mode '" + options.mode +
                       "' (standard|single|bundle)");
    }
    Emit(FormatCertificate(MakeCertificateFile(a, std::move(*body))),
         options.out_path, out);
    return kExitOk;
  });
}

int Verify(const std::string& matrix_path, const std::string& certificate_path,
           const std::optional<std::string>& expect_kind, std::ostream& out,
           std::ostream& err) {
  return Guard(err, [&] {
    const PolyMatrix a = LoadMatrix(matrix_path);
    const CertificateFile cert = LoadCertificate(certificate_path);
    if (expect_kind && *expect_kind != KindName(cert.kind)) {
      throw UsageError("certificate kind is " + std::string(KindName(cert.kind)) +
                       ", expected " + *expect_kind);
    }
    RequireSubjectMatches(cert, a);
    Verdict verdict;
    std::visit(
        [&](const auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, TracedCertificate>) {
            verdict = VerifyDiagCertificate(a, body.certificate);
            if (verdict) verdict = CheckTrace(a, body);
          } else if constexpr (std::is_same_v<T, DiagBundle>) {
            if (body.branches.empty()) verdict = Verdict::Fail("bundle has no branches");
            for (std::size_t l = 0; l < body.branches.size() && verdict; ++l) {
              verdict = VerifyDiagCertificate(a, body.branches[l].certificate);
              if (verdict) verdict = CheckTrace(a, body.branches[l]);
              if (!verdict) {
                verdict.failure = "branch " + std::to_string(l + 1) + ": " +
                                  verdict.failure;
              }
            }
          } else if constexpr (std::is_same_v<T, EquivCertificate>) {
            if (!body.target.is_symmetric()) {
              throw UsageError("equiv target is not symmetric");
            }
            verdict = VerifyEquivWitness(a, body.target, body.witness);
          } else if constexpr (std::is_same_v<T, SosMatrixCertificate>) {
            verdict = VerifySosMatrix(a, body);
          } else {
            verdict = VerifyTModuleMembership(a, body.generators, body.certificate);
          }
        },
        cert.body);
    if (!verdict) {
      out << "FAILED " << KindName(cert.kind) << ": " << verdict.failure << '\n';
      return kExitVerification;
    }
    out << "verified " << KindName(cert.kind) << '\n';
    return kExitOk;
  });
}

int PsdGrid(const std::string& matrix_path, const GridFlags& grid,
            std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const PolyMatrix a = LoadMatrix(matrix_path);
    if (!a.is_symmetric()) throw UsageError("matrix is not symmetric");
    const PsdGridReport report = PsdOnGrid(a, BuildGrid(grid, a.nvars()));
    for (const auto& p : report.non_psd_points) {
      out << FormatPoint(p) << "; psd=0\n";
    }
    out << "points=" << report.total_points
        << " psd=" << report.total_points - report.non_psd_points.size()
        << " not_psd=" << report.non_psd_points.size() << '\n';
    return report.all_psd() ? kExitOk : kExitGridPositivity;
  });
}

int EquivCheck(const std::string& matrix_path,
               const std::string& certificate_path, const GridFlags& grid,
               std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const PolyMatrix a = LoadMatrix(matrix_path);
    const GridSpec spec = BuildGrid(grid, a.nvars());
    const CertificateFile cert = LoadCertificate(certificate_path);
    if (cert.kind != CertificateKind::kBundle) {
      throw UsageError(std::string("equiv-check needs a bundle certificate, got ") +
                       KindName(cert.kind));
    }
    RequireSubjectMatches(cert, a);
    const auto& bundle = std::get<DiagBundle>(cert.body);
    if (bundle.branches.empty()) throw UnverifiedBundle("bundle has no branches");
    const EquivalenceReport report = CheckBundleEquivalence(a, bundle, spec);
    for (const auto& d : report.disagreements) {
      out << FormatPoint(d.point) << "; oracle=" << d.oracle_psd
          << "; bundle=" << d.bundle_psd << '\n';
    }
    out << "points=" << report.total_points << " agree=" << report.agreements
        << " disagree=" << report.disagreements.size() << '\n';
    return report.disagreements.empty() ? kExitOk : kExitDisagreement;
  });
}

int Gens(const std::vector<std::string>& matrix_paths,
         const std::string& out_path, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    if (matrix_paths.empty()) throw UsageError("gens needs at least one matrix");
    std::vector<PolyMatrix> bases;
    for (const auto& path : matrix_paths) bases.push_back(LoadMatrix(path));
    const auto products = TModuleGenerators(bases);
    std::ostringstream os;
    os << "# generated-by polycert " << kToolVersion << '\n';
    for (std::size_t mask = 0; mask < products.size(); ++mask) {
      os << "# indices:";
      const auto set = IndexSetOfMask(mask);
      if (set.empty()) os << " (empty)";
      for (auto k : set) os << ' ' << k + 1;
      os << '\n' << FormatMatrix(products[mask]);
    }
    Emit(os.str(), out_path, out);
    return kExitOk;
  });
}

}  // namespace polycert::cli

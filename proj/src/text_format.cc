#include "polycert/text_format.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace polycert {

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string text;
};

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Non-blank, non-comment lines.
std::vector<Line> ContentLines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string trimmed = Trim(raw);
    if (!trimmed.empty() && trimmed[0] != '#') out.push_back({number, std::string(raw)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> Words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> words;
  for (std::string w; is >> w;) words.push_back(w);
  return words;
}

std::size_t ParseCount(const std::string& word, const Line& line,
                       const char* what) {
  if (word.empty() || word.size() > 9 ||
      !std::all_of(word.begin(), word.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    const auto col = line.text.find(word);
    throw ParseError(line.number, col == std::string::npos ? 1 : col + 1,
                     std::string("expected ") + what + ", got '" + word + "'");
  }
  return std::stoul(word);
}

Polynomial ParsePolyLine(const Line& line, std::size_t nvars) {
  try {
    return Polynomial::Parse(line.text, nvars);
  } catch (const PolyParseError& e) {
    throw ParseError(line.number, e.column(), e.what());
  }
}

// Parses a matrix block starting at lines[pos]; advances pos.
PolyMatrix ParseMatrixAt(const std::vector<Line>& lines, std::size_t& pos,
                         std::size_t end) {
  if (pos >= end) {
    throw ParseError(lines.empty() ? 1 : lines.back().number, 1,
                     "missing matrix header 'rows cols nvars'");
  }
  const Line& header = lines[pos];
  const auto words = Words(header.text);
  if (words.size() != 3) {
    throw ParseError(header.number, 1,
                     "matrix header must be 'rows cols nvars'");
  }
  const std::size_t rows = ParseCount(words[0], header, "row count");
  const std::size_t cols = ParseCount(words[1], header, "column count");
  const std::size_t nvars = ParseCount(words[2], header, "variable count");
  if (rows == 0 || cols == 0 || nvars == 0) {
    throw ParseError(header.number, 1,
                     "rows, cols and nvars must all be positive");
  }
  ++pos;
  if (end - pos < rows * cols) {
    throw ParseError(pos < end ? lines[end - 1].number : header.number, 1,
                     "expected " + std::to_string(rows * cols) +
                         " entry lines, found " + std::to_string(end - pos));
  }
  PolyMatrix m(rows, cols, nvars);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ParsePolyLine(lines[pos++], nvars);
  }
  return m;
}

}  // namespace

PolyMatrix ParseMatrix(std::string_view text) {
  const auto lines = ContentLines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty matrix file");
  std::size_t pos = 0;
  PolyMatrix m = ParseMatrixAt(lines, pos, lines.size());
  if (pos != lines.size()) {
    throw ParseError(lines[pos].number, 1, "unexpected trailing line");
  }
  return m;
}

std::string FormatMatrix(const PolyMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << ' ' << m.nvars() << '\n';
  for (const auto& e : m.entries()) os << e << '\n';
  return os.str();
}

const char* KindName(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kDiag: return "diag";
    case CertificateKind::kBundle: return "bundle";
    case CertificateKind::kEquiv: return "equiv";
    case CertificateKind::kSos: return "sos";
    case CertificateKind::kMembership: return "membership";
  }
  return "?";
}

namespace {

std::optional<CertificateKind> KindFromName(const std::string& name) {
  for (auto k : {CertificateKind::kDiag, CertificateKind::kBundle,
                 CertificateKind::kEquiv, CertificateKind::kSos,
                 CertificateKind::kMembership}) {
    if (name == KindName(k)) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Writer

class Writer {
 public:
  explicit Writer(const CertificateFile& file) {
    os_ << "# generated-by polycert " << kToolVersion << '\n';
    os_ << "[meta]\n";
    os_ << "kind " << KindName(file.kind) << '\n';
    os_ << "dims " << file.dims << '\n';
    os_ << "nvars " << file.nvars << '\n';
  }

  void Meta(const std::string& key, const std::string& value) {
    os_ << key << (value.empty() ? "" : " ") << value << '\n';
  }
  void Matrix(const std::string& name, const PolyMatrix& m) {
    os_ << "[matrix " << name << "]\n" << FormatMatrix(m);
  }
  void Poly(const std::string& name, const Polynomial& p) {
    os_ << "[poly " << name << "]\n" << p << '\n';
  }
  void Trace(const std::string& name, const PivotTrace& trace) {
    os_ << (name.empty() ? "[trace]" : "[trace " + name + "]") << '\n';
    for (const auto& s : trace.steps) {
      os_ << s.i + 1 << ' ' << s.j + 1 << ' ' << s.scale.numerator().get_str()
          << '/' << s.scale.denominator().get_str() << '\n';
    }
  }
  void Diag(const std::string& suffix, const DiagCertificate& c) {
    Matrix("X_plus" + suffix, c.x_plus);
    Matrix("X_minus" + suffix, c.x_minus);
    Matrix("D" + suffix, c.d);
    Poly("w" + suffix, c.w);
  }
  void Sos(const std::string& name, const SumOfSquares& s) {
    Poly(name, s.value);
    for (std::size_t k = 0; k < s.roots.size(); ++k) {
      Poly(name + ".root." + std::to_string(k + 1), s.roots[k]);
    }
  }

  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string IndexList(const std::vector<std::size_t>& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out += (k ? " " : "") + std::to_string(idx[k] + 1);
  }
  return out;
}

}  // namespace

CertificateFile MakeCertificateFile(const PolyMatrix& subject,
                                    CertificateBody body) {
  const auto kind = static_cast<CertificateKind>(body.index());
  return {kind, subject.rows(), subject.nvars(), std::move(body)};
}

std::string FormatCertificate(const CertificateFile& file) {
  Writer w(file);
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, TracedCertificate>) {
          w.Diag("", body.certificate);
          w.Trace("", body.trace);
        } else if constexpr (std::is_same_v<T, DiagBundle>) {
          w.Meta("branches", std::to_string(body.branches.size()));
          for (std::size_t l = 0; l < body.branches.size(); ++l) {
            const std::string tag = std::to_string(l + 1);
            w.Diag("." + tag, body.branches[l].certificate);
            w.Trace(tag, body.branches[l].trace);
          }
        } else if constexpr (std::is_same_v<T, EquivCertificate>) {
          w.Meta("s1_roots", std::to_string(body.witness.s1.roots.size()));
          w.Meta("s2_roots", std::to_string(body.witness.s2.roots.size()));
          w.Matrix("target", body.target);
          w.Sos("s1", body.witness.s1);
          w.Sos("s2", body.witness.s2);
          w.Poly("z", body.witness.z);
          w.Matrix("x_plus", body.witness.x_plus);
          w.Matrix("x_minus", body.witness.x_minus);
        } else if constexpr (std::is_same_v<T, SosMatrixCertificate>) {
          w.Meta("factors", std::to_string(body.factors.size()));
          w.Poly("c", body.c);
          for (std::size_t j = 0; j < body.factors.size(); ++j) {
            w.Matrix("Q." + std::to_string(j + 1), body.factors[j]);
          }
        } else {
          const auto& cert = body.certificate;
          w.Meta("generators", std::to_string(body.generators.size()));
          w.Meta("terms", std::to_string(cert.index_sets.size()));
          for (std::size_t j = 0; j < cert.index_sets.size(); ++j) {
            const std::string tag = std::to_string(j + 1);
            w.Meta("indices." + tag, IndexList(cert.index_sets[j]));
            w.Meta("coefficients." + tag,
                   std::to_string(cert.coefficients[j].size()));
          }
          for (std::size_t k = 0; k < body.generators.size(); ++k) {
            w.Matrix("generator." + std::to_string(k + 1), body.generators[k]);
          }
          for (std::size_t j = 0; j < cert.coefficients.size(); ++j) {
            for (std::size_t l = 0; l < cert.coefficients[j].size(); ++l) {
              w.Matrix("y." + std::to_string(j + 1) + "." + std::to_string(l + 1),
                       cert.coefficients[j][l]);
            }
          }
        }
      },
      file.body);
  return w.str();
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct Section {
  std::string type;
  std::string name;
  std::size_t header_line = 0;
  std::size_t begin = 0;  // first body line index
  std::size_t end = 0;    // one past last body line index
};

class Reader {
 public:
  explicit Reader(std::string_view text) : lines_(ContentLines(text)) {
    for (std::size_t k = 0; k < lines_.size(); ++k) {
      const std::string t = Trim(lines_[k].text);
      if (t.front() != '[') {
        if (sections_.empty()) {
          throw ParseError(lines_[k].number, 1,
                           "content before the first section header");
        }
        continue;
      }
      if (t.back() != ']') {
        throw ParseError(lines_[k].number, t.size(), "unterminated section header");
      }
      const auto words = Words(t.substr(1, t.size() - 2));
      if (words.empty() || words.size() > 2) {
        throw ParseError(lines_[k].number, 1, "malformed section header");
      }
      if (!sections_.empty()) sections_.back().end = k;
      Section s{words[0], words.size() == 2 ? words[1] : "", lines_[k].number,
                k + 1, lines_.size()};
      const std::string key = s.type + " " + s.name;
      if (index_.count(key)) {
        throw ParseError(s.header_line, 1, "duplicate section [" + key + "]");
      }
      if (s.type != "meta" && s.type != "matrix" && s.type != "poly" &&
          s.type != "trace") {
        throw ParseError(s.header_line, 2, "unknown section type '" + s.type + "'");
      }
      index_[key] = sections_.size();
      sections_.push_back(std::move(s));
    }
    if (sections_.empty()) throw ParseError(1, 1, "empty certificate file");
    ReadMeta();
  }

  const std::map<std::string, Line>& meta() const { return meta_; }

  std::size_t MetaCount(const std::string& key) {
    const Line& line = MetaLine(key);
    const auto words = Words(line.text);
    if (words.size() != 2) {
      throw ParseError(line.number, 1, "meta '" + key + "' needs one value");
    }
    return ParseCount(words[1], line, key.c_str());
  }

  const Line& MetaLine(const std::string& key) {
    auto it = meta_.find(key);
    if (it == meta_.end()) {
      throw ParseError(meta_header_, 1, "[meta] lacks '" + key + "'");
    }
    used_.insert("meta");
    return it->second;
  }

  PolyMatrix Matrix(const std::string& name, std::size_t nvars) {
    const Section& s = Find("matrix", name);
    std::size_t pos = s.begin;
    if (pos >= s.end) {
      throw ParseError(s.header_line, 1, "empty [matrix " + name + "]");
    }
    PolyMatrix m = ParseMatrixAt(lines_, pos, s.end);
    if (pos != s.end) {
      throw ParseError(lines_[pos].number, 1, "unexpected line in matrix block");
    }
    if (m.nvars() != nvars) {
      throw ParseError(s.header_line + 1, 1,
                       "matrix " + name + " declares nvars " +
                           std::to_string(m.nvars()) + ", certificate has " +
                           std::to_string(nvars));
    }
    return m;
  }

  Polynomial Poly(const std::string& name, std::size_t nvars) {
    const Section& s = Find("poly", name);
    if (s.end - s.begin != 1) {
      throw ParseError(s.header_line, 1,
                       "[poly " + name + "] must hold exactly one line");
    }
    return ParsePolyLine(lines_[s.begin], nvars);
  }

  PivotTrace Trace(const std::string& name) {
    const Section& s = Find("trace", name);
    PivotTrace trace;
    for (std::size_t k = s.begin; k < s.end; ++k) {
      const Line& line = lines_[k];
      const auto words = Words(line.text);
      if (words.size() != 3) {
        throw ParseError(line.number, 1, "trace line must be 'i j num/den'");
      }
      const std::size_t i = ParseCount(words[0], line, "pivot index");
      const std::size_t j = ParseCount(words[1], line, "pivot index");
      if (i == 0 || j == 0 || i > j) {
        throw ParseError(line.number, 1, "trace pivots need 1 <= i <= j");
      }
      Rational scale;
      try {
        scale = Rational::Parse(words[2]);
      } catch (const std::exception& e) {
        throw ParseError(line.number, line.text.find(words[2]) + 1, e.what());
      }
      trace.steps.push_back({i - 1, j - 1, scale});
    }
    return trace;
  }

  void CheckAllUsed() const {
    for (const auto& s : sections_) {
      if (!used_.count(s.type + " " + s.name) && s.type != "meta") {
        throw ParseError(s.header_line, 1,
                         "unexpected section [" + s.type +
                             (s.name.empty() ? "" : " " + s.name) + "]");
      }
    }
  }

 private:
  void ReadMeta() {
    auto it = index_.find("meta ");
    if (it == index_.end()) throw ParseError(1, 1, "missing [meta] section");
    const Section& s = sections_[it->second];
    meta_header_ = s.header_line;
    for (std::size_t k = s.begin; k < s.end; ++k) {
      const auto words = Words(lines_[k].text);
      if (meta_.count(words[0])) {
        throw ParseError(lines_[k].number, 1, "duplicate meta key '" + words[0] + "'");
      }
      meta_[words[0]] = lines_[k];
    }
  }

  const Section& Find(const std::string& type, const std::string& name) {
    const std::string key = type + " " + name;
    auto it = index_.find(key);
    if (it == index_.end()) {
      throw ParseError(lines_.empty() ? 1 : lines_.back().number, 1,
                       "missing section [" + type +
                           (name.empty() ? "" : " " + name) + "]");
    }
    used_.insert(key);
    return sections_[it->second];
  }

  std::vector<Line> lines_;
  std::vector<Section> sections_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Line> meta_;
  std::set<std::string> used_;
  std::size_t meta_header_ = 1;
};

void RequireShape(const PolyMatrix& m, std::size_t rows, std::size_t cols,
                  const std::string& name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ParseError(1, 1, "matrix " + name + " must be " + std::to_string(rows) +
                               "x" + std::to_string(cols));
  }
}

DiagCertificate ReadDiag(Reader& r, const std::string& suffix, std::size_t n,
                         std::size_t nvars) {
  DiagCertificate c{r.Matrix("X_plus" + suffix, nvars),
                    r.Matrix("X_minus" + suffix, nvars),
                    r.Matrix("D" + suffix, nvars), r.Poly("w" + suffix, nvars)};
  RequireShape(c.x_plus, n, n, "X_plus" + suffix);
  RequireShape(c.x_minus, n, n, "X_minus" + suffix);
  RequireShape(c.d, n, n, "D" + suffix);
  return c;
}

SumOfSquares ReadSos(Reader& r, const std::string& name, std::size_t roots,
                     std::size_t nvars) {
  SumOfSquares s{r.Poly(name, nvars), {}};
  for (std::size_t k = 0; k < roots; ++k) {
    s.roots.push_back(r.Poly(name + ".root." + std::to_string(k + 1), nvars));
  }
  return s;
}

std::vector<std::size_t> ReadIndexList(const Line& line) {
  auto words = Words(line.text);
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k < words.size(); ++k) {
    const std::size_t v = ParseCount(words[k], line, "generator index");
    if (v == 0) throw ParseError(line.number, 1, "generator indices are 1-based");
    idx.push_back(v - 1);
  }
  return idx;
}

}  // namespace

CertificateFile ParseCertificate(std::string_view text) {
  Reader r(text);
  struct {
    CertificateKind kind;
    std::size_t dims;
    std::size_t nvars;
  } file;
  std::optional<CertificateBody> body;
  {
    const Line& kind_line = r.MetaLine("kind");
    const auto words = Words(kind_line.text);
    auto kind = words.size() == 2 ? KindFromName(words[1]) : std::nullopt;
    if (!kind) {
      throw ParseError(kind_line.number, 1,
                       "kind must be one of diag|bundle|equiv|sos|membership");
    }
    file.kind = *kind;
  }
  file.dims = r.MetaCount("dims");
  file.nvars = r.MetaCount("nvars");
  if (file.dims == 0 || file.nvars == 0) {
    throw ParseError(1, 1, "dims and nvars must be positive");
  }
  const std::size_t n = file.dims;
  const std::size_t nv = file.nvars;

  switch (file.kind) {
    case CertificateKind::kDiag: {
      body = TracedCertificate{ReadDiag(r, "", n, nv), r.Trace("")};
      break;
    }
    case CertificateKind::kBundle: {
      DiagBundle bundle{n, {}};
      const std::size_t branches = r.MetaCount("branches");
      for (std::size_t l = 0; l < branches; ++l) {
        const std::string tag = std::to_string(l + 1);
        bundle.branches.push_back({ReadDiag(r, "." + tag, n, nv), r.Trace(tag)});
      }
      body = std::move(bundle);
      break;
    }
    case CertificateKind::kEquiv: {
      EquivCertificate eq{
          {ReadSos(r, "s1", r.MetaCount("s1_roots"), nv),
           ReadSos(r, "s2", r.MetaCount("s2_roots"), nv), r.Poly("z", nv),
           r.Matrix("x_plus", nv), r.Matrix("x_minus", nv)},
          r.Matrix("target", nv)};
      RequireShape(eq.target, n, n, "target");
      RequireShape(eq.witness.x_plus, n, n, "x_plus");
      RequireShape(eq.witness.x_minus, n, n, "x_minus");
      body = std::move(eq);
      break;
    }
    case CertificateKind::kSos: {
      SosMatrixCertificate sos{r.Poly("c", nv), {}};
      const std::size_t factors = r.MetaCount("factors");
      for (std::size_t j = 0; j < factors; ++j) {
        sos.factors.push_back(r.Matrix("Q." + std::to_string(j + 1), nv));
        if (sos.factors.back().cols() != n) {
          throw ParseError(1, 1, "SOS factors must have dims columns");
        }
      }
      body = std::move(sos);
      break;
    }
    case CertificateKind::kMembership: {
      MembershipCertificateFile m;
      const std::size_t gens = r.MetaCount("generators");
      const std::size_t terms = r.MetaCount("terms");
      for (std::size_t k = 0; k < gens; ++k) {
        m.generators.push_back(r.Matrix("generator." + std::to_string(k + 1), nv));
        RequireShape(m.generators.back(), n, n, "generator");
      }
      for (std::size_t j = 0; j < terms; ++j) {
        const std::string tag = std::to_string(j + 1);
        m.certificate.index_sets.push_back(ReadIndexList(r.MetaLine("indices." + tag)));
        const std::size_t count = r.MetaCount("coefficients." + tag);
        auto& ys = m.certificate.coefficients.emplace_back();
        for (std::size_t l = 0; l < count; ++l) {
          ys.push_back(r.Matrix("y." + tag + "." + std::to_string(l + 1), nv));
        }
      }
      body = std::move(m);
      break;
    }
  }
  r.CheckAllUsed();
  return {file.kind, file.dims, file.nvars, std::move(*body)};
}

}  // namespace polycert

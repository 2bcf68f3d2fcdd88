#ifndef LMIFEAS_IO_HPP
#define LMIFEAS_IO_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lmifeas/errors.hpp"
#include "lmifeas/lmi_model.hpp"
#include "lmifeas/solvers.hpp"

namespace lmifeas {

struct LmiFile {
  LmiProblem problem;
  std::optional<SlaterCertificate> certificate;

  bool operator==(const LmiFile&) const = default;
};

struct LisFile {
  LinIneqSystem system;

  bool operator==(const LisFile&) const = default;
};

using ProblemFile = std::variant<LmiFile, LisFile>;

/// Shortest decimal string that reads back to the same binary64.
inline std::string format_real(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

inline double parse_real(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto res = std::from_chars(first, tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a real number, got '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, "non-finite number '" + std::string(tok) + "'");
  return v;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return v;
}

class LineCursor {
 public:
  explicit LineCursor(std::vector<Line> lines, std::size_t last_line)
      : lines_(std::move(lines)), last_line_(last_line) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }

  const Line& take(const char* expected) {
    if (done()) throw ParseError(last_line_, std::string("unexpected end of input, expected ") + expected);
    return lines_[pos_++];
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_;
};

inline SymMatrix read_matrix(LineCursor& cur, std::size_t n) {
  std::vector<Vector> rows;
  rows.reserve(n);
  std::size_t first_line = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Line& l = cur.take("matrix row");
    if (i == 0) first_line = l.number;
    if (l.tokens.size() != n) {
      throw ParseError(l.number, "matrix row has " + std::to_string(l.tokens.size()) + " entries, expected " +
                                     std::to_string(n));
    }
    Vector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = parse_real(l.tokens[j], l.number);
    rows.push_back(std::move(row));
  }
  try {
    return SymMatrix::from_rows(rows, 1e-12);
  } catch (const InvalidParameter& e) {
    throw ParseError(first_line, e.what());
  }
}

inline LmiFile parse_lmi(LineCursor& cur, const Line& header) {
  if (header.tokens.size() != 3) throw ParseError(header.number, "expected 'lmi <n> <m>'");
  const std::size_t n = parse_count(header.tokens[1], header.number);
  const std::size_t m = parse_count(header.tokens[2], header.number);
  if (n == 0 || m == 0) throw ParseError(header.number, "n and m must be positive");

  std::optional<SymMatrix> b;
  std::vector<std::optional<SymMatrix>> a(m);
  std::optional<std::pair<Vector, double>> slater;
  std::size_t slater_line = 0;
  while (!cur.done()) {
    const Line& l = cur.take("block header");
    const auto key = l.tokens[0];
    if (key == "B") {
      if (l.tokens.size() != 1) throw ParseError(l.number, "expected 'B'");
      if (b) throw ParseError(l.number, "duplicate B block");
      b = read_matrix(cur, n);
    } else if (key == "A") {
      if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'A <i>'");
      const std::size_t i = parse_count(l.tokens[1], l.number);
      if (i < 1 || i > m) throw ParseError(l.number, "coefficient index out of range");
      if (a[i - 1]) throw ParseError(l.number, "duplicate A block");
      a[i - 1] = read_matrix(cur, n);
    } else if (key == "slater") {
      if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'slater <sigma>'");
      if (slater) throw ParseError(l.number, "duplicate slater block");
      const double sigma = parse_real(l.tokens[1], l.number);
      const Line& d = cur.take("slater point");
      if (d.tokens.size() != m) throw ParseError(d.number, "slater point must have m entries");
      Vector point(m);
      for (std::size_t j = 0; j < m; ++j) point[j] = parse_real(d.tokens[j], d.number);
      slater = std::make_pair(std::move(point), sigma);
      slater_line = l.number;
    } else {
      throw ParseError(l.number, "unknown block '" + std::string(key) + "'");
    }
  }
  if (!b) throw ParseError(header.number, "missing B block");
  std::vector<SymMatrix> coeffs;
  coeffs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!a[i]) throw ParseError(header.number, "missing block A " + std::to_string(i + 1));
    coeffs.push_back(std::move(*a[i]));
  }
  LmiFile file{LmiProblem(std::move(coeffs), std::move(*b)), std::nullopt};
  if (slater) {
    try {
      file.certificate = SlaterCertificate::validated(file.problem, std::move(slater->first), slater->second);
    } catch (const InvalidCertificate& e) {
      throw InvalidCertificate("line " + std::to_string(slater_line) + ": " + e.what());
    }
  }
  return file;
}

inline LisFile parse_lis(LineCursor& cur, const Line& header) {
  if (header.tokens.size() != 3) throw ParseError(header.number, "expected 'lis <p> <q>'");
  const std::size_t p = parse_count(header.tokens[1], header.number);
  const std::size_t q = parse_count(header.tokens[2], header.number);
  if (p == 0 || q == 0) throw ParseError(header.number, "p and q must be positive");
  DenseMatrix a(p, q);
  Vector b(p);
  std::vector<RowKind> kinds(p);
  for (std::size_t i = 0; i < p; ++i) {
    const Line& l = cur.take("system row");
    if (l.tokens.size() != q + 2) {
      throw ParseError(l.number, "row needs a kind, " + std::to_string(q) + " coefficients and a right-hand side");
    }
    if (l.tokens[0] == "le") {
      kinds[i] = RowKind::LE;
    } else if (l.tokens[0] == "eq") {
      kinds[i] = RowKind::EQ;
    } else {
      throw ParseError(l.number, "row kind must be 'le' or 'eq'");
    }
    for (std::size_t j = 0; j < q; ++j) a(i, j) = parse_real(l.tokens[j + 1], l.number);
    b[i] = parse_real(l.tokens[q + 1], l.number);
  }
  if (!cur.done()) throw ParseError(cur.peek().number, "trailing content after system rows");
  return LisFile{LinIneqSystem(std::move(a), std::move(b), std::move(kinds))};
}

inline void write_matrix(std::ostream& os, const SymMatrix& s) {
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < s.dim(); ++j) os << (j ? " " : "") << format_real(s(i, j));
    os << '\n';
  }
}

}  // namespace detail

/// Parses a `.lmi` or `.lis` document; the format is chosen by the header keyword.
inline ProblemFile parse_problem(std::string_view text) {
  auto lines = detail::tokenize(text);
  const std::size_t last = lines.empty() ? 1 : lines.back().number;
  detail::LineCursor cur(std::move(lines), last);
  const detail::Line& header = cur.take("header");
  if (header.tokens[0] == "lmi") return detail::parse_lmi(cur, header);
  if (header.tokens[0] == "lis") return detail::parse_lis(cur, header);
  throw ParseError(header.number, "header must start with 'lmi' or 'lis'");
}

inline std::string serialize(const LmiFile& f) {
  std::ostringstream os;
  const auto& p = f.problem;
  os << "lmi " << p.n() << ' ' << p.m() << '\n';
  os << "B\n";
  detail::write_matrix(os, p.rhs());
  for (std::size_t i = 0; i < p.m(); ++i) {
    os << "A " << (i + 1) << '\n';
    detail::write_matrix(os, p.coeff(i));
  }
  if (f.certificate) {
    os << "slater " << format_real(f.certificate->margin()) << '\n';
    const auto& d = f.certificate->point();
    for (std::size_t j = 0; j < d.size(); ++j) os << (j ? " " : "") << format_real(d[j]);
    os << '\n';
  }
  return os.str();
}

inline std::string serialize(const LisFile& f) {
  std::ostringstream os;
  const auto& s = f.system;
  os << "lis " << s.p() << ' ' << s.q() << '\n';
  for (std::size_t i = 0; i < s.p(); ++i) {
    os << (s.kinds()[i] == RowKind::LE ? "le" : "eq");
    for (double v : s.rows().row(i)) os << ' ' << format_real(v);
    os << ' ' << format_real(s.rhs()[i]) << '\n';
  }
  return os.str();
}

inline std::string serialize(const ProblemFile& f) {
  return std::visit([](const auto& x) { return serialize(x); }, f);
}

inline void write_trace_csv(std::ostream& os, const SolveTrace& trace) {
  os << "phase,iter,total_iter,f_value,elapsed_ms\n";
  for (const auto& r : trace.rows) {
    os << r.phase << ',' << r.iter << ',' << r.total_iter << ',' << format_real(r.f_value) << ','
       << format_real(r.elapsed_ms) << '\n';
  }
}

}  // namespace lmifeas

#endif  // LMIFEAS_IO_HPP

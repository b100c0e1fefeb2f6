#include "conelab/lattice.hpp"

#include <cctype>

namespace conelab {

IntersectionPairing blowup_pairing(std::size_t h, std::size_t r, bool indexed_h) {
  IntersectionPairing p;
  for (std::size_t a = 0; a < h; ++a) {
    std::string suffix = indexed_h ? std::to_string(a + 1) : "";
    p.divisor_basis.push_back("H" + suffix);
    p.curve_basis.push_back("l" + suffix);
  }
  for (std::size_t i = 0; i < r; ++i) {
    p.divisor_basis.push_back("E" + std::to_string(i + 1));
    p.curve_basis.push_back("e" + std::to_string(i + 1));
  }
  const std::size_t n = h + r;
  p.matrix.assign(n, QVector(n));
  for (std::size_t a = 0; a < h; ++a) p.matrix[a][a] = 1;
  for (std::size_t i = h; i < n; ++i) p.matrix[i][i] = -1;
  return p;
}

Rat pair(const DivisorClass& d, const CurveClass& c, const IntersectionPairing& p) {
  if (d.size() != p.matrix.size()) throw Error("divisor class dimension does not match the pairing");
  Rat s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (sgn(d[i]) == 0) continue;
    if (c.size() != p.matrix[i].size()) throw Error("curve class dimension does not match the pairing");
    s += d[i] * dot(p.matrix[i], c);
  }
  return s;
}

QVector curve_functional(const CurveClass& c, const IntersectionPairing& p) {
  QVector f(p.matrix.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (c.size() != p.matrix[i].size()) throw Error("curve class dimension does not match the pairing");
    f[i] = dot(p.matrix[i], c);
  }
  return f;
}

QVector parse_class(std::string_view expr, const std::vector<std::string>& basis) {
  QVector v(basis.size());
  std::size_t i = 0;
  auto skip = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  skip();
  if (expr.substr(i) == "0") return v;
  bool first = true;
  while (i < expr.size()) {
    skip();
    int sign = 1;
    if (i < expr.size() && (expr[i] == '+' || expr[i] == '-')) {
      sign = expr[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw Error("expected + or - in class \"" + std::string(expr) + "\"");
    }
    std::size_t start = i;
    while (i < expr.size() && (std::isdigit(static_cast<unsigned char>(expr[i])) || expr[i] == '/')) ++i;
    Rat coef = start == i ? Rat(1) : parse_rational(expr.substr(start, i - start));
    skip();
    if (i < expr.size() && expr[i] == '*') {
      ++i;
      skip();
    }
    start = i;
    while (i < expr.size() && std::isalpha(static_cast<unsigned char>(expr[i]))) ++i;
    while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) ++i;
    std::string name(expr.substr(start, i - start));
    std::size_t idx = basis.size();
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (basis[b] == name) idx = b;
    if (idx == basis.size()) throw Error("unknown basis element \"" + name + "\" in \"" + std::string(expr) + "\"");
    v[idx] += sign * coef;
    first = false;
    skip();
  }
  if (first) throw Error("empty class expression");
  return v;
}

std::string format_class(const QVector& v, const std::vector<std::string>& basis) {
  if (v.size() != basis.size()) throw Error("class dimension does not match basis");
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    Rat a = abs(v[i]);
    if (sgn(v[i]) < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    if (a != 1) s += a.get_str();
    s += basis[i];
  }
  return s.empty() ? "0" : s;
}

std::string format_class(const ZVector& v, const std::vector<std::string>& basis) {
  return format_class(to_q(v), basis);
}

RelativeFrame::RelativeFrame(std::vector<DivisorClass> sections, DivisorClass anticanonical)
    : sections_(std::move(sections)), anticanonical_(std::move(anticanonical)) {
  const std::size_t n = anticanonical_.size();
  if (sections_.size() + 1 != n)
    throw ConfigError("section lifts plus the anticanonical class must number dim N^1 = " + std::to_string(n));
  // Columns of m are the frame vectors; invert to read coordinates.
  std::vector<QVector> m(n, QVector(n));
  for (std::size_t j = 0; j < sections_.size(); ++j) {
    if (sections_[j].size() != n) throw ConfigError("section lift has wrong dimension");
    for (std::size_t i = 0; i < n; ++i) m[i][j] = sections_[j][i];
  }
  for (std::size_t i = 0; i < n; ++i) m[i][n - 1] = anticanonical_[i];
  if (rank(m) != n) throw ConfigError("section lifts do not form a basis of the relative space");
  inverse_.assign(n, QVector(n));
  for (std::size_t col = 0; col < n; ++col) {
    QVector e(n);
    e[col] = 1;
    QVector x = solve(m, e);
    for (std::size_t i = 0; i < n; ++i) inverse_[i][col] = x[i];
  }
}

RelClass RelativeFrame::project(const DivisorClass& d) const {
  if (d.size() != anticanonical_.size()) throw Error("divisor class dimension mismatch in project");
  RelClass r(sections_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = dot(inverse_[i], d);
  return r;
}

Rat RelativeFrame::kernel_part(const DivisorClass& d) const {
  if (d.size() != anticanonical_.size()) throw Error("divisor class dimension mismatch");
  return dot(inverse_.back(), d);
}

DivisorClass RelativeFrame::lift(const RelClass& r) const {
  if (r.size() != sections_.size()) throw Error("relative class dimension mismatch in lift");
  DivisorClass d(anticanonical_.size());
  for (std::size_t j = 0; j < r.size(); ++j)
    if (sgn(r[j]) != 0)
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += r[j] * sections_[j][i];
  return d;
}

QVector RelativeFrame::functional(const CurveClass& c, const IntersectionPairing& p) const {
  QVector f(sections_.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = pair(sections_[j], c, p);
  return f;
}

Rat f_degree(const RelClass& r) {
  Rat s = 0;
  for (const auto& x : r) s += x;
  return s;
}

} // namespace conelab

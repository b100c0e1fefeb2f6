#include "conelab/rational.hpp"

#include <algorithm>
#include <sstream>

namespace conelab {

std::string to_string(const Rat& q) { return q.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const ZVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

Rat parse_rational(std::string_view s) {
  std::string t(s);
  auto strip = [](std::string& x) {
    x.erase(0, x.find_first_not_of(" \t"));
    x.erase(x.find_last_not_of(" \t") + 1);
  };
  strip(t);
  if (t.empty()) throw Error("empty rational");
  if (t.front() == '+') t.erase(0, 1);
  auto slash = t.find('/');
  auto digits_ok = [](const std::string& x) {
    std::size_t i = (!x.empty() && x[0] == '-') ? 1 : 0;
    if (i >= x.size()) return false;
    return std::all_of(x.begin() + static_cast<long>(i), x.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = slash == std::string::npos ? t : t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-')
    throw Error("malformed rational \"" + std::string(s) + "\"");
  Int d(den);
  if (d == 0) throw Error("zero denominator in \"" + std::string(s) + "\"");
  Rat q(Int(num), d);
  q.canonicalize();
  return q;
}

QVector to_q(const ZVector& v) {
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

Rat dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch in dot product");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int dot(const ZVector& a, const ZVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch in dot product");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const ZVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch in dot product");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVector add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVector sub(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVector scale(const Rat& s, const QVector& v) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

ZVector add(const ZVector& a, const ZVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  ZVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ZVector sub(const ZVector& a, const ZVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  ZVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

ZVector scale(const Int& s, const ZVector& v) {
  ZVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

ZVector negate(const ZVector& v) {
  ZVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool is_zero(const ZVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

bool lex_less(const ZVector& a, const ZVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_less(const QVector& a, const QVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<QVector> rref(std::vector<QVector> rows, std::vector<std::size_t>* pivots) {
  std::vector<std::size_t> piv;
  if (rows.empty()) {
    if (pivots) pivots->clear();
    return rows;
  }
  const std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && sgn(rows[sel][col]) == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Rat inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][col]) == 0) continue;
      Rat f = rows[i][col];
      for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    piv.push_back(col);
    ++r;
  }
  rows.resize(r);
  if (pivots) *pivots = piv;
  return rows;
}

std::size_t rank(const std::vector<QVector>& rows) { return rref(rows).size(); }

std::size_t rank(const std::vector<ZVector>& rows) {
  std::vector<QVector> q;
  q.reserve(rows.size());
  for (const auto& r : rows) q.push_back(to_q(r));
  return rank(q);
}

std::vector<ZVector> nullspace(const std::vector<QVector>& rows, std::size_t dim) {
  std::vector<std::size_t> piv;
  auto red = rref(rows, &piv);
  std::vector<bool> is_pivot(dim, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<ZVector> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    QVector v(dim);
    v[free] = 1;
    for (std::size_t i = 0; i < red.size(); ++i) v[piv[i]] = -red[i][free];
    Int l = 1;
    for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    ZVector z(dim);
    Int g = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      Rat t = v[i] * l;
      z[i] = t.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
    }
    if (g > 1)
      for (auto& x : z) x /= g;
    basis.push_back(z);
  }
  return basis;
}

QVector solve(const std::vector<QVector>& m, const QVector& b) {
  const std::size_t n = m.size();
  std::vector<QVector> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error("solve: matrix is not square");
    aug[i] = m[i];
    aug[i].push_back(b[i]);
  }
  std::vector<std::size_t> piv;
  auto red = rref(aug, &piv);
  if (red.size() < n || piv.back() >= n) throw Error("solve: singular system");
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = red[i][n];
  return x;
}

} // namespace conelab

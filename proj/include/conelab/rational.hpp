// Exact arithmetic vocabulary shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conelab {

using Int = mpz_class;
using Rat = mpq_class;
using ZVector = std::vector<Int>;
using QVector = std::vector<Rat>;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when embedded or on-disk family data violates an invariant.
class ConfigError : public Error {
public:
  using Error::Error;
};

std::string to_string(const Rat& q);
std::string to_string(const Int& z);
std::string to_string(const QVector& v);
std::string to_string(const ZVector& v);

// Accepts "p", "-p", "p/q"; result is in lowest terms.
Rat parse_rational(std::string_view s);

QVector to_q(const ZVector& v);
Rat dot(const QVector& a, const QVector& b);
Int dot(const ZVector& a, const ZVector& b);
Rat dot(const ZVector& a, const QVector& b);

QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const Rat& s, const QVector& v);
ZVector add(const ZVector& a, const ZVector& b);
ZVector sub(const ZVector& a, const ZVector& b);
ZVector scale(const Int& s, const ZVector& v);
ZVector negate(const ZVector& v);
bool is_zero(const QVector& v);
bool is_zero(const ZVector& v);

// Lexicographic order on integer vectors (used for canonical sorting).
bool lex_less(const ZVector& a, const ZVector& b);
bool lex_less(const QVector& a, const QVector& b);

// Row-reduced echelon form over Q. Returns the nonzero rows; pivots receives
// the pivot column of each row.
std::vector<QVector> rref(std::vector<QVector> rows, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const std::vector<QVector>& rows);
std::size_t rank(const std::vector<ZVector>& rows);

// Basis of {x : row . x = 0 for all rows} in dimension dim, as primitive
// integer vectors.
std::vector<ZVector> nullspace(const std::vector<QVector>& rows, std::size_t dim);

// Solve M x = b for square invertible M (rows of M given). Throws on singular.
QVector solve(const std::vector<QVector>& m, const QVector& b);

} // namespace conelab

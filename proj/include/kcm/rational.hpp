#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace kcm {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
// Row-major square matrix.
using RationalMatrix = std::vector<RationalVector>;

// Exact inverse by Gauss-Jordan elimination; returns false when singular.
bool invert(const RationalMatrix& m, RationalMatrix& out);

Rational determinant(RationalMatrix m);

RationalVector multiply(const RationalMatrix& m, const RationalVector& x);

// Rank of a set of integer vectors (rows), computed exactly.
std::size_t rank(const std::vector<std::vector<std::int64_t>>& rows);

// Smallest integer >= q.
std::int64_t ceil_to_int(const Rational& q);
std::int64_t floor_to_int(const Rational& q);

}  // namespace kcm

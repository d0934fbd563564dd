#include "kcm/rational.hpp"

#include <utility>

namespace kcm {

bool invert(const RationalMatrix& m, RationalMatrix& out) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  out.assign(n, RationalVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[pivot], a[col]);
    std::swap(out[pivot], out[col]);

    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      out[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        out[row][j] -= f * out[col][j];
      }
    }
  }
  return true;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return det;
}

RationalVector multiply(const RationalMatrix& m, const RationalVector& x) {
  RationalVector y(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

std::size_t rank(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  RationalMatrix a;
  for (const auto& r : rows) {
    RationalVector v;
    for (auto x : r) v.emplace_back(x);
    a.push_back(std::move(v));
  }
  const std::size_t ncols = a.front().size();
  std::size_t rk = 0;
  for (std::size_t col = 0; col < ncols && rk < a.size(); ++col) {
    std::size_t pivot = rk;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rk]);
    for (std::size_t row = rk + 1; row < a.size(); ++row) {
      if (a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[rk][col];
      for (std::size_t j = col; j < ncols; ++j) a[row][j] -= f * a[rk][j];
    }
    ++rk;
  }
  return rk;
}

std::int64_t floor_to_int(const Rational& q) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  cpp_int quot = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) quot -= 1;
  return quot.convert_to<std::int64_t>();
}

std::int64_t ceil_to_int(const Rational& q) { return -floor_to_int(-q); }

}  // namespace kcm

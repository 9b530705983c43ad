#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace nerode {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

/// Parses "p/q" or "p" (optionally signed). Throws InputError.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

/// Dense row-major matrix of exact rationals. Zero-sized dimensions are
/// allowed (an n = 0 state space has 0 x 0 A, 0 x m B, ...).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  bool is_zero() const;

  RationalMatrix transpose() const;
  RationalMatrix block(std::size_t row, std::size_t col, std::size_t rows,
                       std::size_t cols) const;
  RationalMatrix select_rows(const std::vector<std::size_t>& rows) const;
  RationalMatrix select_cols(const std::vector<std::size_t>& cols) const;
  void set_block(std::size_t row, std::size_t col, const RationalMatrix& b);

  friend RationalMatrix operator*(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Reduced row-echelon form and the pivot column of each nonzero row.
struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

EchelonForm row_reduce(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Exact inverse of a square matrix. Throws InputError when singular.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace nerode

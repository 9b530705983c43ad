#include "nerode/rational_matrix.hpp"

#include <utility>

#include "nerode/errors.hpp"

namespace nerode {

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' ||
      den.front() == '+') {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix::RationalMatrix(
    std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::block(std::size_t row, std::size_t col,
                                     std::size_t rows, std::size_t cols) const {
  if (row + rows > rows_ || col + cols > cols_) {
    throw InputError("block out of range");
  }
  RationalMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(row + i, col + j);
  return b;
}

RationalMatrix RationalMatrix::select_rows(
    const std::vector<std::size_t>& rows) const {
  RationalMatrix b(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(rows[i], j);
  return b;
}

RationalMatrix RationalMatrix::select_cols(
    const std::vector<std::size_t>& cols) const {
  RationalMatrix b(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = (*this)(i, cols[j]);
  return b;
}

void RationalMatrix::set_block(std::size_t row, std::size_t col,
                               const RationalMatrix& b) {
  if (row + b.rows_ > rows_ || col + b.cols_ > cols_) {
    throw InputError("set_block out of range");
  }
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(row + i, col + j) = b(i, j);
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product: shape mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Rational& x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(l, j);
    }
  }
  return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw InputError("matrix sum: shape mismatch");
  }
  RationalMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    c.entries_[i] = a.entries_[i] + b.entries_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw InputError("matrix difference: shape mismatch");
  }
  RationalMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    c.entries_[i] = a.entries_[i] - b.entries_[i];
  return c;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

EchelonForm row_reduce(const RationalMatrix& m) {
  EchelonForm e{m, {}};
  RationalMatrix& r = e.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < r.rows() && r(pivot, col) == 0) ++pivot;
    if (pivot == r.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(row, j), r(pivot, j));
    }
    const Rational inv = 1 / r(row, col);
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == 0) continue;
      const Rational factor = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) r(i, j) -= factor * r(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).rank(); }

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, RationalMatrix::identity(n));
  EchelonForm e = row_reduce(aug);
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
    throw InputError("inverse: matrix is singular");
  }
  return e.reduced.block(0, n, n, n);
}

}  // namespace nerode

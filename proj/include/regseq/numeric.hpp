#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace regseq {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
using Vector = std::vector<T>;

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline Integer to_integer(const Rational& q) {
  if (!is_integral(q)) {
    throw std::domain_error("value " + q.str() + " is not an integer");
  }
  return boost::multiprecision::numerator(q);
}

// Dense row-major matrix. T must form a ring; the elimination helpers
// further down need a field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init)
      : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw std::invalid_argument("ragged matrix initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Vector<T> column(std::size_t j) const {
    Vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T& x) { return x == 0; });
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(k, j) != 0) c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw std::invalid_argument("matrix shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// x * M for a row vector x. Zero entries are skipped; compiled
// representations are very sparse.
template <class T>
Vector<T> row_times(std::span<const T> x, const Matrix<T>& m) {
  if (x.size() != m.rows()) throw std::invalid_argument("vector/matrix mismatch");
  Vector<T> out(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0) out[j] += x[i] * r[j];
    }
  }
  return out;
}

// M * y for a column vector y.
template <class T>
Vector<T> times_column(const Matrix<T>& m, std::span<const T> y) {
  if (y.size() != m.cols()) throw std::invalid_argument("matrix/vector mismatch");
  Vector<T> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0 && y[j] != 0) out[i] += r[j] * y[j];
    }
  }
  return out;
}

template <class T>
T dot(std::span<const T> x, std::span<const T> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  T acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0 && y[i] != 0) acc += x[i] * y[i];
  }
  return acc;
}

template <class T>
Matrix<T> power(const Matrix<T>& m, unsigned long long e) {
  if (!m.square()) throw std::invalid_argument("power of a non-square matrix");
  Matrix<T> result = Matrix<T>::identity(m.rows());
  Matrix<T> base = m;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

// Incrementally grown basis of a subspace of T^dim (T a field).
//
// Vectors are kept exactly as inserted in basis(); a parallel echelon form
// with pivot entries normalised to 1 carries, for each row, its expansion in
// terms of the inserted vectors, so coordinates() can express any member of
// the span in the inserted basis.
template <class T>
class RowSpace {
 public:
  explicit RowSpace(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Vector<T>>& basis() const { return basis_; }

  // Adds x if it is independent of the current span. Returns whether it was.
  bool insert(const Vector<T>& x) {
    if (x.size() != dim_) throw std::invalid_argument("RowSpace: wrong dimension");
    Vector<T> residue = x;
    Vector<T> combo(basis_.size() + 1);
    combo.back() = T(1);
    reduce(residue, combo, -1);
    auto pivot = std::find_if(residue.begin(), residue.end(),
                              [](const T& v) { return v != 0; });
    if (pivot == residue.end()) return false;
    const std::size_t p = static_cast<std::size_t>(pivot - residue.begin());
    const T scale = T(1) / residue[p];
    for (auto& v : residue) v *= scale;
    for (auto& v : combo) v *= scale;
    basis_.push_back(x);
    echelon_.push_back(std::move(residue));
    combos_.push_back(std::move(combo));
    pivots_.push_back(p);
    return true;
  }

  bool contains(const Vector<T>& x) const {
    Vector<T> residue = x;
    Vector<T> combo(basis_.size());
    reduce(residue, combo, 1);
    return std::all_of(residue.begin(), residue.end(),
                       [](const T& v) { return v == 0; });
  }

  // Coordinates of x in basis(), or nullopt when x is outside the span.
  std::optional<Vector<T>> coordinates(const Vector<T>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("RowSpace: wrong dimension");
    Vector<T> residue = x;
    Vector<T> coords(basis_.size());
    reduce(residue, coords, 1);
    for (const auto& v : residue) {
      if (v != 0) return std::nullopt;
    }
    return coords;
  }

 private:
  // Eliminates the pivots of residue; every subtracted echelon row adds
  // sign * factor * (its combination) to combo.
  void reduce(Vector<T>& residue, Vector<T>& combo, int sign) const {
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
      const T factor = residue[pivots_[i]];
      if (factor == 0) continue;
      const auto& row = echelon_[i];
      for (std::size_t j = 0; j < dim_; ++j) {
        if (row[j] != 0) residue[j] -= factor * row[j];
      }
      const auto& c = combos_[i];
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        if (sign < 0) {
          combo[j] -= factor * c[j];
        } else {
          combo[j] += factor * c[j];
        }
      }
    }
  }

  std::size_t dim_;
  std::vector<Vector<T>> basis_;
  std::vector<Vector<T>> echelon_;
  std::vector<Vector<T>> combos_;
  std::vector<std::size_t> pivots_;
};

template <class T>
std::size_t rank(const Matrix<T>& m) {
  RowSpace<T> space(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    space.insert(Vector<T>(m.row(i).begin(), m.row(i).end()));
  }
  return space.size();
}

inline std::string to_string(const Rational& q) {
  return is_integral(q) ? boost::multiprecision::numerator(q).str() : q.str();
}

}  // namespace regseq

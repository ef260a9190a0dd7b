#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "evo1d/field.hpp"

namespace evo1d {

using Vector = std::vector<Scalar>;

Vector zero_vector(const Field& f, std::size_t n);
Vector unit_vector(const Field& f, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector scaled(const Vector& v, const Scalar& s);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Scalar dot(const Vector& a, const Vector& b);

/// Lexicographic comparison in enumeration order, first coordinate most
/// significant.
std::strong_ordering lex_compare(const Vector& a, const Vector& b);
bool lex_less(const Vector& a, const Vector& b);

std::string to_string(const Vector& v);

/// Dense row-major matrix over a single field.
class Matrix {
 public:
  Matrix(const Field& field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix diagonal(const Field& field, const Vector& d);
  static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& cols);
  static Matrix from_rows(const Field& field, const std::vector<Vector>& rows);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);

  Matrix transpose() const;
  bool is_symmetric() const;
  bool is_diagonal() const;
  bool is_zero() const;

  std::size_t rank() const;
  Scalar determinant() const;
  std::optional<Matrix> inverse() const;
  /// Basis of {x : M x = 0}.
  std::vector<Vector> null_space() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Pᵀ G P.
Matrix congruence(const Matrix& g, const Matrix& p);

/// n×n matrix with result(idx[i], idx[j]) = m(i, j); other entries zero.
Matrix embed(const Matrix& m, std::size_t n, const std::vector<std::size_t>& idx);

}  // namespace evo1d

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace matnorm {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::vector<double> column(std::size_t j) const;

  /// Reshape in place, reusing capacity. Contents are unspecified afterwards.
  void resize(std::size_t rows, std::size_t cols);

  Matrix transpose() const;
  Matrix scaled(double c) const;
  bool all_finite() const;
  bool is_zero() const;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// z = A^T s.
  void multiply_transpose(std::span<const double> s, std::span<double> z) const;
  std::vector<double> operator*(std::span<const double> x) const;

  /// s^T A t.
  double bilinear(std::span<const double> s, std::span<const double> t) const;

  /// Copy A restricted to rows I and columns J into *this.
  void assign_submatrix(const Matrix& source, std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Reads a matrix from CSV (one row per line) or JSON {"m":..,"n":..,"data":[..]}.
/// The format is chosen on the file extension (".json" vs anything else).
Matrix read_matrix_file(const std::string& path);
Matrix parse_matrix_csv(const std::string& text);
Matrix parse_matrix_json(const std::string& text);
std::string format_matrix_csv(const Matrix& a);

}  // namespace matnorm

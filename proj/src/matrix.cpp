#include "matnorm/matrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace matnorm {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("Matrix: data size does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix a(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
  return a;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Matrix::resize(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  data_.resize(rows * cols);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::scaled(double c) const {
  Matrix s(*this);
  for (double& x : s.data_) x *= c;
  return s;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return x == 0.0; });
}

void Matrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = data_.data() + i * cols_;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
}

void Matrix::multiply_transpose(std::span<const double> s, std::span<double> z) const {
  std::fill(z.begin(), z.end(), 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = data_.data() + i * cols_;
    const double si = s[i];
    if (si == 0.0) continue;
    for (std::size_t j = 0; j < cols_; ++j) z[j] += si * r[j];
  }
}

std::vector<double> Matrix::operator*(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

double Matrix::bilinear(std::span<const double> s, std::span<const double> t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = data_.data() + i * cols_;
    double row_dot = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) row_dot += r[j] * t[j];
    acc += s[i] * row_dot;
  }
  return acc;
}

void Matrix::assign_submatrix(const Matrix& source, std::span<const std::size_t> rows,
                              std::span<const std::size_t> cols) {
  resize(rows.size(), cols.size());
  double* out = data_.data();
  for (std::size_t i : rows) {
    const double* r = source.data_.data() + i * source.cols_;
    for (std::size_t j : cols) *out++ = r[j];
  }
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Matrix parse_matrix_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream cells(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix CSV: cannot parse '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("matrix CSV: cannot parse '" + cell + "'");
      }
      data.push_back(v);
      ++count;
    }
    if (rows == 0) cols = count;
    if (count != cols || count == 0) throw std::invalid_argument("matrix CSV: ragged rows");
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("matrix CSV: empty input");
  return Matrix(rows, cols, std::move(data));
}

Matrix parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("data")) {
    throw std::invalid_argument("matrix JSON: expected {\"m\":..,\"n\":..,\"data\":[..]}");
  }
  const auto m = j.at("m").get<std::size_t>();
  const auto n = j.at("n").get<std::size_t>();
  std::vector<double> data;
  const auto& d = j.at("data");
  if (!d.is_array()) throw std::invalid_argument("matrix JSON: data must be an array");
  for (const auto& x : d) {
    if (x.is_array()) {
      for (const auto& y : x) data.push_back(y.get<double>());
    } else {
      data.push_back(x.get<double>());
    }
  }
  if (m == 0 || n == 0 || data.size() != m * n) {
    throw std::invalid_argument("matrix JSON: data length does not match m*n");
  }
  return Matrix(m, n, std::move(data));
}

Matrix read_matrix_file(const std::string& path) {
  const std::string text = slurp(path);
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? parse_matrix_json(text) : parse_matrix_csv(text);
}

std::string format_matrix_csv(const Matrix& a) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << a(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace matnorm

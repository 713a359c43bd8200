#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>

#include "quadloc/error.hpp"

namespace quadloc::la {

// Dense row-major matrix with compile-time capacity and runtime dimensions.
// Storage is a plain std::array inside the object, so construction, copies and
// every operation below touch no heap memory.  Dimensions may be anything from
// 0 x 0 up to MaxRows x MaxCols; rank-deficient factorizations rely on empty
// and thin shapes behaving like ordinary matrices.
template <int MaxRows, int MaxCols>
class Mat {
  static_assert(MaxRows >= 0 && MaxCols >= 0, "capacity must be non-negative");

 public:
  Mat() : rows_(MaxRows), cols_(MaxCols) { data_.fill(0.0); }

  Mat(int rows, int cols) : rows_(rows), cols_(cols) {
    assert(rows >= 0 && rows <= MaxRows);
    assert(cols >= 0 && cols <= MaxCols);
    data_.fill(0.0);
  }

  // Row-by-row literal, mainly for tests and small fixed tables.
  Mat(std::initializer_list<std::initializer_list<double>> rows)
      : rows_(static_cast<int>(rows.size())), cols_(0) {
    assert(rows_ <= MaxRows);
    data_.fill(0.0);
    int i = 0;
    for (const auto& r : rows) {
      if (i == 0) {
        cols_ = static_cast<int>(r.size());
        assert(cols_ <= MaxCols);
      }
      assert(static_cast<int>(r.size()) == cols_);
      int j = 0;
      for (double v : r) (*this)(i, j++) = v;
      ++i;
    }
  }

  static Mat zeros(int rows, int cols) { return Mat(rows, cols); }

  static Mat identity(int n) {
    assert(n <= MaxRows && n <= MaxCols);
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) * MaxCols + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) * MaxCols + j];
  }

  // Linear access for column/row vectors.
  double& operator[](int i) {
    assert(rows_ == 1 || cols_ == 1);
    return cols_ == 1 ? (*this)(i, 0) : (*this)(0, i);
  }
  double operator[](int i) const {
    assert(rows_ == 1 || cols_ == 1);
    return cols_ == 1 ? (*this)(i, 0) : (*this)(0, i);
  }

  void resize(int rows, int cols) {
    assert(rows >= 0 && rows <= MaxRows);
    assert(cols >= 0 && cols <= MaxCols);
    rows_ = rows;
    cols_ = cols;
    data_.fill(0.0);
  }

  template <int R2, int C2>
  void set_block(int i0, int j0, const Mat<R2, C2>& b) {
    assert(i0 + b.rows() <= rows_ && j0 + b.cols() <= cols_);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  template <int R2, int C2>
  Mat<R2, C2> block(int i0, int j0, int r = R2, int c = C2) const {
    assert(i0 + r <= rows_ && j0 + c <= cols_);
    Mat<R2, C2> out(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
    return out;
  }

  Mat<MaxCols, MaxRows> transposed() const {
    Mat<MaxCols, MaxRows> out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

 private:
  int rows_, cols_;
  std::array<double, static_cast<std::size_t>(MaxRows) * MaxCols> data_;
};

using Vec3 = Mat<3, 1>;
using Vec6 = Mat<6, 1>;
using Mat3 = Mat<3, 3>;
using Mat6 = Mat<6, 6>;

inline Vec3 vec3(double x, double y, double z) {
  Vec3 v;
  v[0] = x;
  v[1] = y;
  v[2] = z;
  return v;
}

inline Vec6 vec6(double a, double b, double c, double d, double e, double f) {
  Vec6 v;
  v[0] = a;
  v[1] = b;
  v[2] = c;
  v[3] = d;
  v[4] = e;
  v[5] = f;
  return v;
}

template <int R1, int C1, int R2, int C2>
auto operator+(const Mat<R1, C1>& a, const Mat<R2, C2>& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Mat<(R1 < R2 ? R1 : R2), (C1 < C2 ? C1 : C2)> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

template <int R1, int C1, int R2, int C2>
auto operator-(const Mat<R1, C1>& a, const Mat<R2, C2>& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Mat<(R1 < R2 ? R1 : R2), (C1 < C2 ? C1 : C2)> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

template <int R, int C>
Mat<R, C> operator-(const Mat<R, C>& a) {
  Mat<R, C> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = -a(i, j);
  return out;
}

template <int R, int C>
Mat<R, C> operator*(double s, const Mat<R, C>& a) {
  Mat<R, C> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  return out;
}

template <int R, int C>
Mat<R, C> operator*(const Mat<R, C>& a, double s) {
  return s * a;
}

// Matrix product; result capacity comes from the left rows and right columns.
template <int R1, int C1, int R2, int C2>
Mat<R1, C2> operator*(const Mat<R1, C1>& a, const Mat<R2, C2>& b) {
  assert(a.cols() == b.rows());
  Mat<R1, C2> out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <int R1, int C1, int R2, int C2>
double dot(const Mat<R1, C1>& a, const Mat<R2, C2>& b) {
  assert(a.cols() == 1 && b.cols() == 1 && a.rows() == b.rows());
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i) s += a(i, 0) * b(i, 0);
  return s;
}

template <int R, int C>
double norm(const Mat<R, C>& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

template <int R, int C>
double max_abs(const Mat<R, C>& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
  return s;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return vec3(a[1] * b[2] - a[2] * b[1],
              a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]);
}

// Skew-symmetric matrix such that skew(a) * b == cross(a, b).
inline Mat3 skew(const Vec3& a) {
  Mat3 s;
  s(0, 1) = -a[2];
  s(0, 2) = a[1];
  s(1, 0) = a[2];
  s(1, 2) = -a[0];
  s(2, 0) = -a[1];
  s(2, 1) = a[0];
  return s;
}

inline Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r(0, 0) = 1.0;
  r(1, 1) = c;
  r(1, 2) = -s;
  r(2, 1) = s;
  r(2, 2) = c;
  return r;
}

inline Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r(0, 0) = c;
  r(0, 2) = s;
  r(1, 1) = 1.0;
  r(2, 0) = -s;
  r(2, 2) = c;
  return r;
}

inline Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r(0, 0) = c;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = c;
  r(2, 2) = 1.0;
  return r;
}

// Closed-form 3x3 inverse with a determinant guard.
inline Mat3 inverse3(const Mat3& m, double tol = 1e-10) {
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  if (std::abs(det) < tol) throw SingularMatrixError("3x3 inverse: determinant near zero");
  const double inv = 1.0 / det;
  Mat3 out;
  out(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) * inv;
  out(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) * inv;
  out(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) * inv;
  out(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) * inv;
  out(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) * inv;
  out(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) * inv;
  out(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) * inv;
  out(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) * inv;
  out(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) * inv;
  return out;
}

inline double det3(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace quadloc::la

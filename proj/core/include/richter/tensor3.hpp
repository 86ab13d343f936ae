#pragma once

// Closed-form 3x3 real linear algebra: symmetric eigensystems, spectral
// matrix functions, left polar decomposition and scalar reductions.

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "richter/errors.hpp"

namespace richter {

using Vec3 = std::array<double, 3>;

// Absolute floor used by every scale-relative tolerance in the library.
inline constexpr double kAbsFloor = 1e-14;

// Determinants below this magnitude are treated as singular.
inline constexpr double kSingularDet = 1e-14;

// Eigenvalues closer than kDegenerateGap * (max - min + 1) are one cluster.
inline constexpr double kDegenerateGap = 1e-8;

/// Row-major 3x3 real matrix.
class Mat3 {
 public:
  constexpr Mat3() = default;
  constexpr explicit Mat3(const std::array<double, 9>& entries) : a_(entries) {}
  constexpr Mat3(double a00, double a01, double a02,  //
                 double a10, double a11, double a12,  //
                 double a20, double a21, double a22)
      : a_{a00, a01, a02, a10, a11, a12, a20, a21, a22} {}

  static constexpr Mat3 zero() { return Mat3{}; }
  static constexpr Mat3 identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr Mat3 diag(double a, double b, double c) {
    return Mat3(a, 0, 0, 0, b, 0, 0, 0, c);
  }
  /// Matrix whose columns are c0, c1, c2.
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  constexpr double operator()(int i, int j) const { return a_[3 * i + j]; }
  constexpr double& operator()(int i, int j) { return a_[3 * i + j]; }

  constexpr const std::array<double, 9>& entries() const { return a_; }
  Vec3 column(int j) const { return {a_[j], a_[3 + j], a_[6 + j]}; }

  bool all_finite() const;

  Mat3& operator+=(const Mat3& o);
  Mat3& operator-=(const Mat3& o);
  Mat3& operator*=(double s);

  friend bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<double, 9> a_{};
};

Mat3 operator+(Mat3 a, const Mat3& b);
Mat3 operator-(Mat3 a, const Mat3& b);
Mat3 operator-(const Mat3& a);
Mat3 operator*(Mat3 a, double s);
Mat3 operator*(double s, Mat3 a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);

Mat3 transpose(const Mat3& a);
double trace(const Mat3& a);
double det(const Mat3& a);
double frobenius_norm(const Mat3& a);
/// Signed 2x2 minors: cofactor(A) = det(A) * inverse(A)^T for invertible A.
Mat3 cofactor(const Mat3& a);
/// Throws SingularInput when |det a| < kSingularDet.
Mat3 inverse(const Mat3& a);

/// Symmetric 3x3 matrix stored as its upper triangle
/// (xx, yy, zz, xy, xz, yz). Symmetry holds by construction.
class SymTensor {
 public:
  constexpr SymTensor() = default;
  constexpr SymTensor(double xx, double yy, double zz, double xy, double xz, double yz)
      : s_{xx, yy, zz, xy, xz, yz} {}

  static constexpr SymTensor zero() { return SymTensor{}; }
  static constexpr SymTensor identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr SymTensor diag(double a, double b, double c) { return {a, b, c, 0, 0, 0}; }
  static constexpr SymTensor diag(const Vec3& d) { return diag(d[0], d[1], d[2]); }
  /// Takes the upper triangle of m; the lower triangle is ignored.
  static SymTensor from_upper(const Mat3& m);
  /// (m + m^T) / 2.
  static SymTensor symmetric_part(const Mat3& m);

  double operator()(int i, int j) const;
  constexpr const std::array<double, 6>& components() const { return s_; }

  Mat3 to_mat() const;
  bool all_finite() const;

  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(double s);

  friend bool operator==(const SymTensor&, const SymTensor&) = default;

 private:
  std::array<double, 6> s_{};
};

SymTensor operator+(SymTensor a, const SymTensor& b);
SymTensor operator-(SymTensor a, const SymTensor& b);
SymTensor operator-(const SymTensor& a);
SymTensor operator*(SymTensor a, double s);
SymTensor operator*(double s, SymTensor a);
Mat3 operator*(const SymTensor& a, const SymTensor& b);
Mat3 operator*(const SymTensor& a, const Mat3& b);
Mat3 operator*(const Mat3& a, const SymTensor& b);

double trace(const SymTensor& a);
double det(const SymTensor& a);
double frobenius_norm(const SymTensor& a);
/// tr(a b) for symmetric a, b.
double contract(const SymTensor& a, const SymTensor& b);
/// a * a, which is again symmetric.
SymTensor square(const SymTensor& a);
/// a - (tr a / 3) id.
SymTensor deviator(const SymTensor& a);
/// Frobenius norm of a b - b a.
double commutator_norm(const SymTensor& a, const SymTensor& b);

/// Proper orthogonal matrix. Construction checks R R^T = id to 1e-10 and det R > 0.
class Rotation {
 public:
  Rotation() = default;
  /// Throws DomainError if m is not a rotation within kTolerance.
  explicit Rotation(const Mat3& m);

  static constexpr double kTolerance = 1e-10;

  const Mat3& matrix() const { return m_; }
  Mat3 transposed() const { return transpose(m_); }

  /// Frobenius norm of R R^T - id.
  static double orthogonality_defect(const Mat3& m);

 private:
  Mat3 m_ = Mat3::identity();
};

/// Symmetric eigensystem: values sorted descending, vectors are the
/// matching columns of a rotation.
struct EigenSys {
  Vec3 values{};
  Rotation vectors;

  /// Q diag(values) Q^T.
  SymTensor compose() const;
  /// Q diag(d) Q^T with the stored frame.
  SymTensor compose(const Vec3& d) const;
};

EigenSys sym_eigen(const SymTensor& a);

/// Cluster id per eigenvalue (sorted descending input), using kDegenerateGap.
/// Returns the number of distinct clusters through `count`.
std::array<int, 3> eigen_clusters(const Vec3& sorted_values, int& count);

/// Q diag(f(lambda_i)) Q^T. Throws DomainError if f is not finite at an eigenvalue.
template <class Fn>
SymTensor primary_fn(const EigenSys& eig, Fn&& f) {
  Vec3 mapped{};
  for (int i = 0; i < 3; ++i) {
    mapped[i] = f(eig.values[i]);
    if (!std::isfinite(mapped[i])) {
      throw DomainError("primary_fn: function undefined at eigenvalue " +
                        std::to_string(eig.values[i]));
    }
  }
  return eig.compose(mapped);
}

template <class Fn>
SymTensor primary_fn(const SymTensor& a, Fn&& f) {
  return primary_fn(sym_eigen(a), std::forward<Fn>(f));
}

SymTensor log_spd(const SymTensor& a);
SymTensor exp_sym(const SymTensor& a);
SymTensor sqrt_spd(const SymTensor& a);

struct LeftPolar {
  SymTensor stretch;  // V, symmetric positive definite
  Rotation rotation;  // R, with f = V R
};

/// f = V R with V = sqrt(f f^T). Throws SingularInput if det f <= 0 or
/// |det f| < kSingularDet.
LeftPolar polar_left(const Mat3& f);

/// Real roots of x^3 - e1 x^2 + e2 x - e3 (all roots assumed real), sorted
/// descending. Throws DomainError if the discriminant shows complex roots
/// beyond round-off.
Vec3 real_cubic_roots(double e1, double e2, double e3);

}  // namespace richter

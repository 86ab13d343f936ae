#include "richter/tensor3.hpp"

#include <algorithm>
#include <numbers>

namespace richter {

// ---------------------------------------------------------------- Mat3

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  return Mat3(c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]);
}

bool Mat3::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

Mat3& Mat3::operator+=(const Mat3& o) {
  for (int i = 0; i < 9; ++i) a_[i] += o.a_[i];
  return *this;
}

Mat3& Mat3::operator-=(const Mat3& o) {
  for (int i = 0; i < 9; ++i) a_[i] -= o.a_[i];
  return *this;
}

Mat3& Mat3::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
Mat3 operator-(const Mat3& a) { return a * -1.0; }
Mat3 operator*(Mat3 a, double s) { return a *= s; }
Mat3 operator*(double s, Mat3 a) { return a *= s; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
          a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
          a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

Mat3 transpose(const Mat3& a) {
  return Mat3(a(0, 0), a(1, 0), a(2, 0), a(0, 1), a(1, 1), a(2, 1), a(0, 2), a(1, 2), a(2, 2));
}

double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double frobenius_norm(const Mat3& a) {
  double s = 0.0;
  for (double v : a.entries()) s += v * v;
  return std::sqrt(s);
}

Mat3 cofactor(const Mat3& a) {
  Mat3 c;
  c(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  c(0, 1) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  c(0, 2) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  c(1, 0) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  c(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  c(1, 2) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  c(2, 0) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  c(2, 1) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  c(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return c;
}

Mat3 inverse(const Mat3& a) {
  const double d = det(a);
  if (!(std::abs(d) >= kSingularDet)) {
    throw SingularInput("inverse: |det| = " + std::to_string(std::abs(d)) + " below singular threshold");
  }
  return transpose(cofactor(a)) * (1.0 / d);
}

// ----------------------------------------------------------- SymTensor

namespace {

constexpr int kSymIndex[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};

}  // namespace

SymTensor SymTensor::from_upper(const Mat3& m) {
  return {m(0, 0), m(1, 1), m(2, 2), m(0, 1), m(0, 2), m(1, 2)};
}

SymTensor SymTensor::symmetric_part(const Mat3& m) {
  return {m(0, 0),
          m(1, 1),
          m(2, 2),
          0.5 * (m(0, 1) + m(1, 0)),
          0.5 * (m(0, 2) + m(2, 0)),
          0.5 * (m(1, 2) + m(2, 1))};
}

double SymTensor::operator()(int i, int j) const { return s_[kSymIndex[i][j]]; }

Mat3 SymTensor::to_mat() const {
  return Mat3(s_[0], s_[3], s_[4], s_[3], s_[1], s_[5], s_[4], s_[5], s_[2]);
}

bool SymTensor::all_finite() const {
  return std::all_of(s_.begin(), s_.end(), [](double v) { return std::isfinite(v); });
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  for (int i = 0; i < 6; ++i) s_[i] += o.s_[i];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
  for (int i = 0; i < 6; ++i) s_[i] -= o.s_[i];
  return *this;
}

SymTensor& SymTensor::operator*=(double s) {
  for (double& v : s_) v *= s;
  return *this;
}

SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
SymTensor operator-(const SymTensor& a) { return a * -1.0; }
SymTensor operator*(SymTensor a, double s) { return a *= s; }
SymTensor operator*(double s, SymTensor a) { return a *= s; }
Mat3 operator*(const SymTensor& a, const SymTensor& b) { return a.to_mat() * b.to_mat(); }
Mat3 operator*(const SymTensor& a, const Mat3& b) { return a.to_mat() * b; }
Mat3 operator*(const Mat3& a, const SymTensor& b) { return a * b.to_mat(); }

double trace(const SymTensor& a) { return a(0, 0) + a(1, 1) + a(2, 2); }
double det(const SymTensor& a) { return det(a.to_mat()); }

double frobenius_norm(const SymTensor& a) { return std::sqrt(contract(a, a)); }

double contract(const SymTensor& a, const SymTensor& b) {
  const auto& x = a.components();
  const auto& y = b.components();
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + 2.0 * (x[3] * y[3] + x[4] * y[4] + x[5] * y[5]);
}

SymTensor square(const SymTensor& a) { return SymTensor::from_upper(a * a); }

SymTensor deviator(const SymTensor& a) { return a - SymTensor::identity() * (trace(a) / 3.0); }

double commutator_norm(const SymTensor& a, const SymTensor& b) {
  const Mat3 ab = a * b;
  return frobenius_norm(ab - transpose(ab));
}

// ------------------------------------------------------------ Rotation

Rotation::Rotation(const Mat3& m) : m_(m) {
  if (!m.all_finite() || orthogonality_defect(m) > kTolerance || det(m) <= 0.0) {
    throw DomainError("Rotation: matrix is not proper orthogonal");
  }
}

double Rotation::orthogonality_defect(const Mat3& m) {
  return frobenius_norm(m * transpose(m) - Mat3::identity());
}

// ------------------------------------------------------------- EigenSys

SymTensor EigenSys::compose() const { return compose(values); }

SymTensor EigenSys::compose(const Vec3& d) const {
  const Mat3& q = vectors.matrix();
  std::array<double, 6> s{};
  constexpr int rows[6] = {0, 1, 2, 0, 0, 1};
  constexpr int cols[6] = {0, 1, 2, 1, 2, 2};
  for (int c = 0; c < 6; ++c) {
    const int i = rows[c];
    const int j = cols[c];
    s[c] = d[0] * q(i, 0) * q(j, 0) + d[1] * q(i, 1) * q(j, 1) + d[2] * q(i, 2) * q(j, 2);
  }
  return {s[0], s[1], s[2], s[3], s[4], s[5]};
}

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(dot(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

// Unit eigenvector of the symmetric matrix c for a simple eigenvalue mu,
// taken as the largest cross product of two rows of c - mu id.
Vec3 isolated_eigenvector(const Mat3& c, double mu) {
  const Vec3 r0{c(0, 0) - mu, c(0, 1), c(0, 2)};
  const Vec3 r1{c(1, 0), c(1, 1) - mu, c(1, 2)};
  const Vec3 r2{c(2, 0), c(2, 1), c(2, 2) - mu};
  const std::array<Vec3, 3> candidates{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  int best = 0;
  double best_norm = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double n = dot(candidates[i], candidates[i]);
    if (n > best_norm) {
      best_norm = n;
      best = i;
    }
  }
  if (!(best_norm > 0.0)) return {1.0, 0.0, 0.0};
  return normalized(candidates[best]);
}

// Orthonormal frame whose first column is v; the remaining columns come from
// Gram-Schmidt on the coordinate axis least aligned with v.
Mat3 complete_frame(const Vec3& v) {
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[i]) < std::abs(v[axis])) axis = i;
  Vec3 e{0.0, 0.0, 0.0};
  e[axis] = 1.0;
  const double proj = dot(v, e);
  const Vec3 u = normalized({e[0] - proj * v[0], e[1] - proj * v[1], e[2] - proj * v[2]});
  return Mat3::from_columns(v, u, cross(v, u));
}

double off_diagonal(const Mat3& m) {
  return std::sqrt(m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2));
}

// Cyclic Jacobi sweeps on the symmetric m, accumulating rotations into q.
void jacobi_refine(Mat3& m, Mat3& q) {
  constexpr int kMaxSweeps = 12;
  constexpr std::pair<int, int> kPairs[3] = {{1, 2}, {0, 2}, {0, 1}};
  const double scale = frobenius_norm(m);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal(m) <= 1e-18 * scale) return;
    for (const auto& [p, r] : kPairs) {
      const double apq = m(p, r);
      if (apq == 0.0) continue;
      const double theta = (m(r, r) - m(p, p)) / (2.0 * apq);
      const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      Mat3 j = Mat3::identity();
      j(p, p) = c;
      j(r, r) = c;
      j(p, r) = s;
      j(r, p) = -s;
      m = transpose(j) * m * j;
      m(p, r) = 0.0;
      m(r, p) = 0.0;
      q = q * j;
    }
  }
}

}  // namespace

EigenSys sym_eigen(const SymTensor& a) {
  const double shift = trace(a) / 3.0;
  const SymTensor b = a - SymTensor::identity() * shift;
  const double b_norm2 = contract(b, b);

  Mat3 frame = Mat3::identity();
  if (b_norm2 > 0.0) {
    // Trigonometric roots of the characteristic polynomial of the scaled
    // deviator c = b / p, whose eigenvalues lie in [-2, 2].
    const double p = std::sqrt(b_norm2 / 6.0);
    const Mat3 c = b.to_mat() * (1.0 / p);
    const double r = std::clamp(det(c) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double mu_hi = 2.0 * std::cos(phi);
    const double mu_lo = 2.0 * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double mu_mid = -mu_hi - mu_lo;
    // The eigenvalue farthest from the other two has a well-conditioned
    // eigenvector; the remaining 2x2 block is settled by Jacobi.
    const double isolated = (mu_hi - mu_mid >= mu_mid - mu_lo) ? mu_hi : mu_lo;
    frame = complete_frame(isolated_eigenvector(c, isolated));
  }

  Mat3 projected = transpose(frame) * b.to_mat() * frame;
  jacobi_refine(projected, frame);

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return projected(i, i) > projected(j, j); });

  Vec3 values{};
  std::array<Vec3, 3> cols{};
  for (int k = 0; k < 3; ++k) {
    values[k] = projected(order[k], order[k]) + shift;
    cols[k] = frame.column(order[k]);
  }
  Mat3 q = Mat3::from_columns(cols[0], cols[1], cols[2]);
  if (det(q) < 0.0) {
    for (int i = 0; i < 3; ++i) q(i, 2) = -q(i, 2);
  }
  return {values, Rotation(q)};
}

std::array<int, 3> eigen_clusters(const Vec3& v, int& count) {
  const double threshold = kDegenerateGap * (v[0] - v[2] + 1.0);
  std::array<int, 3> id{0, 0, 0};
  id[1] = (v[0] - v[1] <= threshold) ? id[0] : id[0] + 1;
  id[2] = (v[1] - v[2] <= threshold) ? id[1] : id[1] + 1;
  count = id[2] + 1;
  return id;
}

SymTensor log_spd(const SymTensor& a) {
  return primary_fn(a, [](double x) { return x > 0.0 ? std::log(x) : std::nan(""); });
}

SymTensor exp_sym(const SymTensor& a) {
  return primary_fn(a, [](double x) { return std::exp(x); });
}

SymTensor sqrt_spd(const SymTensor& a) {
  return primary_fn(a, [](double x) { return x >= 0.0 ? std::sqrt(x) : std::nan(""); });
}

// ---------------------------------------------------------------- polar

LeftPolar polar_left(const Mat3& f) {
  if (!f.all_finite()) throw SingularInput("polar_left: non-finite entries");
  const double d = det(f);
  if (!(d > 0.0) || d < kSingularDet) {
    throw SingularInput("polar_left: det F = " + std::to_string(d) + " is not positive");
  }
  const EigenSys eig = sym_eigen(SymTensor::symmetric_part(f * transpose(f)));
  Vec3 root{};
  Vec3 inv_root{};
  for (int i = 0; i < 3; ++i) {
    if (!(eig.values[i] > 0.0)) throw SingularInput("polar_left: F F^T is not positive definite");
    root[i] = std::sqrt(eig.values[i]);
    inv_root[i] = 1.0 / root[i];
  }
  const SymTensor v = eig.compose(root);
  const Mat3 r = eig.compose(inv_root) * f;
  if (Rotation::orthogonality_defect(r) > Rotation::kTolerance) {
    throw SingularInput("polar_left: F too ill-conditioned for an orthogonal rotation factor");
  }
  return {v, Rotation(r)};
}

// ---------------------------------------------------------------- cubic

Vec3 real_cubic_roots(double e1, double e2, double e3) {
  const double s = e1 / 3.0;
  const double p = e2 - e1 * e1 / 3.0;
  const double q = -2.0 * e1 * e1 * e1 / 27.0 + e1 * e2 / 3.0 - e3;
  const double scale = std::max({std::abs(s), std::sqrt(std::abs(e2)), std::cbrt(std::abs(e3)), 1e-300});

  Vec3 roots{s, s, s};
  if (p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    if (std::abs(arg) > 1.0 + 1e-8) throw DomainError("real_cubic_roots: cubic has complex roots");
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots[k] = s + m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
  } else if (p > 1e-12 * scale * scale) {
    throw DomainError("real_cubic_roots: cubic has complex roots");
  }

  const auto poly = [&](double x) { return ((x - e1) * x + e2) * x - e3; };
  const auto slope = [&](double x) { return (3.0 * x - 2.0 * e1) * x + e2; };
  for (double& x : roots) {
    for (int it = 0; it < 2; ++it) {
      const double d = slope(x);
      if (std::abs(d) <= 1e-8 * scale * scale) break;
      const double candidate = x - poly(x) / d;
      if (std::abs(poly(candidate)) >= std::abs(poly(x))) break;
      x = candidate;
    }
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace richter

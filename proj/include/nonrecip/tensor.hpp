#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace nonrecip {

using Complex = std::complex<double>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Dense 3x3 complex matrix, row-major.
class ComplexMatrix3 {
 public:
  constexpr ComplexMatrix3() = default;
  constexpr explicit ComplexMatrix3(const std::array<std::array<Complex, 3>, 3>& rows) : m_(rows) {}

  static constexpr ComplexMatrix3 identity() { return diagonal(1.0, 1.0, 1.0); }
  static constexpr ComplexMatrix3 diagonal(Complex a, Complex b, Complex c) {
    ComplexMatrix3 r;
    r.m_[0][0] = a;
    r.m_[1][1] = b;
    r.m_[2][2] = c;
    return r;
  }
  /// a (x) b
  static ComplexMatrix3 outer(const Vec3& a, const Vec3& b);
  /// Levi-Civita contraction: result_ij = eps_ijk v_k.
  static ComplexMatrix3 levi_civita(const Vec3& v);

  constexpr Complex& operator()(int i, int j) { return m_[i][j]; }
  constexpr const Complex& operator()(int i, int j) const { return m_[i][j]; }

  ComplexMatrix3 transpose() const;
  ComplexMatrix3 conj() const;
  ComplexMatrix3 adjoint() const;
  Complex trace() const;
  /// Frobenius norm.
  double norm() const;
  bool is_finite() const;

  ComplexMatrix3& operator+=(const ComplexMatrix3& o);
  ComplexMatrix3& operator-=(const ComplexMatrix3& o);
  ComplexMatrix3& operator*=(Complex s);

  friend ComplexMatrix3 operator+(ComplexMatrix3 a, const ComplexMatrix3& b) { return a += b; }
  friend ComplexMatrix3 operator-(ComplexMatrix3 a, const ComplexMatrix3& b) { return a -= b; }
  friend ComplexMatrix3 operator*(Complex s, ComplexMatrix3 a) { return a *= s; }
  friend ComplexMatrix3 operator*(ComplexMatrix3 a, Complex s) { return a *= s; }
  friend ComplexMatrix3 operator*(const ComplexMatrix3& a, const ComplexMatrix3& b);
  friend bool operator==(const ComplexMatrix3&, const ComplexMatrix3&) = default;

 private:
  std::array<std::array<Complex, 3>, 3> m_{};
};

/// Hermitian ("absorptive") part (A - A^dagger) / 2i.
ComplexMatrix3 hermitian_part(const ComplexMatrix3& a);

struct SymAntisym {
  ComplexMatrix3 plus;   // (A + A^T) / 2
  ComplexMatrix3 minus;  // (A - A^T) / 2
};

SymAntisym sym_antisym_split(const ComplexMatrix3& a);

/// Tr{A B} without forming the product.
Complex trace_product(const ComplexMatrix3& a, const ComplexMatrix3& b);

}  // namespace nonrecip

#include "nonrecip/tensor.hpp"

namespace nonrecip {

ComplexMatrix3 ComplexMatrix3::outer(const Vec3& a, const Vec3& b) {
  ComplexMatrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = a[i] * b[j];
  return r;
}

ComplexMatrix3 ComplexMatrix3::levi_civita(const Vec3& v) {
  ComplexMatrix3 r;
  r.m_[0][1] = v.z;
  r.m_[1][0] = -v.z;
  r.m_[1][2] = v.x;
  r.m_[2][1] = -v.x;
  r.m_[2][0] = v.y;
  r.m_[0][2] = -v.y;
  return r;
}

ComplexMatrix3 ComplexMatrix3::transpose() const {
  ComplexMatrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = m_[j][i];
  return r;
}

ComplexMatrix3 ComplexMatrix3::conj() const {
  ComplexMatrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = std::conj(m_[i][j]);
  return r;
}

ComplexMatrix3 ComplexMatrix3::adjoint() const {
  ComplexMatrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = std::conj(m_[j][i]);
  return r;
}

Complex ComplexMatrix3::trace() const { return m_[0][0] + m_[1][1] + m_[2][2]; }

double ComplexMatrix3::norm() const {
  double s = 0.0;
  for (const auto& row : m_)
    for (const auto& v : row) s += std::norm(v);
  return std::sqrt(s);
}

bool ComplexMatrix3::is_finite() const {
  for (const auto& row : m_)
    for (const auto& v : row)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix3& ComplexMatrix3::operator+=(const ComplexMatrix3& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m_[i][j] += o.m_[i][j];
  return *this;
}

ComplexMatrix3& ComplexMatrix3::operator-=(const ComplexMatrix3& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m_[i][j] -= o.m_[i][j];
  return *this;
}

ComplexMatrix3& ComplexMatrix3::operator*=(Complex s) {
  for (auto& row : m_)
    for (auto& v : row) v *= s;
  return *this;
}

ComplexMatrix3 operator*(const ComplexMatrix3& a, const ComplexMatrix3& b) {
  ComplexMatrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < 3; ++k) s += a.m_[i][k] * b.m_[k][j];
      r.m_[i][j] = s;
    }
  return r;
}

ComplexMatrix3 hermitian_part(const ComplexMatrix3& a) {
  ComplexMatrix3 r;
  const Complex inv_2i(0.0, -0.5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (a(i, j) - std::conj(a(j, i))) * inv_2i;
  // Diagonal is real by construction; drop rounding residue.
  for (int i = 0; i < 3; ++i) r(i, i) = r(i, i).real();
  return r;
}

SymAntisym sym_antisym_split(const ComplexMatrix3& a) {
  SymAntisym s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      s.plus(i, j) = 0.5 * (a(i, j) + a(j, i));
      s.minus(i, j) = a(i, j) - s.plus(i, j);
    }
  return s;
}

Complex trace_product(const ComplexMatrix3& a, const ComplexMatrix3& b) {
  Complex s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, i);
  return s;
}

}  // namespace nonrecip

#include "nonrecip/green.hpp"

#include <cmath>
#include <string>

#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/materials.hpp"

namespace nonrecip {

namespace {

constexpr double kSeriesCutoff = 0.5;
constexpr int kSeriesTerms = 30;

void check_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("Green's tensor requires omega > 0, got " + std::to_string(omega));
}

}  // namespace

PQPair pq(double x) {
  return {Complex(-1.0 + x * x, x), Complex(3.0 - x * x, -3.0 * x)};
}

PQPair phased_pq(double x) {
  if (std::abs(x) >= kSeriesCutoff) {
    const Complex phase = std::polar(1.0, x);
    const PQPair raw = pq(x);
    return {phase * raw.p, phase * raw.q};
  }
  // e^{ix} p = sum_n -(n-1)^2/n! (ix)^n,  e^{ix} q = sum_n (n-1)(n-3)/n! (ix)^n
  Complex p = 0.0;
  Complex q = 0.0;
  Complex power = 1.0;  // (ix)^n / n!
  for (int n = 0; n < kSeriesTerms; ++n) {
    if (n > 0) power *= Complex(0.0, x) / static_cast<double>(n);
    const double nm1 = n - 1.0;
    p += -(nm1 * nm1) * power;
    q += (nm1 * (n - 3.0)) * power;
  }
  return {p, q};
}

ComplexMatrix3 g0_free(const Vec3& r, const Vec3& rprime, double omega, double epsilon) {
  check_omega(omega);
  const Vec3 sep = r - rprime;
  const double d = sep.norm();
  if (d < epsilon)
    throw CoincidentPointsError("g0_free: points closer than " + std::to_string(epsilon) + " m");
  const double k = omega / kSpeedOfLight;
  const PQPair f = phased_pq(k * d);
  const Vec3 n = (1.0 / d) * sep;
  ComplexMatrix3 g = f.q * ComplexMatrix3::outer(n, n);
  for (int i = 0; i < 3; ++i) g(i, i) += f.p;
  g *= 1.0 / (4.0 * kPi * d * d * d * k * k);
  return g;
}

ComplexMatrix3 g0_coincident_imag(double omega) {
  check_omega(omega);
  const double v = omega / (6.0 * kPi * kSpeedOfLight);
  return ComplexMatrix3::diagonal(v, v, v);
}

ComplexMatrix3 g1_dressed(const Vec3& r, const Vec3& rprime, double omega,
                          const PolarizabilityEntries& alpha1, const Vec3& r1, double epsilon) {
  check_omega(omega);
  const double k = omega / kSpeedOfLight;
  ComplexMatrix3 free_part;
  if ((r - rprime).norm() < epsilon)
    free_part = Complex(0.0, 1.0) * g0_coincident_imag(omega);
  else
    free_part = g0_free(r, rprime, omega, epsilon);
  const ComplexMatrix3 scattered =
      g0_free(r, r1, omega, epsilon) * alpha_matrix(alpha1) * g0_free(r1, rprime, omega, epsilon);
  return free_part + (4.0 * kPi * k * k) * scattered;
}

}  // namespace nonrecip

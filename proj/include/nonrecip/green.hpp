#pragma once

#include "nonrecip/tensor.hpp"

namespace nonrecip {

struct PolarizabilityEntries;

/// Retardation factors of the free dyadic Green's tensor at x = omega d / c.
struct PQPair {
  Complex p;  // -1 + i x + x^2
  Complex q;  //  3 - 3 i x - x^2
};

PQPair pq(double x);

/// e^{ix} p(x) and e^{ix} q(x). Evaluated by power series for small x so that
/// the O(x^3) imaginary parts do not lose digits to cancellation.
PQPair phased_pq(double x);

inline constexpr double kDefaultCoincidenceEpsilon = 1e-12;  // m

/// Free Green's tensor without the local delta term:
/// e^{ikd}/(4 pi d^5 k^2) [d^2 p I + q (r - r')(r - r')].
/// Throws CoincidentPointsError if |r - r'| < epsilon.
ComplexMatrix3 g0_free(const Vec3& r, const Vec3& rprime, double omega,
                       double epsilon = kDefaultCoincidenceEpsilon);

/// Im G0(r, r) = omega / (6 pi c) * I. The real part at coincidence is not
/// defined by the model and is never produced.
ComplexMatrix3 g0_coincident_imag(double omega);

/// Green's tensor dressed by point particle 1 at r1:
/// G0(r, r') + 4 pi k^2 G0(r, r1) alpha1 G0(r1, r').
/// For r == r' the free term is replaced by i * g0_coincident_imag, so only
/// hermitian_part() of the result is meaningful there.
ComplexMatrix3 g1_dressed(const Vec3& r, const Vec3& rprime, double omega,
                          const PolarizabilityEntries& alpha1, const Vec3& r1,
                          double epsilon = kDefaultCoincidenceEpsilon);

}  // namespace nonrecip

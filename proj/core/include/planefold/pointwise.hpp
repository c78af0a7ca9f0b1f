#pragma once

#include "planefold/field.hpp"
#include "planefold/types.hpp"

namespace planefold {

// Restriction of P(v) = S v - <S v, n> n to the plane pi = n^perp, where
// S = (D eta + D eta^T)/2 of the unit-scaled field. The 2x2 block is written
// in the deterministic orthonormal basis {basis1, basis2} of pi.
struct ProjectedOperator {
  Vec3 point;
  Vec3 normal;       // eta / |eta|
  Mat3 sym;          // S of the raw jet
  Mat2 restriction;  // unit-field operator on pi
  Vec3 basis1, basis2;
};

struct PrincipalData {
  double k1 = 0.0, k2 = 0.0;  // critical values of k_eta, k1 <= k2
  Vec3 e1 = Vec3::Zero(), e2 = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  double gap = 0.0;  // k2 - k1
  bool umbilic = false;
};

// Coefficients of the implicit quadratic / plane pair in global coordinates.
struct ImplicitCoeffs {
  std::array<double, 6> L{};  // L1..L6
  Vec3 plane = Vec3::Zero();  // eta1, eta2, eta3
  bool has_reduced = false;
  double Lr = 0.0, Mr = 0.0, Nr = 0.0;  // valid when has_reduced

  std::array<double, 3> reduced() const {
    if (!has_reduced)
      throw NumericError("reduced implicit form unavailable: |eta1| too small, use L1..L6");
    return {Lr, Mr, Nr};
  }
};

// -<D eta . dr, dr> / <dr, dr>; the jet should be of a unit-scaled field for
// the value to be the normal curvature of the distribution.
double normal_curvature(const FieldJet& jet, const Vec3& dr);

// (D eta . dr, dr, eta) / <dr, dr>
double geodesic_torsion(const FieldJet& jet, const Vec3& dr);

// <curl eta, eta> / |eta|^2; zero iff the plane field is Frobenius integrable.
double integrability_scalar(const FieldJet& jet);

ProjectedOperator projected_operator(const FieldJet& jet);

PrincipalData principal_data(const FieldJet& jet);

ImplicitCoeffs implicit_coeffs(const FieldJet& jet);

bool is_partially_umbilic(const FieldJet& jet, double tol);

// default umbilic tolerance, relative in the curvature scale
inline double umbilic_tolerance(double k1, double k2) {
  return 1e-7 * (1.0 + std::abs(k1) + std::abs(k2));
}

}  // namespace planefold

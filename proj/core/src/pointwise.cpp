#include "planefold/pointwise.hpp"

#include <cmath>

namespace planefold {

namespace {

double mixed(const Vec3& a, const Vec3& b, const Vec3& c) { return a.cross(b).dot(c); }

void check_regular(const FieldJet& jet) {
  if (jet.value.norm() < kSingularFieldTol)
    throw SingularityError("field singularity: |eta| < 1e-9 at the evaluation point");
}

}  // namespace

double normal_curvature(const FieldJet& jet, const Vec3& dr) {
  double n2 = dr.squaredNorm();
  if (n2 == 0.0) throw Error("normal_curvature: zero direction");
  return -(jet.jacobian * dr).dot(dr) / n2;
}

double geodesic_torsion(const FieldJet& jet, const Vec3& dr) {
  double n2 = dr.squaredNorm();
  if (n2 == 0.0) throw Error("geodesic_torsion: zero direction");
  return mixed(jet.jacobian * dr, dr, jet.value) / n2;
}

double integrability_scalar(const FieldJet& jet) {
  check_regular(jet);
  return jet.curl().dot(jet.value) / jet.value.squaredNorm();
}

ProjectedOperator projected_operator(const FieldJet& jet) {
  check_regular(jet);
  ProjectedOperator op;
  op.point = jet.point;
  double scale = jet.value.norm();
  op.normal = jet.value / scale;
  op.sym = 0.5 * (jet.jacobian + jet.jacobian.transpose());

  // basis axis: the standard axis least aligned with the normal, ties to the
  // lower index, so the basis is reproducible across runs
  int axis = 0;
  double best = std::abs(op.normal[0]);
  for (int i = 1; i < 3; ++i) {
    if (std::abs(op.normal[i]) < best) {
      best = std::abs(op.normal[i]);
      axis = i;
    }
  }
  Vec3 a = Vec3::Zero();
  a[axis] = 1.0;
  op.basis1 = op.normal.cross(a).normalized();
  op.basis2 = op.normal.cross(op.basis1);

  // <b_i, S_unit b_j> = <b_i, S b_j>/|eta| since the b_i are orthogonal to eta
  op.restriction(0, 0) = op.basis1.dot(op.sym * op.basis1) / scale;
  op.restriction(0, 1) = op.basis1.dot(op.sym * op.basis2) / scale;
  op.restriction(1, 0) = op.basis2.dot(op.sym * op.basis1) / scale;
  op.restriction(1, 1) = op.basis2.dot(op.sym * op.basis2) / scale;
  return op;
}

namespace {

Vec2 apply_sign_convention(Vec2 c) {
  double s = std::abs(c[0]) > 1e-13 ? (c[0] > 0 ? 1.0 : -1.0) : (c[1] >= 0 ? 1.0 : -1.0);
  return s * c;
}

}  // namespace

PrincipalData principal_data(const FieldJet& jet) {
  ProjectedOperator op = projected_operator(jet);
  double a = op.restriction(0, 0);
  double b = 0.5 * (op.restriction(0, 1) + op.restriction(1, 0));
  double c = op.restriction(1, 1);

  double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
  double mu1 = 0.5 * (a + c + disc);  // mu1 >= mu2; eigenvalues of P are -k
  double mu2 = 0.5 * (a + c - disc);

  PrincipalData pd;
  pd.normal = op.normal;
  pd.k1 = -mu1;
  pd.k2 = -mu2;
  pd.gap = pd.k2 - pd.k1;
  pd.umbilic = pd.gap < umbilic_tolerance(pd.k1, pd.k2);

  Vec2 v1;
  if (pd.umbilic && disc < 1e-300) {
    v1 = Vec2(1.0, 0.0);
  } else {
    Vec2 cand1(mu1 - c, b), cand2(b, mu1 - a);
    v1 = cand1.norm() >= cand2.norm() ? cand1 : cand2;
    v1.normalize();
  }
  Vec2 v2(-v1[1], v1[0]);  // exact orthogonal complement in the plane
  v1 = apply_sign_convention(v1);
  v2 = apply_sign_convention(v2);

  pd.e1 = v1[0] * op.basis1 + v1[1] * op.basis2;
  pd.e2 = v2[0] * op.basis1 + v2[1] * op.basis2;
  return pd;
}

ImplicitCoeffs implicit_coeffs(const FieldJet& jet) {
  check_regular(jet);
  const Mat3& D = jet.jacobian;
  double n1 = jet.value[0], n2 = jet.value[1], n3 = jet.value[2];
  auto d = [&](int i, int j) { return D(i - 1, j - 1); };  // d eta_i / d x_j, 1-based

  ImplicitCoeffs ic;
  ic.plane = jet.value;
  ic.L[0] = n1 * (d(3, 2) - d(2, 3)) + n2 * (d(3, 1) + d(1, 3)) - n3 * (d(2, 1) + d(1, 2));
  ic.L[1] = -2 * n1 * d(3, 1) + 2 * n2 * d(3, 2) - 2 * n3 * (d(2, 2) - d(1, 1));
  ic.L[2] = 2 * n1 * d(2, 1) + 2 * n2 * (d(3, 3) - d(1, 1)) - 2 * n3 * d(2, 3);
  ic.L[3] = -n1 * (d(3, 2) + d(2, 3)) - n2 * (d(3, 1) - d(1, 3)) + n3 * (d(2, 1) + d(1, 2));
  ic.L[4] = 2 * n1 * (d(2, 2) - d(3, 3)) - 2 * n2 * d(1, 2) + 2 * n3 * d(1, 3);
  ic.L[5] = n1 * (d(3, 2) + d(2, 3)) - n2 * (d(3, 1) + d(1, 3)) + n3 * (d(2, 1) - d(1, 2));

  if (std::abs(n1) > 1e-8) {
    ic.has_reduced = true;
    ic.Lr = n1 * (n1 * n1 + n3 * n3) * (d(3, 2) + d(2, 3)) -
            n3 * (n1 * n1 + n3 * n3) * (d(1, 2) + d(2, 1)) +
            n2 * (n3 * n3 - n1 * n1) * (d(1, 3) + d(3, 1)) +
            2 * n1 * n2 * n3 * (d(1, 1) - d(3, 3));
    ic.Mr = -2 * n2 * (n1 * n1 + n3 * n3) * (d(1, 2) + d(2, 1)) +
            2 * n3 * (n1 * n1 + n2 * n2) * (d(3, 1) + d(1, 3)) +
            2 * n1 * (n2 * n2 - n3 * n3) * d(1, 1) + 2 * n1 * (n1 * n1 + n3 * n3) * d(2, 2) -
            2 * n1 * (n1 * n1 + n2 * n2) * d(3, 3);
    ic.Nr = -n1 * (n1 * n1 + n2 * n2) * (d(2, 3) + d(3, 2)) +
            n3 * (n1 * n1 - n2 * n2) * (d(1, 2) + d(2, 1)) +
            n2 * (n1 * n1 + n2 * n2) * (d(1, 3) + d(3, 1)) +
            2 * n1 * n2 * n3 * (d(2, 2) - d(1, 1));
  }
  return ic;
}

bool is_partially_umbilic(const FieldJet& jet, double tol) {
  PrincipalData pd = principal_data(jet);
  return pd.gap < tol;
}

}  // namespace planefold

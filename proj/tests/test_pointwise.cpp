#include <doctest.h>

#include <planefold/pointwise.hpp>

#include "support.hpp"

using namespace planefold;
using namespace planefold::testing;

namespace {

double mixed3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.cross(b).dot(c); }

// residual of the eigenvector system for a direction in the plane
double misto_residual(const FieldJet& jet, const Vec3& dr) {
  Mat3 S2 = jet.jacobian + jet.jacobian.transpose();
  return mixed3(S2 * dr, dr, jet.value);
}

const Field kSec6 = fields::circle_cycle_family(0.1, 0.2, 0.5);
const Field kTori = normalize_field(fields::nested_tori());
const Field kTwist = fields::twisted_ring();
const Field kHelix = normalize_field(fields::helical());

Vec3 sample_point(std::mt19937_64& rng, int which) {
  for (;;) {
    Vec3 p = random_point(rng, -1.8, 1.8);
    if (which == 1) {  // tori: stay in the solid torus away from its core circle
      double r = std::hypot(p.x(), p.y());
      p.x() += (p.x() >= 0 ? 1.0 : -1.0);
      p.y() += (p.y() >= 0 ? 1.0 : -1.0);
      r = std::hypot(p.x(), p.y());
      double d2 = (r - 2.0) * (r - 2.0) + p.z() * p.z();
      if (d2 < 0.05 || d2 > 0.9) continue;
    }
    if (which == 2 && std::hypot(p.x(), p.y()) < 0.35) continue;  // twisted: off the axis
    if (which == 0 && std::hypot(p.x(), p.y()) < 0.25) continue;  // family singular near axis
    return p;
  }
}

const Field& field_of(int which) {
  switch (which) {
    case 0: return kSec6;
    case 1: return kTori;
    case 2: return kTwist;
    default: return kHelix;
  }
}

}  // namespace

TEST_CASE("vertical field: everything vanishes, umbilic everywhere") {
  Field f = fields::vertical();
  FieldJet jet = eval_jet(f, Vec3(0, 0, 0), 1);
  CHECK(normal_curvature(jet, Vec3(1, 0, 0)) == 0.0);
  CHECK(geodesic_torsion(jet, Vec3(0.3, 1, 0)) == 0.0);
  CHECK(integrability_scalar(jet) == 0.0);
  PrincipalData pd = principal_data(jet);
  CHECK(pd.k1 == 0.0);
  CHECK(pd.k2 == 0.0);
  CHECK(pd.umbilic);
  CHECK(is_partially_umbilic(jet, 1e-12));
  ImplicitCoeffs ic = implicit_coeffs(jet);
  for (double li : ic.L) CHECK(li == 0.0);
}

TEST_CASE("radial field: hand oracle values at p = (2,0,0)") {
  Field f = fields::radial_unit();
  FieldJet jet = eval_jet(f, Vec3(2, 0, 0), 1);
  CHECK(normal_curvature(jet, Vec3(0, 1, 0)) == doctest::Approx(-0.5).epsilon(1e-12));
  PrincipalData pd = principal_data(jet);
  CHECK(pd.k1 == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(pd.k2 == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(pd.umbilic);
  // gradient field is integrable
  CHECK(std::abs(integrability_scalar(jet)) < 1e-14);
  // partially umbilic: the reduced triple vanishes
  auto lmn = implicit_coeffs(jet).reduced();
  CHECK(std::abs(lmn[0]) < 1e-12);
  CHECK(std::abs(lmn[1]) < 1e-12);
  CHECK(std::abs(lmn[2]) < 1e-12);
}

TEST_CASE("helical field: integrability scalar at the origin is 2") {
  FieldJet jet = eval_jet(fields::helical(), Vec3(0, 0, 0), 1);
  CHECK(integrability_scalar(jet) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("family field on the unit circle: k1 = -1, k2 = a eps, e1 tangent") {
  double a = 0.2, eps = 0.5;
  Field f = fields::circle_cycle_family(0.1, a, eps);
  for (double t : {0.0, 1.1, 3.9}) {
    Vec3 p(std::cos(t), std::sin(t), 0.0);
    PrincipalData pd = principal_data(eval_jet(f, p, 1));
    CHECK(pd.k1 == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(pd.k2 == doctest::Approx(a * eps).epsilon(1e-9));
    Vec3 tangent(-std::sin(t), std::cos(t), 0.0);
    CHECK(std::abs(pd.e1.dot(tangent)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(is_partially_umbilic(eval_jet(f, p, 1), umbilic_tolerance(pd.k1, pd.k2)));
    CHECK(pd.gap == doctest::Approx(a * eps + 1.0));
  }
}

TEST_CASE("principal curvatures match brute-force grid extrema") {
  auto rng = make_rng(2024);
  for (int which = 0; which < 4; ++which) {
    for (int t = 0; t < 12; ++t) {
      Vec3 p = sample_point(rng, which);
      FieldJet jet;
      try {
        jet = eval_jet(field_of(which), p, 1);
      } catch (const DomainError&) { continue; }
      if (jet.value.norm() < 1e-6) continue;
      PrincipalData pd = principal_data(jet);
      auto [kmin, kmax] = grid_curvature_extrema(jet);
      CHECK(std::abs(kmin - pd.k1) < 1e-5);
      CHECK(std::abs(kmax - pd.k2) < 1e-5);
    }
  }
}

TEST_CASE("orthonormality and both eigen characterizations") {
  auto rng = make_rng(31415);
  for (int which = 0; which < 4; ++which) {
    for (int t = 0; t < 25; ++t) {
      Vec3 p = sample_point(rng, which);
      FieldJet jet;
      try {
        jet = eval_jet(field_of(which), p, 1);
      } catch (const DomainError&) { continue; }
      if (jet.value.norm() < 1e-6) continue;
      PrincipalData pd = principal_data(jet);
      CHECK(std::abs(pd.e1.norm() - 1.0) < 1e-10);
      CHECK(std::abs(pd.e2.norm() - 1.0) < 1e-10);
      CHECK(std::abs(pd.e1.dot(pd.e2)) < 1e-10);
      CHECK(std::abs(pd.e1.dot(pd.normal)) < 1e-10);
      CHECK(std::abs(pd.e2.dot(pd.normal)) < 1e-10);
      // directions from the operator eigenproblem solve the mixed-product equation
      CHECK(std::abs(misto_residual(jet, pd.e1)) < 1e-9);
      CHECK(std::abs(misto_residual(jet, pd.e2)) < 1e-9);
    }
  }
}

TEST_CASE("projected operator maps the plane into itself and is symmetric") {
  auto rng = make_rng(5150);
  Field f = kTwist;
  for (int t = 0; t < 20; ++t) {
    Vec3 p = sample_point(rng, 2);
    ProjectedOperator op = projected_operator(eval_jet(f, p, 1));
    for (const Vec3& b : {op.basis1, op.basis2}) {
      Vec3 Sv = op.sym * b;
      Vec3 Pv = Sv - Sv.dot(op.normal) * op.normal;
      CHECK(std::abs(Pv.dot(op.normal)) < 1e-12);
    }
    CHECK(std::abs(op.restriction(0, 1) - op.restriction(1, 0)) < 1e-12);
  }
}

TEST_CASE("geodesic torsion: 2 tau_g + <curl, eta> = 0 along principal directions") {
  auto rng = make_rng(777);
  for (int which = 0; which < 4; ++which) {
    const Field& f = field_of(which);
    // torsion identity needs a unit field; all four test fields here are unit
    for (int t = 0; t < 25; ++t) {
      Vec3 p = sample_point(rng, which);
      FieldJet jet;
      try {
        jet = eval_jet(f, p, 1);
      } catch (const DomainError&) { continue; }
      PrincipalData pd = principal_data(jet);
      double helicity = jet.curl().dot(jet.value);
      CHECK(std::abs(2.0 * geodesic_torsion(jet, pd.e1) + helicity) < 1e-9);
      CHECK(std::abs(2.0 * geodesic_torsion(jet, pd.e2) + helicity) < 1e-9);
    }
  }
}

TEST_CASE("normalized helical field: tau_g(e1) = -<curl, eta>/2 at (1,0,0)") {
  FieldJet jet = eval_jet(kHelix, Vec3(1, 0, 0), 1);
  PrincipalData pd = principal_data(jet);
  double rhs = -0.5 * jet.curl().dot(jet.value);
  CHECK(geodesic_torsion(jet, pd.e1) == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("limit-definition quotient converges at first order") {
  // angle-based quotient: k ~ -phi/|dr| with sin(phi) = <eta(P), dr>/(|proj| |dr|)
  Field f = fields::circle_cycle_family(0.1, 0.2, 0.5);
  Vec3 p(1.3, 0.2, 0.1);
  FieldJet jet = eval_jet(f, p, 1);
  PrincipalData pd = principal_data(jet);
  Vec3 dir = (0.6 * pd.e1 + 0.8 * pd.e2).normalized();
  double k_exact = normal_curvature(jet, dir);

  auto quotient = [&](double h) {
    Vec3 dr = h * dir;
    Vec3 P = p + dr;
    auto ev = f.eval<double>({P.x(), P.y(), P.z()});
    Vec3 etaP(ev[0], ev[1], ev[2]);
    // projection of eta(P) onto span{eta(p), dr} keeps <.,dr>/|.| unchanged
    double sinphi = etaP.dot(dr) / (etaP.norm() * dr.norm());
    double phi = std::asin(sinphi);
    return -phi / dr.norm();
  };

  double e3 = std::abs(quotient(1e-3) - k_exact);
  double e4 = std::abs(quotient(1e-4) - k_exact);
  CHECK(e3 < 0.05 * std::abs(k_exact) + 1e-6);
  CHECK(e4 < e3);
  CHECK(e4 <= e3 * 0.2);  // at least first-order decay
}

TEST_CASE("scale invariance: directions, predicates, and f^2 residual scaling") {
  auto rng = make_rng(8080);
  Expr fx = Expr(1.5) + Expr(0.4) * sin(x_var() + Expr(0.3) * y_var());
  for (int which = 0; which < 4; ++which) {
    const Field& base = field_of(which);
    Field scaled = scale_field(base, fx);
    for (int t = 0; t < 12; ++t) {
      Vec3 p = sample_point(rng, which);
      FieldJet j1, j2;
      try {
        j1 = eval_jet(base, p, 1);
        j2 = eval_jet(scaled, p, 1);
      } catch (const DomainError&) { continue; }
      PrincipalData a = principal_data(j1);
      PrincipalData b = principal_data(j2);
      if (a.gap > 1e-3 * (1.0 + std::abs(a.k1) + std::abs(a.k2))) {
        double cross1 = a.e1.cross(b.e1).norm();
        double cross2 = a.e2.cross(b.e2).norm();
        CHECK(cross1 < 1e-8);  // sin of the angle between the lines
        CHECK(cross2 < 1e-8);
      }
      double tol = umbilic_tolerance(a.k1, a.k2);
      CHECK(is_partially_umbilic(j1, tol) == is_partially_umbilic(j2, tol));

      // residual of the torsion-form system scales by f^2
      double fval = Field(fx, Expr(0.0), Expr(0.0)).eval<double>({p.x(), p.y(), p.z()})[0];
      Vec3 dr = random_plane_dir(rng, j1.value);
      double r1 = 2.0 * mixed3(j1.jacobian * dr, dr, j1.value) +
                  j1.curl().dot(j1.value) * dr.squaredNorm();
      Vec3 dr2 = dr - dr.dot(j2.value.normalized()) * j2.value.normalized();
      double r2 = 2.0 * mixed3(j2.jacobian * dr2, dr2, j2.value) +
                  j2.curl().dot(j2.value) * dr2.squaredNorm();
      CHECK(r2 == doctest::Approx(fval * fval * r1).epsilon(1e-9));
    }
  }
}

TEST_CASE("quadratic form identity and reduced triple") {
  auto rng = make_rng(4242);
  for (int which = 0; which < 4; ++which) {
    for (int t = 0; t < 15; ++t) {
      Vec3 p = sample_point(rng, which);
      FieldJet jet;
      try {
        jet = eval_jet(field_of(which), p, 1);
      } catch (const DomainError&) { continue; }
      ImplicitCoeffs ic = implicit_coeffs(jet);
      Vec3 dr = random_plane_dir(rng, jet.value);
      double quad = ic.L[0] * dr.x() * dr.x() + ic.L[1] * dr.x() * dr.y() +
                    ic.L[2] * dr.x() * dr.z() + ic.L[3] * dr.y() * dr.y() +
                    ic.L[4] * dr.y() * dr.z() + ic.L[5] * dr.z() * dr.z();
      Mat3 S2 = jet.jacobian + jet.jacobian.transpose();
      double mp = mixed3(S2 * dr, dr, jet.value);
      CHECK(quad == doctest::Approx(mp).epsilon(1e-10));

      // reduced form: eliminate ds with the plane equation, clear eta1^2
      if (ic.has_reduced && std::abs(jet.value[0]) > 0.2) {
        auto [Lr, Mr, Nr] = ic.reduced();
        double dv = dr.y(), dw = dr.z();
        double reduced = (Lr * dw * dw + Mr * dv * dw + Nr * dv * dv) /
                         (jet.value[0] * jet.value[0]);
        CHECK(reduced == doctest::Approx(quad).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("field singularity raises") {
  Field f = fields::radial();  // |eta| = 0 at the origin
  FieldJet jet = eval_jet(f, Vec3(0, 0, 0), 1);
  CHECK_THROWS_AS(principal_data(jet), SingularityError);
  CHECK_THROWS_AS(integrability_scalar(jet), SingularityError);
}

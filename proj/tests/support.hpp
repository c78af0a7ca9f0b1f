#pragma once

#include <planefold/field.hpp>
#include <planefold/fields.hpp>
#include <planefold/pointwise.hpp>

#include <random>

namespace planefold::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eedf01d) { return std::mt19937_64(seed); }

inline Vec3 random_point(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Vec3(u(rng), u(rng), u(rng));
}

// random unit vector in the plane orthogonal to n
inline Vec3 random_plane_dir(std::mt19937_64& rng, const Vec3& n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  Vec3 a = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  Vec3 b1 = n.cross(a).normalized();
  Vec3 b2 = n.normalized().cross(b1);
  double t = u(rng);
  return std::cos(t) * b1 + std::sin(t) * b2;
}

// brute-force extrema of the normal curvature over an angular grid in the plane
inline std::pair<double, double> grid_curvature_extrema(const FieldJet& jet, int samples = 3600) {
  Vec3 n = jet.value.normalized();
  Vec3 a = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  Vec3 b1 = n.cross(a).normalized();
  Vec3 b2 = n.cross(b1);
  double kmin = 1e300, kmax = -1e300;
  double scale = jet.value.norm();
  for (int i = 0; i < samples; ++i) {
    double t = 2.0 * M_PI * i / samples;
    Vec3 dr = std::cos(t) * b1 + std::sin(t) * b2;
    double k = normal_curvature(jet, dr) / scale;  // unit-field value
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  return {kmin, kmax};
}

// jacobian by central differences, the cross-check mandated for autodiff
inline Mat3 fd_jacobian(const Field& f, const Vec3& p, double h = 1e-5) {
  Mat3 J;
  for (int j = 0; j < 3; ++j) {
    Vec3 dp = Vec3::Zero();
    dp[j] = h;
    auto plus = f.eval<double>({p.x() + dp.x(), p.y() + dp.y(), p.z() + dp.z()});
    auto minus = f.eval<double>({p.x() - dp.x(), p.y() - dp.y(), p.z() - dp.z()});
    for (int i = 0; i < 3; ++i) J(i, j) = (plus[i] - minus[i]) / (2.0 * h);
  }
  return J;
}

}  // namespace planefold::testing

#pragma once

#include <vector>

#include "planefold/types.hpp"

namespace planefold {

// Periodic cubic spline on uniformly spaced nodes s_i = i*period/n, i = 0..n-1.
class PeriodicSpline {
 public:
  PeriodicSpline() = default;
  PeriodicSpline(std::vector<double> values, double period);

  double operator()(double s) const;
  double derivative(double s) const;
  double second_derivative(double s) const;
  double integral() const;           // over one full period
  double integral_to(double s) const;  // from 0 to s (s in [0, period])

  double period() const { return period_; }
  std::size_t size() const { return y_.size(); }
  const std::vector<double>& values() const { return y_; }

 private:
  void locate(double s, std::size_t& i, double& t) const;
  std::vector<double> y_, m_;  // values and second derivatives at nodes
  std::vector<double> cumint_;  // integral from 0 to node i
  double period_ = 0.0, h_ = 0.0;
};

// three PeriodicSplines sharing nodes
class SplineVec3 {
 public:
  SplineVec3() = default;
  SplineVec3(const std::vector<Vec3>& values, double period);
  Vec3 operator()(double s) const;
  Vec3 derivative(double s) const;

 private:
  PeriodicSpline c_[3];
};

class SplineMat2 {
 public:
  SplineMat2() = default;
  SplineMat2(const std::vector<Mat2>& values, double period);
  Mat2 operator()(double s) const;
  Mat2 derivative(double s) const;
  double trace_integral() const;

 private:
  PeriodicSpline c_[4];
};

}  // namespace planefold

#include "planefold/spline.hpp"

#include <cmath>

namespace planefold {

namespace {

// Solves the cyclic tridiagonal system (1, 4, 1)*m = rhs (uniform periodic
// cubic spline) via the Sherman-Morrison correction of a plain tridiagonal.
std::vector<double> solve_cyclic_141(const std::vector<double>& rhs) {
  std::size_t n = rhs.size();
  std::vector<double> m(n, 0.0);
  if (n == 1) {
    m[0] = rhs[0] / 6.0;
    return m;
  }
  if (n == 2) {
    // rows: 4 m0 + 2 m1 = r0; 2 m0 + 4 m1 = r1
    double det = 12.0;
    m[0] = (4.0 * rhs[0] - 2.0 * rhs[1]) / det;
    m[1] = (4.0 * rhs[1] - 2.0 * rhs[0]) / det;
    return m;
  }

  auto solve_tri = [&](const std::vector<double>& d, const std::vector<double>& r) {
    std::vector<double> c(n, 0.0), x(n, 0.0);
    std::vector<double> dd = d;
    c[0] = 1.0 / dd[0];
    x[0] = r[0] / dd[0];
    for (std::size_t i = 1; i < n; ++i) {
      double w = dd[i] - c[i - 1];
      c[i] = 1.0 / w;
      x[i] = (r[i] - x[i - 1]) / w;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
  };

  // Sherman-Morrison: A = T + u v^T with u = (gamma, 0, .., 1)^T, v = (1, 0, .., 1/gamma)
  double gamma = -4.0;
  std::vector<double> d(n, 4.0);
  d[0] = 4.0 - gamma;
  d[n - 1] = 4.0 - 1.0 / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = 1.0;

  std::vector<double> y = solve_tri(d, rhs);
  std::vector<double> q = solve_tri(d, u);
  double vy = y[0] + y[n - 1] / gamma;
  double vq = 1.0 + q[0] + q[n - 1] / gamma;
  for (std::size_t i = 0; i < n; ++i) m[i] = y[i] - q[i] * (vy / vq);
  return m;
}

}  // namespace

PeriodicSpline::PeriodicSpline(std::vector<double> values, double period)
    : y_(std::move(values)), period_(period) {
  std::size_t n = y_.size();
  h_ = period_ / static_cast<double>(n);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double yim = y_[(i + n - 1) % n], yip = y_[(i + 1) % n];
    rhs[i] = 6.0 * (yip - 2.0 * y_[i] + yim) / (h_ * h_);
  }
  m_ = solve_cyclic_141(rhs);

  cumint_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double yip = y_[(i + 1) % n], mip = m_[(i + 1) % n];
    double seg = 0.5 * h_ * (y_[i] + yip) - h_ * h_ * h_ * (m_[i] + mip) / 24.0;
    cumint_[i + 1] = cumint_[i] + seg;
  }
}

void PeriodicSpline::locate(double s, std::size_t& i, double& t) const {
  double u = std::fmod(s, period_);
  if (u < 0.0) u += period_;
  double fi = std::floor(u / h_);
  i = static_cast<std::size_t>(fi);
  if (i >= y_.size()) i = y_.size() - 1;
  t = u - static_cast<double>(i) * h_;
}

double PeriodicSpline::operator()(double s) const {
  std::size_t i;
  double t;
  locate(s, i, t);
  std::size_t ip = (i + 1) % y_.size();
  double a = h_ - t;
  return (m_[i] * a * a * a + m_[ip] * t * t * t) / (6.0 * h_) +
         (y_[i] / h_ - m_[i] * h_ / 6.0) * a + (y_[ip] / h_ - m_[ip] * h_ / 6.0) * t;
}

double PeriodicSpline::derivative(double s) const {
  std::size_t i;
  double t;
  locate(s, i, t);
  std::size_t ip = (i + 1) % y_.size();
  double a = h_ - t;
  return (-m_[i] * a * a + m_[ip] * t * t) / (2.0 * h_) + (y_[ip] - y_[i]) / h_ -
         (m_[ip] - m_[i]) * h_ / 6.0;
}

double PeriodicSpline::second_derivative(double s) const {
  std::size_t i;
  double t;
  locate(s, i, t);
  std::size_t ip = (i + 1) % y_.size();
  return (m_[i] * (h_ - t) + m_[ip] * t) / h_;
}

double PeriodicSpline::integral() const { return cumint_.back(); }

double PeriodicSpline::integral_to(double s) const {
  std::size_t i;
  double t;
  locate(s, i, t);
  std::size_t ip = (i + 1) % y_.size();
  double a = h_ - t;
  // antiderivative of the segment polynomial from the left node to t
  double part = (m_[i] * (h_ * h_ * h_ * h_ - a * a * a * a) + m_[ip] * t * t * t * t) / (24.0 * h_) +
                (y_[i] / h_ - m_[i] * h_ / 6.0) * (h_ * h_ - a * a) / 2.0 +
                (y_[ip] / h_ - m_[ip] * h_ / 6.0) * t * t / 2.0;
  return cumint_[i] + part;
}

SplineVec3::SplineVec3(const std::vector<Vec3>& values, double period) {
  std::vector<double> tmp(values.size());
  for (int k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < values.size(); ++i) tmp[i] = values[i][k];
    c_[k] = PeriodicSpline(tmp, period);
  }
}

Vec3 SplineVec3::operator()(double s) const { return Vec3(c_[0](s), c_[1](s), c_[2](s)); }

Vec3 SplineVec3::derivative(double s) const {
  return Vec3(c_[0].derivative(s), c_[1].derivative(s), c_[2].derivative(s));
}

SplineMat2::SplineMat2(const std::vector<Mat2>& values, double period) {
  std::vector<double> tmp(values.size());
  for (int k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < values.size(); ++i) tmp[i] = values[i](k / 2, k % 2);
    c_[k] = PeriodicSpline(tmp, period);
  }
}

Mat2 SplineMat2::operator()(double s) const {
  Mat2 r;
  r << c_[0](s), c_[1](s), c_[2](s), c_[3](s);
  return r;
}

Mat2 SplineMat2::derivative(double s) const {
  Mat2 r;
  r << c_[0].derivative(s), c_[1].derivative(s), c_[2].derivative(s), c_[3].derivative(s);
  return r;
}

double SplineMat2::trace_integral() const { return c_[0].integral() + c_[3].integral(); }

}  // namespace planefold

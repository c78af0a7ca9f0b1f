#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

namespace planefold {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// hessian[i](j,k) = d^2 f_i / dx_j dx_k
using Tensor3 = std::array<Mat3, 3>;
// third[i][j](k,l) = d^3 f_i / dx_j dx_k dx_l
using Tensor4 = std::array<Tensor3, 3>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// malformed field text; offset is the byte position in the input
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// evaluation left a function's domain (division by zero, log of non-positive, ...)
class DomainError : public Error {
 public:
  using Error::Error;
};

// |eta(p)| below the regularity threshold
class SingularityError : public Error {
 public:
  using Error::Error;
};

// numeric procedure failed (refinement divergence, singular system, ...)
class NumericError : public Error {
 public:
  using Error::Error;
};

class NoCycleError : public NumericError {
 public:
  using NumericError::NumericError;
};

inline constexpr double kSingularFieldTol = 1e-9;  // |eta| below this is a field singularity

}  // namespace planefold

#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "planefold/dual.hpp"
#include "planefold/expr.hpp"
#include "planefold/types.hpp"

namespace planefold {

// Flat postorder program compiled from the three component trees, with
// structural subexpression sharing. Evaluation is templated on the scalar
// so the same program yields values, jets and chart-coordinate expansions.
struct Tape {
  struct Instr {
    Op op;
    std::int32_t a = -1, b = -1;
    double c = 0.0;  // Const payload / constant exponent for Pow
  };
  std::vector<Instr> code;
  std::array<std::int32_t, 3> out{};

  template <class T>
  void eval(const std::array<T, 3>& xyz, std::array<T, 3>& result) const;
};

// value + exact derivative tensors of the field at a point
struct FieldJet {
  Vec3 point = Vec3::Zero();
  Vec3 value = Vec3::Zero();
  Mat3 jacobian = Mat3::Zero();  // (i,j) = d eta_i / d x_j
  Tensor3 hessian{};             // populated for order >= 2
  Tensor4 third{};               // populated for order == 3
  int order = 1;

  Vec3 curl() const {
    return Vec3(jacobian(2, 1) - jacobian(1, 2),
                jacobian(0, 2) - jacobian(2, 0),
                jacobian(1, 0) - jacobian(0, 1));
  }
};

class Field {
 public:
  Field() = default;
  Field(Expr fx, Expr fy, Expr fz, bool unit_hint = false);

  const Expr& component(int i) const { return comps_[i]; }
  const Tape& tape() const { return *tape_; }
  bool unit_hint() const { return unit_hint_; }

  std::string to_text() const;  // "fx; fy; fz"

  // evaluate all three components with an arbitrary scalar type
  template <class T>
  std::array<T, 3> eval(const std::array<T, 3>& xyz) const {
    std::array<T, 3> r;
    tape_->eval(xyz, r);
    return r;
  }

 private:
  std::array<Expr, 3> comps_{Expr(0.0), Expr(0.0), Expr(0.0)};
  std::shared_ptr<const Tape> tape_;
  bool unit_hint_ = false;
};

// Accepts "e1; e2; e3", "(e1, e2, e3)" or {"fx": "...", "fy": "...", "fz": "..."}.
Field parse_field(std::string_view text);

// f / |f| as an expression tree; the division makes evaluation at |f| = 0 a
// reported domain error (regularity violation).
Field normalize_field(const Field& f);

// component-wise f * s for a scalar expression s
Field scale_field(const Field& f, const Expr& s);

Field cross_field(const Field& a, const Field& b);

// Derivatives are exact (nested dual numbers), never finite differences.
FieldJet eval_jet(const Field& f, const Vec3& p, int order = 1);

using Jet1 = Dual<double, 3>;
using Jet2 = Dual<Jet1, 3>;
using Jet3 = Dual<Jet2, 3>;

template <class T>
void Tape::eval(const std::array<T, 3>& xyz, std::array<T, 3>& result) const {
  static thread_local std::vector<T> slots;
  slots.resize(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    const Instr& in = code[i];
    T& r = slots[i];
    switch (in.op) {
      case Op::Const: r = T(in.c); break;
      case Op::Var: r = xyz[static_cast<std::size_t>(in.a)]; break;
      case Op::Add: r = slots[in.a] + slots[in.b]; break;
      case Op::Sub: r = slots[in.a] - slots[in.b]; break;
      case Op::Mul: r = slots[in.a] * slots[in.b]; break;
      case Op::Div:
        if (value_of(slots[in.b]) == 0.0) throw DomainError("division by zero");
        r = slots[in.a] / slots[in.b];
        break;
      case Op::Neg: r = -slots[in.a]; break;
      case Op::Pow: {
        if (in.b < 0) {  // constant exponent folded into c
          double n = in.c;
          double base = value_of(slots[in.a]);
          if (base < 0.0 && n != std::floor(n))
            throw DomainError("negative base with non-integer exponent");
          if (base == 0.0 && n < 0.0) throw DomainError("zero base with negative exponent");
          r = pow(slots[in.a], n);
        } else {
          if (value_of(slots[in.a]) <= 0.0)
            throw DomainError("non-positive base with variable exponent");
          r = pow(slots[in.a], slots[in.b]);
        }
        break;
      }
      case Op::Sin: r = sin(slots[in.a]); break;
      case Op::Cos: r = cos(slots[in.a]); break;
      case Op::Tan: r = tan(slots[in.a]); break;
      case Op::Exp: r = exp(slots[in.a]); break;
      case Op::Log:
        if (value_of(slots[in.a]) <= 0.0) throw DomainError("log of non-positive value");
        r = log(slots[in.a]);
        break;
      case Op::Sqrt:
        if (value_of(slots[in.a]) < 0.0) throw DomainError("sqrt of negative value");
        r = sqrt(slots[in.a]);
        break;
      case Op::Atan2:
        if (value_of(slots[in.a]) == 0.0 && value_of(slots[in.b]) == 0.0)
          throw DomainError("atan2(0, 0)");
        r = atan2(slots[in.a], slots[in.b]);
        break;
      case Op::Abs: r = abs(slots[in.a]); break;
    }
  }
  for (int k = 0; k < 3; ++k) {
    result[k] = slots[out[k]];
    if (!all_finite(result[k])) throw DomainError("non-finite field evaluation");
  }
}

}  // namespace planefold

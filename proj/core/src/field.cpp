#include "planefold/field.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace planefold {

namespace {

struct InstrKey {
  Op op;
  std::int32_t a, b;
  std::uint64_t cbits;
  bool operator==(const InstrKey&) const = default;
};

struct InstrKeyHash {
  std::size_t operator()(const InstrKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.op);
    h = h * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.a));
    h = h * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.b));
    h = h * 0x9e3779b97f4a7c15ull + k.cbits;
    return static_cast<std::size_t>(h);
  }
};

class TapeBuilder {
 public:
  std::int32_t visit(const ExprNode* n) {
    auto cached = visited_.find(n);
    if (cached != visited_.end()) return cached->second;
    std::int32_t slot = build(n);
    visited_.emplace(n, slot);
    return slot;
  }

  Tape take() { return std::move(tape_); }

 private:
  std::int32_t build(const ExprNode* n) {
    Tape::Instr in;
    in.op = n->op;
    switch (n->op) {
      case Op::Const:
        in.c = n->value;
        break;
      case Op::Var:
        in.a = n->var;
        break;
      case Op::Pow: {
        // constant exponents use the power-rule path (valid for negative bases)
        const ExprNode* e = n->b.get();
        double sign = 1.0;
        if (e->op == Op::Neg && e->a->op == Op::Const) {
          sign = -1.0;
          e = e->a.get();
        }
        if (e->op == Op::Const) {
          in.a = visit(n->a.get());
          in.b = -1;
          in.c = sign * e->value;
        } else {
          in.a = visit(n->a.get());
          in.b = visit(n->b.get());
        }
        break;
      }
      default:
        in.a = visit(n->a.get());
        if (n->b) in.b = visit(n->b.get());
        break;
    }
    InstrKey key{in.op, in.a, in.b, std::bit_cast<std::uint64_t>(in.c)};
    auto it = dedup_.find(key);
    if (it != dedup_.end()) return it->second;
    tape_.code.push_back(in);
    std::int32_t slot = static_cast<std::int32_t>(tape_.code.size() - 1);
    dedup_.emplace(key, slot);
    return slot;
  }

  Tape tape_;
  std::unordered_map<const ExprNode*, std::int32_t> visited_;
  std::unordered_map<InstrKey, std::int32_t, InstrKeyHash> dedup_;
};

}  // namespace

Field::Field(Expr fx, Expr fy, Expr fz, bool unit_hint)
    : comps_{std::move(fx), std::move(fy), std::move(fz)}, unit_hint_(unit_hint) {
  TapeBuilder b;
  std::array<std::int32_t, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = b.visit(comps_[i].ptr().get());
  auto tape = std::make_shared<Tape>(b.take());
  tape->out = out;
  tape_ = std::move(tape);
}

std::string Field::to_text() const {
  return comps_[0].str() + "; " + comps_[1].str() + "; " + comps_[2].str();
}

Field normalize_field(const Field& f) {
  Expr n2 = f.component(0) * f.component(0) + f.component(1) * f.component(1) +
            f.component(2) * f.component(2);
  Expr n = sqrt(n2);  // shared by all three components
  return Field(f.component(0) / n, f.component(1) / n, f.component(2) / n, true);
}

Field scale_field(const Field& f, const Expr& s) {
  return Field(s * f.component(0), s * f.component(1), s * f.component(2));
}

Field cross_field(const Field& a, const Field& b) {
  return Field(a.component(1) * b.component(2) - a.component(2) * b.component(1),
               a.component(2) * b.component(0) - a.component(0) * b.component(2),
               a.component(0) * b.component(1) - a.component(1) * b.component(0));
}

// ---------------- field text parsing ----------------

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Expr parse_component(std::string_view text, std::size_t base_offset) {
  try {
    return parse_expression(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()), base_offset + e.offset());
  }
}

Field parse_tuple(std::string_view text) {
  // "(e1, e2, e3)" with commas at top nesting level
  std::string_view body = trim(text);
  if (body.empty() || body.front() != '(' || body.back() != ')')
    throw ParseError("expected '(fx, fy, fz)' or 'fx; fy; fz'", 0);
  std::size_t open = text.find('(');
  body = body.substr(1, body.size() - 2);
  std::vector<std::string_view> parts;
  std::vector<std::size_t> offsets;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || (body[i] == ',' && depth == 0)) {
      parts.push_back(body.substr(start, i - start));
      offsets.push_back(open + 1 + start);
      start = i + 1;
    } else if (body[i] == '(') {
      ++depth;
    } else if (body[i] == ')') {
      --depth;
    }
  }
  if (parts.size() != 3)
    throw ParseError("expected three components, got " + std::to_string(parts.size()), 0);
  return Field(parse_component(parts[0], offsets[0]), parse_component(parts[1], offsets[1]),
               parse_component(parts[2], offsets[2]));
}

}  // namespace

Field parse_field(std::string_view text) {
  std::string_view t = trim(text);
  if (t.empty()) throw ParseError("empty field definition", 0);

  if (t.front() == '{') {
    nlohmann::json j = nlohmann::json::parse(t, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw ParseError("malformed JSON field definition", 0);
    for (const char* key : {"fx", "fy", "fz"})
      if (!j.contains(key) || !j[key].is_string())
        throw ParseError(std::string("JSON field definition missing \"") + key + "\"", 0);
    return Field(parse_component(j["fx"].get<std::string>(), 0),
                 parse_component(j["fy"].get<std::string>(), 0),
                 parse_component(j["fz"].get<std::string>(), 0));
  }

  if (t.find(';') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::vector<std::size_t> offsets;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ';') {
        parts.push_back(text.substr(start, i - start));
        offsets.push_back(start);
        start = i + 1;
      }
    }
    if (parts.size() != 3)
      throw ParseError("expected three ';'-separated components, got " +
                           std::to_string(parts.size()),
                       0);
    return Field(parse_component(parts[0], offsets[0]), parse_component(parts[1], offsets[1]),
                 parse_component(parts[2], offsets[2]));
  }

  return parse_tuple(text);
}

// ---------------- jets ----------------

namespace {

template <class T>
std::array<T, 3> seeded_point(const Vec3& p) {
  return {DualSeed<T>::var(p.x(), 0), DualSeed<T>::var(p.y(), 1), DualSeed<T>::var(p.z(), 2)};
}

}  // namespace

FieldJet eval_jet(const Field& f, const Vec3& p, int order) {
  FieldJet jet;
  jet.point = p;
  jet.order = order;
  switch (order) {
    case 1: {
      auto r = f.eval(seeded_point<Jet1>(p));
      for (int i = 0; i < 3; ++i) {
        jet.value[i] = r[i].v;
        for (int j = 0; j < 3; ++j) jet.jacobian(i, j) = r[i].d[j];
      }
      break;
    }
    case 2: {
      auto r = f.eval(seeded_point<Jet2>(p));
      for (int i = 0; i < 3; ++i) {
        jet.value[i] = r[i].v.v;
        for (int j = 0; j < 3; ++j) {
          jet.jacobian(i, j) = r[i].d[j].v;
          for (int k = 0; k < 3; ++k) jet.hessian[i](j, k) = r[i].d[j].d[k];
        }
      }
      break;
    }
    case 3: {
      auto r = f.eval(seeded_point<Jet3>(p));
      for (int i = 0; i < 3; ++i) {
        jet.value[i] = r[i].v.v.v;
        for (int j = 0; j < 3; ++j) {
          jet.jacobian(i, j) = r[i].d[j].v.v;
          for (int k = 0; k < 3; ++k) {
            jet.hessian[i](j, k) = r[i].d[j].d[k].v;
            for (int l = 0; l < 3; ++l) jet.third[i][j](k, l) = r[i].d[j].d[k].d[l];
          }
        }
      }
      break;
    }
    default:
      throw Error("jet order must be 1, 2 or 3");
  }
  return jet;
}

}  // namespace planefold

#include "planefold/tracing.hpp"

#include <cmath>
#include <limits>

namespace planefold {

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::ArcBudget: return "arc-budget";
    case StopReason::FieldSingularity: return "field-singularity";
    case StopReason::UmbilicApproach: return "umbilic-approach";
    case StopReason::DomainEscape: return "domain-escape";
    case StopReason::DomainError: return "domain-error";
  }
  return "?";
}

Vec3 step_direction(const FieldJet& jet, const Vec3& previous, int foliation) {
  PrincipalData pd = principal_data(jet);
  Vec3 d = foliation == 1 ? pd.e1 : pd.e2;
  if (previous.squaredNorm() > 0.0 && d.dot(previous) < 0.0) d = -d;
  return d;
}

namespace {

struct DirProbe {
  bool ok = false;
  Vec3 dir = Vec3::Zero();
  double gap = 0.0;
  StopReason reason = StopReason::DomainError;
};

class Tracer {
 public:
  Tracer(const Field& field, int foliation, const TraceOptions& opts)
      : field_(field), fol_(foliation), opts_(opts) {}

  DirProbe probe(const Vec3& p, const Vec3& ref) const {
    DirProbe r;
    if (p.norm() > opts_.bound_radius) {
      r.reason = StopReason::DomainEscape;
      return r;
    }
    FieldJet jet;
    try {
      jet = eval_jet(field_, p, 1);
    } catch (const DomainError&) {
      r.reason = StopReason::DomainError;
      return r;
    }
    if (jet.value.norm() < kSingularFieldTol) {
      r.reason = StopReason::FieldSingularity;
      return r;
    }
    PrincipalData pd = principal_data(jet);
    r.gap = pd.gap;
    if (pd.gap < opts_.umbilic_factor * (1.0 + std::abs(pd.k1) + std::abs(pd.k2))) {
      r.reason = StopReason::UmbilicApproach;
      return r;
    }
    Vec3 d = fol_ == 1 ? pd.e1 : pd.e2;
    if (ref.squaredNorm() > 0.0 && d.dot(ref) < 0.0) d = -d;
    r.dir = d;
    r.ok = true;
    return r;
  }

  // single RK4 step from (p, d); d must be the continued direction at p
  bool rk4_once(const Vec3& p, const Vec3& d, double h, Vec3& p_next, Vec3& d_next,
                StopReason& why, double* min_gap = nullptr) const {
    auto track = [&](const DirProbe& pr) {
      if (min_gap && pr.ok) *min_gap = std::min(*min_gap, pr.gap);
    };
    DirProbe s2 = probe(p + 0.5 * h * d, d);
    if (!s2.ok) { why = s2.reason; return false; }
    track(s2);
    DirProbe s3 = probe(p + 0.5 * h * s2.dir, s2.dir);
    if (!s3.ok) { why = s3.reason; return false; }
    track(s3);
    DirProbe s4 = probe(p + h * s3.dir, s3.dir);
    if (!s4.ok) { why = s4.reason; return false; }
    track(s4);
    p_next = p + (h / 6.0) * (d + 2.0 * s2.dir + 2.0 * s3.dir + s4.dir);
    DirProbe dn = probe(p_next, s4.dir);
    if (!dn.ok) { why = dn.reason; return false; }
    track(dn);
    d_next = dn.dir;
    return true;
  }

  const Field& field_;
  int fol_;
  TraceOptions opts_;
};

struct ReturnHit {
  Vec3 point = Vec3::Zero();
  Vec3 dir = Vec3::Zero();
  double arc = 0.0;
};

// Newton refinement of the section crossing inside one step from (p, d).
bool refine_crossing(const Tracer& tracer, const Vec3& p, const Vec3& d, double h_bracket,
                     const SectionPlane& sec, ReturnHit& hit) {
  double t = 0.5 * h_bracket;
  Vec3 q = p, dq = d;
  StopReason why;
  for (int it = 0; it < 40; ++it) {
    if (!tracer.rk4_once(p, d, t, q, dq, why)) return false;
    double g = (q - sec.anchor).dot(sec.normal);
    double dgdt = dq.dot(sec.normal);
    if (std::abs(g) < 1e-13 || dgdt == 0.0) break;
    double t_new = t - g / dgdt;
    if (!(t_new > -h_bracket && t_new < 2.0 * h_bracket)) {  // keep the bracket sane
      t_new = t - 0.5 * g / (std::abs(dgdt) > 0.1 ? dgdt : (dgdt < 0 ? -0.1 : 0.1));
    }
    t = t_new;
  }
  hit.point = q;
  hit.dir = dq;
  hit.arc = t;
  return true;
}

// Traces from (start, d0) until the first same-orientation crossing of the
// section. Returns false with `why` set when the trace stops first.
bool trace_to_crossing(const Tracer& tracer, const Vec3& start, const Vec3& d0,
                       const SectionPlane& sec, double h, double arc_budget, ReturnHit& hit,
                       StopReason& why, Polyline* store = nullptr, double* min_gap = nullptr) {
  Vec3 p = start, d = d0;
  double s = 0.0;
  double g_prev = (p - sec.anchor).dot(sec.normal);
  bool armed = false;
  if (store) {
    store->points.push_back(p);
    store->arc.push_back(0.0);
    store->directions.push_back(d);
  }
  while (s < arc_budget) {
    Vec3 pn, dn;
    if (!tracer.rk4_once(p, d, h, pn, dn, why, min_gap)) return false;
    double g = (pn - sec.anchor).dot(sec.normal);
    if (!armed && g_prev > 4.0 * h) armed = true;
    if (armed && g_prev < 0.0 && g >= 0.0 && dn.dot(sec.normal) > 0.0) {
      if (!refine_crossing(tracer, p, d, h, sec, hit)) {
        why = StopReason::DomainError;
        return false;
      }
      hit.arc += s;
      if (store) {
        store->points.push_back(hit.point);
        store->arc.push_back(hit.arc);
        store->directions.push_back(hit.dir);
      }
      return true;
    }
    p = pn;
    d = dn;
    s += h;
    g_prev = g;
    if (store) {
      store->points.push_back(p);
      store->arc.push_back(s);
      store->directions.push_back(d);
    }
  }
  why = StopReason::ArcBudget;
  return false;
}

}  // namespace

Polyline trace_line(const Field& field, const Vec3& start, int foliation, double arc_budget,
                    double step, const TraceOptions& opts) {
  TraceOptions o = opts;
  o.step = step;
  Tracer tracer(field, foliation, o);

  Polyline line;
  line.foliation = foliation;
  line.min_gap = std::numeric_limits<double>::infinity();

  Vec3 ref = o.initial_direction.value_or(Vec3::Zero());
  DirProbe first = tracer.probe(start, ref);
  if (!first.ok) {
    line.stop = first.reason;
    line.min_gap = 0.0;
    return line;
  }
  line.min_gap = first.gap;
  Vec3 p = start, d = first.dir;
  line.points.push_back(p);
  line.arc.push_back(0.0);
  line.directions.push_back(d);

  double s = 0.0;
  while (s + 0.5 * step < arc_budget) {
    Vec3 pn, dn;
    StopReason why;
    if (!tracer.rk4_once(p, d, step, pn, dn, why, &line.min_gap)) {
      line.stop = why;
      return line;
    }
    p = pn;
    d = dn;
    s += step;
    line.points.push_back(p);
    line.arc.push_back(s);
    line.directions.push_back(d);
  }
  line.stop = StopReason::ArcBudget;
  return line;
}

CycleCandidate find_cycle(const Field& field, const Vec3& seed, int foliation, int max_turns,
                          const FindCycleOptions& opts) {
  FieldJet jet0 = eval_jet(field, seed, 1);
  if (jet0.value.norm() < kSingularFieldTol)
    throw SingularityError("find_cycle: seed is a field singularity");
  PrincipalData pd0 = principal_data(jet0);

  Vec3 d0 = foliation == 1 ? pd0.e1 : pd0.e2;
  if (opts.trace.initial_direction && d0.dot(*opts.trace.initial_direction) < 0.0) d0 = -d0;
  Vec3 other = foliation == 1 ? pd0.e2 : pd0.e1;

  SectionPlane sec;
  sec.anchor = seed;
  sec.normal = d0;
  sec.axis_v = other;
  sec.axis_w = pd0.normal;

  TraceOptions topts = opts.trace;
  double scale = std::max(0.5, seed.norm());
  double h_probe = topts.step > 0.0 ? topts.step : 1e-3 * scale;
  Tracer probe_tracer(field, foliation, topts);

  // probe turn: estimates the cycle length
  ReturnHit first_hit;
  StopReason why;
  double turn_budget = opts.turn_arc_factor * scale;
  if (!trace_to_crossing(probe_tracer, seed, d0, sec, h_probe, turn_budget, first_hit, why))
    throw NoCycleError(std::string("find_cycle: no return to the section (") +
                       stop_reason_name(why) + ")");
  double turn_estimate = first_hit.arc;

  double h = topts.step > 0.0 ? topts.step : 1e-3 * turn_estimate / (2.0 * M_PI);
  Tracer tracer(field, foliation, topts);
  double budget = 3.0 * turn_estimate;

  auto return_map = [&](const Vec2& x, Vec2& image, double h_step) -> bool {
    Vec3 p = sec.anchor + x[0] * sec.axis_v + x[1] * sec.axis_w;
    DirProbe pr = tracer.probe(p, d0);
    if (!pr.ok) return false;
    ReturnHit hit;
    StopReason w2;
    if (!trace_to_crossing(tracer, p, pr.dir, sec, h_step, budget, hit, w2)) return false;
    image[0] = (hit.point - sec.anchor).dot(sec.axis_v);
    image[1] = (hit.point - sec.anchor).dot(sec.axis_w);
    return true;
  };

  auto displacement = [&](const Vec2& x, Vec2& F, double h_step) -> bool {
    Vec2 img;
    if (!return_map(x, img, h_step)) return false;
    F = img - x;
    return true;
  };

  Vec2 x = Vec2::Zero();
  Vec2 F;
  if (!displacement(x, F, h))
    throw NoCycleError("find_cycle: trace from the seed failed during refinement");

  int turns_used = 1;
  for (int it = 0; it < opts.max_newton && F.cwiseAbs().maxCoeff() > opts.displacement_tol; ++it) {
    if (++turns_used > std::max(max_turns, 4) * 4)
      throw NoCycleError("find_cycle: no convergence within the turn budget");
    double delta = 1e-6 * std::max(1.0, x.norm());
    Mat2 J;
    for (int c = 0; c < 2; ++c) {
      Vec2 xp = x;
      xp[c] += delta;
      Vec2 Fp;
      if (!displacement(xp, Fp, h))
        throw NumericError("find_cycle: refinement trace failed");
      J.col(c) = (Fp - F) / delta;
      ++turns_used;
    }
    // damped pseudo-inverse step; the Jacobian can be singular when the cycle
    // sits in a continuum (a unit return-map eigenvalue)
    Eigen::JacobiSVD<Mat2> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec2 sv = svd.singularValues();
    double smax = std::max(sv[0], 1e-300);
    Vec2 inv;
    for (int c = 0; c < 2; ++c) inv[c] = sv[c] > 1e-8 * smax ? 1.0 / sv[c] : 0.0;
    Vec2 step_vec = -(svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose() * F);
    if (step_vec.norm() == 0.0) break;

    double lambda = 1.0;
    Vec2 x_new, F_new;
    bool improved = false;
    for (int half = 0; half < 5; ++half) {
      x_new = x + lambda * step_vec;
      if (displacement(x_new, F_new, h) &&
          F_new.cwiseAbs().maxCoeff() <= F.cwiseAbs().maxCoeff()) {
        improved = true;
        break;
      }
      lambda *= 0.5;
      ++turns_used;
    }
    if (!improved)
      throw NumericError("find_cycle: refinement diverged (damped steps did not reduce residual)");
    x = x_new;
    F = F_new;
  }
  if (F.cwiseAbs().maxCoeff() > opts.displacement_tol)
    throw NumericError("find_cycle: refinement did not reach the displacement tolerance");

  // closed curve from the refined point
  CycleCandidate cyc;
  cyc.foliation = foliation;
  cyc.section = sec;
  cyc.curve.foliation = foliation;
  cyc.curve.min_gap = std::numeric_limits<double>::infinity();

  Vec3 p_star = sec.anchor + x[0] * sec.axis_v + x[1] * sec.axis_w;
  DirProbe pr = tracer.probe(p_star, d0);
  if (!pr.ok) throw NumericError("find_cycle: refined point probe failed");
  ReturnHit hit;
  if (!trace_to_crossing(tracer, p_star, pr.dir, sec, h, budget, hit, why, &cyc.curve,
                         &cyc.curve.min_gap))
    throw NumericError("find_cycle: final closed trace failed");
  cyc.length = hit.arc;
  cyc.closure_residual = (hit.point - p_star).norm();
  cyc.min_gap = cyc.curve.min_gap;
  cyc.curve.stop = StopReason::ArcBudget;
  return cyc;
}

void write_csv(const Polyline& line, std::ostream& os) {
  os << "s,x,y,z\n";
  char buf[128];
  for (std::size_t i = 0; i < line.points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", line.arc[i], line.points[i].x(),
                  line.points[i].y(), line.points[i].z());
    os << buf;
  }
}

}  // namespace planefold

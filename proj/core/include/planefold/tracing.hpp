#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "planefold/field.hpp"
#include "planefold/pointwise.hpp"
#include "planefold/types.hpp"

namespace planefold {

enum class StopReason {
  ArcBudget,
  FieldSingularity,
  UmbilicApproach,
  DomainEscape,
  DomainError,
};

const char* stop_reason_name(StopReason r);

struct TraceOptions {
  double step = 1e-3;
  double bound_radius = 1e3;          // leaving this ball stops the trace
  double umbilic_factor = 1e-5;       // stop when gap < factor * (1 + |k1| + |k2|)
  std::optional<Vec3> initial_direction;  // resolves the line-field sign at the start
};

struct Polyline {
  std::vector<Vec3> points;
  std::vector<double> arc;         // cumulative arc length (RK parameter)
  std::vector<Vec3> directions;    // continued unit principal direction at each point
  int foliation = 1;
  StopReason stop = StopReason::ArcBudget;
  double min_gap = 0.0;            // smallest principal gap seen
};

// plane through `anchor` spanned by {axis_v, axis_w}, transversal to the cycle
struct SectionPlane {
  Vec3 anchor = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  Vec3 axis_v = Vec3::Zero();
  Vec3 axis_w = Vec3::Zero();
};

struct CycleCandidate {
  Polyline curve;            // closed, starts on the section
  double length = 0.0;       // arc length of one turn
  double closure_residual = 0.0;
  SectionPlane section;
  int foliation = 1;
  double min_gap = 0.0;
};

struct FindCycleOptions {
  TraceOptions trace;            // trace.step <= 0 picks 1e-3 * (cycle scale)
  int max_newton = 30;
  double displacement_tol = 1e-10;
  double turn_arc_factor = 16.0;  // arc budget per turn ~ factor * |seed| scale
};

// Sign continuation of the principal line field: +-e_fol closest to `previous`.
Vec3 step_direction(const FieldJet& jet, const Vec3& previous, int foliation);

// Fixed-step RK4 integration of the continued principal line field,
// arc-length parametrized. Stops are reported in Polyline::stop.
Polyline trace_line(const Field& field, const Vec3& start, int foliation, double arc_budget,
                    double step, const TraceOptions& opts = {});

// Traces until the curve re-crosses a transversal section through the seed,
// then drives the return displacement below tolerance with a damped
// secant/Newton iteration on the section coordinates.
CycleCandidate find_cycle(const Field& field, const Vec3& seed, int foliation, int max_turns,
                          const FindCycleOptions& opts = {});

// rows: s,x,y,z
void write_csv(const Polyline& line, std::ostream& os);

}  // namespace planefold

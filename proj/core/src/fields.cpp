#include "planefold/fields.hpp"

namespace planefold::fields {

namespace {
Expr X() { return x_var(); }
Expr Y() { return y_var(); }
Expr Z() { return z_var(); }
}  // namespace

Field circle_cycle_family(double lambda, double a, double eps) {
  Expr r2 = X() * X() + Y() * Y();
  Field x1(Expr(-1.0) * Y() + Expr(lambda) * X() * (Expr(1.0) - r2),
           X() + Expr(lambda) * Y() * (Expr(1.0) - r2),
           Expr(-a) * Z());
  Field w(X() + Expr(eps) * Y(), Expr(-eps) * X() + Y(), Expr(0.0));
  Field x2 = cross_field(w, x1);
  return normalize_field(cross_field(x1, x2));
}

Field nested_tori() {
  Expr r = sqrt(X() * X() + Y() * Y());
  Expr g = Expr(2.0) * (r - Expr(2.0));  // d/dr of (r-2)^2
  return Field(g * X() / r, g * Y() / r, Expr(2.0) * Z());
}

Field twisted_ring(int m, double c) {
  Expr th = atan2(Y(), X());
  Expr r = sqrt(X() * X() + Y() * Y());
  Expr cm = cos(Expr(double(m)) * th);
  Expr sm = sin(Expr(double(m)) * th);
  Expr erx = X() / r, ery = Y() / r;       // radial direction
  Expr etx = Expr(-1.0) * Y() / r, ety = X() / r;  // tangent direction
  Expr rho = Z() * cm + (r - Expr(1.0)) * sm;
  // cos(m th) e_r - sin(m th) e_z + rho (m e_t + c (cos(m th) e_z + sin(m th) e_r))
  Expr vx = cm * erx + rho * (Expr(double(m)) * etx + Expr(c) * sm * erx);
  Expr vy = cm * ery + rho * (Expr(double(m)) * ety + Expr(c) * sm * ery);
  Expr vz = Expr(-1.0) * sm + rho * Expr(c) * cm;
  return Field(vx, vy, vz);
}

Field warped_tori(double amp) {
  // f = (r - 2)^2 + z^2 + amp (r - 2) z^2 sin(theta); eta = grad f
  Expr r = sqrt(X() * X() + Y() * Y());
  Expr th = atan2(Y(), X());
  Expr u = r - Expr(2.0);
  // df/dr = 2u + amp z^2 sin(th); df/dth = amp u z^2 cos(th); df/dz = 2z + 2 amp u z sin(th)
  Expr df_dr = Expr(2.0) * u + Expr(amp) * Z() * Z() * sin(th);
  Expr df_dth = Expr(amp) * u * Z() * Z() * cos(th);
  Expr fx = df_dr * X() / r - df_dth * Y() / (r * r);
  Expr fy = df_dr * Y() / r + df_dth * X() / (r * r);
  Expr fz = Expr(2.0) * Z() + Expr(2.0 * amp) * u * Z() * sin(th);
  return Field(fx, fy, fz);
}

Field helical() { return Field(Expr(-1.0) * Y(), X(), Expr(1.0)); }

Field vertical() { return Field(Expr(0.0), Expr(0.0), Expr(1.0), true); }

Field radial() { return Field(X(), Y(), Z()); }

Field radial_unit() { return normalize_field(Field(X(), Y(), Z())); }

}  // namespace planefold::fields

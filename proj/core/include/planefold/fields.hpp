#pragma once

#include "planefold/field.hpp"

namespace planefold::fields {

// X1 = (-y + lambda x (1 - x^2 - y^2), x + lambda y (1 - x^2 - y^2), -a z),
// X2 = (x + eps y, -eps x + y, 0) ^ X1, eta = (X1 ^ X2)/|X1 ^ X2|.
// The unit circle in z = 0 is a principal cycle of the first foliation.
Field circle_cycle_family(double lambda, double a, double eps);

// gradient of (sqrt(x^2+y^2) - 2)^2 + z^2; integrable, leaves live on nested tori
Field nested_tori();

// Unit-circle cycle whose Darboux frame rotates m times per turn (k3 = m);
// principal curvatures along the cycle are -cos(m s) and -c. Use c = -2.
Field twisted_ring(int m = 1, double c = -2.0);

// gradient-of-torus-function field with a mild angular modulation; still a
// gradient (integrable) but without rotational symmetry
Field warped_tori(double amp = 0.15);

Field helical();       // (-y, x, 1)
Field vertical();      // (0, 0, 1)
Field radial();        // (x, y, z)
Field radial_unit();   // (x, y, z)/|(x, y, z)|

}  // namespace planefold::fields

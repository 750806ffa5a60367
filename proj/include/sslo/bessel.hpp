#pragma once

namespace sslo::special {

// Bessel function of the first kind, order one: power series below 8, Miller backward
// recurrence up to 25, Hankel asymptotics beyond.
double bessel_j1(double x);

}  // namespace sslo::special

#pragma once

#include <functional>

#include "fiwi/errors.hpp"

namespace fiwi {

// Adaptive Simpson with Richardson extrapolation. `tol` is an absolute
// error budget for the whole interval, split in half per subdivision.
// `noise_per_len` bounds the absolute evaluation noise of `f` per unit
// length (nonzero when f is itself a quadrature); refinement stops once
// the error estimate sinks to that level. Throws IntegrationFailure when
// the depth cap is hit before the local budget is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40, double noise_per_len = 0.0);

}  // namespace fiwi

#pragma once

#include <stdexcept>

namespace imsim {

// Upper incomplete gamma Γ(s, x) = ∫_x^∞ t^{s-1} e^{-t} dt.
// Supports negative non-integer s (via upward use of the recurrence
// Γ(s, x) = (Γ(s+1, x) - x^s e^{-x}) / s); s ≤ 0 requires x > 0.
double upper_incomplete_gamma(double s, double x);

} // namespace imsim

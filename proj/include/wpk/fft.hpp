#pragma once

#include <vector>

#include "wpk/field.hpp"

namespace wpk {

// Unnormalized 2D DFT, sign -1 forward, +1 backward. In-place allowed.
void fft2(const cplx* in, cplx* out, int na, int nb, int sign);
void set_plan_cache(bool enabled);

// Normalized coefficients c with f = sum_xi e^{j xi.x} c_xi, and the inverse.
std::vector<cplx> coeffs(const ComplexField& f);
ComplexField synth(const Grid& g, std::vector<cplx> c);

}  // namespace wpk

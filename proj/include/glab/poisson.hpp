#pragma once
#include <vector>

#include "glab/symbol.hpp"

namespace glab {

// Fourth order finite difference along one axis of the sample tensor.
// Periodic axes wrap; open axes switch to one-sided stencils in the two
// outermost rings (which is why norm comparisons mask those rings off).
Symbol d_axis(const Symbol& f, int axis);

// Poisson structure carried by the dual bundle of each family:
//   pair/line    sum over k of d_x[k] f d_p[k] g - d_p[k] f d_x[k] g
//   rotations    d_lambda g d_alpha f - d_lambda f d_alpha g  (radius inert)
//   gauge        d_r f d_pr g - d_pr f d_r g                  (lambda inert)
// Calibrated so that for a section s with anchor field X, {s~, u} = -X u for
// base functions u.
Symbol poisson_bracket(const Symbol& f, const Symbol& g);

// 1 for samples at least `rings` steps away from every open-axis edge.
std::vector<char> interior_mask(const LieAlgebroidDual& dual, int rings = 2);
double sup_norm_masked(const Symbol& f, const std::vector<char>& mask);
double sup_diff_masked(const Symbol& f, const Symbol& g, const std::vector<char>& mask);

}  // namespace glab

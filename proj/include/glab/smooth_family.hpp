#pragma once
#include <memory>
#include <string>
#include <vector>

#include "glab/grids.hpp"

namespace glab {

// The smooth groupoids the lab knows how to discretize.
//   PairGrid(n)     pair groupoid of a uniform grid in R^n (n = 1, 2)
//   ActionRonR      translation action groupoid R |x R on a line grid
//   ActionSO2onR2   rotation action groupoid SO(2) |x R^2; the base is a
//                   rotation-compatible polar grid (radii x ring angles) and a
//                   single-point base {0} realizes the circle group itself
//   GaugeSO2Polar   gauge groupoid of the polar annulus, Pair(radii) x SO(2);
//                   assembled from the radial pair machinery and the rotation
//                   machinery, it is the left leg of the SO(2) worked example
enum class Family { PairGrid, ActionRonR, ActionSO2onR2, GaugeSO2Polar };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct SmoothGroupoidDescriptor {
  Family family = Family::PairGrid;
  std::vector<Grid1D> axes;  // PairGrid position axes / ActionRonR line
  Grid1D radii;              // polar families: radial grid
  int base_angles = 0;       // ActionSO2onR2: ring resolution of the base
  int n_angles = 0;          // rotation group resolution

  bool so2_group_only() const {  // ActionSO2onR2 over the one-point base {0}
    return family == Family::ActionSO2onR2 && radii.n == 1 && base_angles == 1 &&
           radii.lo == 0.0;
  }
};

SmoothGroupoidDescriptor make_pair_grid(std::vector<Grid1D> axes);
SmoothGroupoidDescriptor make_action_r_on_r(Grid1D line);
SmoothGroupoidDescriptor make_action_so2_on_r2(Grid1D radii, int base_angles, int n_angles);
SmoothGroupoidDescriptor make_so2_group(int n_angles);
SmoothGroupoidDescriptor make_gauge_so2_polar(Grid1D radii, int n_angles);

// Throws std::invalid_argument on inconsistent data (empty grids, base ring
// not matching the rotation resolution, non-positive radii for polar bases).
void validate_descriptor(const SmoothGroupoidDescriptor& d);

std::string descriptor_to_json(const SmoothGroupoidDescriptor& d);
SmoothGroupoidDescriptor descriptor_from_json(const std::string& text);

// One sampled coordinate axis of the algebroid dual, with periodicity flag
// (ring angles wrap; momentum and radial axes do not).
struct AxisSpec {
  Grid1D grid;
  bool periodic = false;
  std::string name;
};

// Sampled total space of the dual bundle: base axes then fiber axes.
// Momentum axes carry the Nyquist extent +-pi/h of the matching base axis;
// rotation duals are integer Fourier modes.
struct LieAlgebroidDual {
  Family family = Family::PairGrid;
  SmoothGroupoidDescriptor desc;
  std::vector<AxisSpec> base, fiber;

  std::vector<int> dims() const {
    std::vector<int> d;
    for (const auto& a : base) d.push_back(a.grid.n);
    for (const auto& a : fiber) d.push_back(a.grid.n);
    return d;
  }
  int n_base() const { return int(base.size()); }
  int n_fiber() const { return int(fiber.size()); }
  const AxisSpec& axis(int k) const {
    return k < n_base() ? base[k] : fiber[k - n_base()];
  }
  int n_axes() const { return n_base() + n_fiber(); }
};

LieAlgebroidDual algebroid_dual(const SmoothGroupoidDescriptor& d);

// Weyl exponential: algebroid element (base point, fiber vector) -> arrow
// coordinates. Conventions (calibrated so the momentum maps and the quantum
// mode matching agree, see the dual-pair module):
//   PairGrid      X = target - source:   arrow (x0 + X/2, x0 - X/2)
//   ActionRonR    arrow (shift = X, source = x0 - X/2)
//   ActionSO2onR2 arrow (angle = -xi, source = rotate(x0, +xi/2))
//   GaugeSO2Polar arrow (r0 + Xr/2, r0 - Xr/2, delta = -xi)
std::vector<double> weyl_exp(const SmoothGroupoidDescriptor& d,
                             const std::vector<double>& base,
                             const std::vector<double>& fiber);
std::vector<double> unit_arrow(const SmoothGroupoidDescriptor& d,
                               const std::vector<double>& base);
std::vector<double> arrow_inverse(const SmoothGroupoidDescriptor& d,
                                  const std::vector<double>& arrow);

}  // namespace glab

#pragma once
#include "glab/operator_norms.hpp"
#include "glab/symbol.hpp"

namespace glab {

// Taper on angular displacement, used when quantizing rotation-action
// symbols with a genuine angular base coordinate: the half-way point between
// two ring sites degenerates at antipodes, so the kernel is faded out before
// the seam. 1 on |u| <= flat, cosine fall, 0 beyond |u| >= zero.
struct CutoffSpec {
  bool enabled = false;
  double flat = 0.5 * kPi;
  double zero = 0.95 * kPi;
  double operator()(double u) const;
  static CutoffSpec taper() { return {true, 0.5 * kPi, 0.95 * kPi}; }
};

struct QuantizeOptions {
  CutoffSpec angular_cutoff = CutoffSpec::taper();
  // Translation directions carry the same seam problem in disguise: the DFT
  // kernel is periodic in the displacement, so entries joining opposite ends
  // of the window alias to short displacements read at chord midpoints.
  // A taper on the displacement (as a fraction of the axis extent) removes
  // them; the true kernel of a decaying symbol is negligible out there.
  bool translation_cutoff = true;
  double translation_flat = 0.35, translation_zero = 0.48;  // fractions of extent
  bool use_closed_form = true;  // sample the symbol's closed form off-grid when present
};

// The displacement taper quantize() applies along one translation axis;
// exposed so oracles can use the identical window.
CutoffSpec translation_cutoff_for(const QuantizeOptions& opt, const Grid1D& axis);

// Matrix realization of the scaled Weyl-type quantization. The symbol is
// evaluated on the fiber window shrunk by hbar (momentum p = hbar * p0 with
// p0 running over the DFT modes of the position grid, the unpaired Nyquist
// mode dropped so real symbols give self-adjoint operators), which makes the
// kernels exact discrete Fourier data and folds the flat-measure prefactor
// (2 pi hbar)^-d into the mode sum. Blocks:
//   pair/line grids  one block on the position grid
//   rotation group   one diagonal block in the Fourier mode basis
//   rotation rings   one block per ring on that ring's sites
//   gauge annulus    one block per angular mode on the radial grid
KernelOperator quantize(const Symbol& f, double hbar, const QuantizeOptions& opt = {});

// The value tr(quantize(f, hbar)) discretizes: the hbar-scaled flat-measure
// integral of the symbol.
std::complex<double> trace_reference(const Symbol& f, double hbar);

// hbar interval on which the scaled fiber window is trustworthy for content
// that lives within |p| <= support_radius and varies on scale feature_scale:
// below lo the window no longer contains the support (lattice can't carry
// the phase), above hi the sampled modes are spaced too widely to resolve
// the features. Empty (lo > hi) when the grid can't do both at once.
struct ResolvableRange {
  double lo = 0.0, hi = 0.0;
  bool contains(double hbar) const { return hbar >= lo && hbar <= hi; }
};
ResolvableRange resolvable_window(const LieAlgebroidDual& dual, double support_radius,
                                  double feature_scale);

}  // namespace glab

#pragma once
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "glab/dual_pair.hpp"
#include "glab/grid_bimodule.hpp"

namespace glab {

// One of the two worked arrows set up for the full round trip: the module,
// the momentum pair, and the duals the two symbol legs live on.
struct RoundtripInstance {
  GridBimodule mod;
  MomentumPair mp;
  LieAlgebroidDual g_dual;                 // where left-leg symbols live
  std::optional<LieAlgebroidDual> h_dual;  // rotation dual; absent for the point partner
};

RoundtripInstance pair_trivial_instance(const SmoothGroupoidDescriptor& pair_desc);
// The rotation partner inherits the gauge descriptor's angular resolution.
RoundtripInstance gauge_so2_instance(const SmoothGroupoidDescriptor& gauge_desc);

// Function on the right dual. The point partner only carries constants;
// the rotation partner carries sampled symbols on the mode axis.
struct HSymbol {
  bool constant = true;
  std::complex<double> c = 1.0;
  Symbol sym;
};
HSymbol h_constant(std::complex<double> c);
HSymbol h_symbol(Symbol s);
double h_sup_norm(const HSymbol& g);

// Tensor-product cosine-taper bump: product over axes of cos^2(pi u / 2w)
// on |u| = |coord - center| <= w, zero outside. Smooth enough to quantize
// honestly, compactly supported so kernel verdicts are exact statements.
Symbol taper_bump_symbol(const LieAlgebroidDual& dual, const std::vector<double>& center,
                         const std::vector<double>& halfwidths);

// The classical kernel functional: pointwise product of the two pullbacks,
// sampled over a covector box. n_outside counts image points that left a
// sampled symbol's grid window (those values are extrapolations).
struct Beta0Samples {
  std::vector<std::complex<double>> values;  // row major over the box samples
  double sup_abs = 0.0;
  int n_outside = 0;
};
Beta0Samples beta0(const MomentumPair& mp, const Symbol& f, const HSymbol& g,
                   const PhaseBox& box);

// Phase-space probe: a coherent vector at (base, cov) whose envelope widths
// shrink like width_scale * sqrt(hbar), so position and covector spreads both
// vanish in the limit and the probe converges onto one classical point.
struct ProbeSpec {
  std::vector<double> base, cov, width_scales;
};
Eigen::VectorXcd probe_vector(const GridBimodule& m, const ProbeSpec& p, double hbar);

// Smallest hbar at which every probe's oscillation still fits the grid
// (hbar >= |cov| * step / pi axis by axis); fits stay above this floor.
double probe_floor(const RoundtripInstance& ri, const std::vector<ProbeSpec>& probes);

struct MembershipOptions {
  std::vector<ProbeSpec> probes;  // must be nonempty
  double threshold_rel = 1e-2;    // of sup|f| * sup|g|
  QuantizeOptions qopt;
};

// Quantum membership of Q(f) (x) Q(g) in the kernel of the limit action:
// the defect d(hbar) = max over probes of |Q(f) . phi . Q(g)| / |phi| in
// module norm, extrapolated linearly over the smallest resolvable decade.
// in_kernel means the extrapolated limit sits under the relative threshold.
struct DefectProfile {
  std::vector<double> hbars, d;
  double limit = 0.0, slope = 0.0;
  double threshold = 0.0;
  double fit_lo = 0.0, fit_hi = 0.0;
  int n_fit = 0;
  bool in_kernel = false;
};
DefectProfile kernel_membership_quantum(const RoundtripInstance& ri, const Symbol& f,
                                        const HSymbol& g, const HbarGrid& grid,
                                        const MembershipOptions& opt);

// Tiling of one dual coordinate: centers lo, lo + width, ..., hi. The bump
// carried by a tile extends a full width either side of its center, so
// neighbouring supports overlap by one width and integer-sampled axes (mode
// duals) always keep at least the center sample. Hausdorff distances for the
// reconstruction are reported in units of these widths.
struct TileAxis {
  double lo = 0.0, hi = 0.0, width = 1.0;
};
std::vector<double> tile_centers(const TileAxis& ax);

struct RoundtripConfig {
  std::vector<TileAxis> g_axes;  // tiling of the left dual, one per coordinate
  std::vector<TileAxis> h_axes;  // right dual tiling; empty for the point partner
  HbarGrid grid;
  std::vector<ProbeSpec> probes;
  double threshold_rel = 1e-2;
  PhaseBox classical_box;     // sampling for the classical relation leg
  double classical_tol = 0.0;  // dedup radius for the classical cloud; 0 = library default
  int probe_stride = 1;       // keep every k-th probe of the derived lattice
  bool inject_sign_fault = false;  // flip the right-leg sign in the classical relation
  QuantizeOptions qopt;
};

// Pinned default setups for the two worked examples (tile windows, probe
// lattices, hbar grids, classical boxes).
RoundtripConfig default_pair_roundtrip_config(const RoundtripInstance& ri);
RoundtripConfig default_gauge_roundtrip_config(const RoundtripInstance& ri);

// The quantum side of the relation: every tile pair (f on the left dual, g on
// the right dual) is run through kernel_membership_quantum; the survivors
// (pairs that act nontrivially in the limit) reconstruct the relation.
struct TilePairVerdict {
  std::vector<double> g_center, h_center;
  double limit = 0.0;
  bool in_kernel = false;
};
struct KernelZeroSet {
  std::vector<TilePairVerdict> verdicts;
  Relation relation;  // surviving tile-center pairs
  std::vector<double> g_widths, h_widths;
  int n_pairs = 0, n_survivors = 0;
  double fit_lo = 0.0, fit_hi = 0.0;
};
KernelZeroSet reconstruct_relation(const RoundtripInstance& ri, const RoundtripConfig& cfg);

// End-to-end verdict: quantum reconstruction vs the classical Lagrangian
// relation, Hausdorff measured in tile units (each coordinate scaled by its
// tile width) after clipping the classical cloud to the tiled window; the
// round trip passes under 3 tile widths. Also checks the object-level round
// trip (the classical fiber of a generated section is its symbol, exactly)
// and the beta0 consistency of every tile verdict. Stage names tag errors.
struct RoundtripReport {
  bool passes = false;
  double hausdorff_fwd = 0.0;  // reconstructed -> classical, tile units
  double hausdorff_rev = 0.0;  // classical -> reconstructed
  double tile_tolerance = 3.0;
  int n_pairs = 0, n_survivors = 0, n_classical = 0;
  int beta0_agreements = 0, beta0_disagreements = 0;
  double separation = 0.0;  // min non-kernel limit / max kernel limit
  bool object_roundtrip_exact = false;
  bool sign_fault_injected = false;
  std::string stage;  // last stage entered; names the culprit when a stage throws
  KernelZeroSet kernel_set;
  Relation classical;
};
RoundtripReport roundtrip_report(const RoundtripInstance& ri, const RoundtripConfig& cfg);

nlohmann::json roundtrip_report_json(const RoundtripReport& r);

}  // namespace glab

#pragma once
#include <optional>
#include <string>
#include <vector>

#include "glab/bundle.hpp"

namespace glab {

// Discretized Hilbert bimodules for the two worked arrow examples.
//   PairTrivial  left = pair groupoid of a line grid, right = the one-point
//                groupoid; the middle space is the grid itself, so the module
//                is the column space C^N and inner products are scalars
//                (realized as 1x1 blocks labeled "scalar").
//   GaugeSO2     left = gauge groupoid of the polar annulus, right = SO(2);
//                the middle space is the annulus (radius major, angle minor)
//                and inner products are diagonal in the angular-mode basis,
//                matching the "modes" block the rotation-group quantizer
//                emits. Mode slot i carries integer frequency -A/2 + i.
// Both carry the flat product measure of the trivialization (step * 2pi/A for
// the annulus): the quantized kernels are plain-transpose self-adjoint, so the
// compatible module measure is the unweighted one, not r dr dtheta.
enum class ModuleFamily { PairTrivial, GaugeSO2 };

struct GridBimodule {
  ModuleFamily family = ModuleFamily::PairTrivial;
  SmoothGroupoidDescriptor left;  // PairGrid(1) or GaugeSO2Polar
  int n_points = 0;               // dim of the middle space
};

GridBimodule pair_trivial_module(const SmoothGroupoidDescriptor& pair_desc);
GridBimodule gauge_so2_module(const SmoothGroupoidDescriptor& gauge_desc);

int module_dim(const GridBimodule& m);
// coordinates of middle sample q: (x) on the line, (r, theta) on the annulus
std::vector<double> module_point(const GridBimodule& m, int q);

// Inner product, valued in the right algebra: <phi,psi> for PairTrivial is
// the dx overlap; for GaugeSO2 the diagonal entry at mode slot i is the
// dr dtheta overlap of the two mode-i angular components. Summing the
// diagonal recovers the full squared overlap (Parseval), and positivity of
// <phi,phi> is manifest: every entry is a sum of absolute squares.
KernelOperator module_inner(const GridBimodule& m, const Eigen::VectorXcd& phi,
                            const Eigen::VectorXcd& psi);
double module_norm(const GridBimodule& m, const Eigen::VectorXcd& phi);
double inner_min_eigenvalue(const GridBimodule& m, const Eigen::VectorXcd& phi);

// Left action of a quantized left-algebra element (block shapes must match
// what quantize() emits for the left family); right action of a right-algebra
// element (1x1 scalar block / diagonal mode block).
Eigen::VectorXcd left_apply(const GridBimodule& m, const KernelOperator& a,
                            const Eigen::VectorXcd& phi);
Eigen::VectorXcd right_apply(const GridBimodule& m, const Eigen::VectorXcd& phi,
                             const KernelOperator& b);

// Unit of the right algebra in its block representation.
KernelOperator right_unit(const GridBimodule& m);

// hbar-indexed family of middle vectors; the sampled stand-in for a section
// of the module bundle.
struct ModuleSection {
  HbarGrid grid;
  std::vector<Eigen::VectorXcd> vecs;
};

ModuleSection constant_section(const GridBimodule& m, const HbarGrid& grid,
                               const Eigen::VectorXcd& v);
ModuleSection scale_module_profile(const ModuleSection& s,
                                   const std::function<double(double)>& phi);
ModuleSection module_section_add(const ModuleSection& a, const ModuleSection& b);
ModuleSection module_section_sub(const ModuleSection& a, const ModuleSection& b);

// Phase-space localized element: Gaussian envelope around `base` times the
// oscillation carrying covector `cov` at scale hbar. On the annulus the
// angular covector rides the nearest integer mode round(lambda/hbar) and the
// envelope uses wrapped angular distance. Only trustworthy while the
// oscillation stays under the grid Nyquist rate: hbar >= |cov| * step / pi.
Eigen::VectorXcd coherent_vector(const GridBimodule& m, const std::vector<double>& base,
                                 const std::vector<double>& cov,
                                 const std::vector<double>& widths, double hbar);
ModuleSection coherent_section(const GridBimodule& m, const HbarGrid& grid,
                               const std::vector<double>& base, const std::vector<double>& cov,
                               const std::vector<double>& widths);

// Pointwise-in-hbar actions of algebra sections on module sections.
ModuleSection left_apply_section(const GridBimodule& m, const Section& a,
                                 const ModuleSection& phi);
ModuleSection right_apply_section(const GridBimodule& m, const ModuleSection& phi,
                                  const Section& b);

NormProfile module_norm_profile(const GridBimodule& m, const ModuleSection& phi);

// Relative adjacent-sample jump of a norm profile beyond this fraction of the
// profile's scale is recorded as a continuity warning on the lift.
inline constexpr double kModuleContinuityTol = 0.5;

struct CauchySchwarzReport {
  bool passes = true;
  double worst_violation = 0.0;  // max over pairs/hbar of |<phi,psi>| - |phi||psi|
  int n_checked = 0;
};

struct NondegeneracyCase {
  std::string name;
  double residual = 0.0;       // worst relative factorization mismatch over hbar
  double quotient_sup = 0.0;   // sup norm of the factored module section
  double quotient_slope = 0.0; // log-log decay of its profile over the smallest decade
  bool b_vanishes = false;     // the right-algebra factor passes the hbar->0 test
};

// Residual thresholds: the canonical unit-section case must factor to
// round-off, generic vanishing sections get the battery tolerance. A
// factored quotient whose profile grows toward hbar = 0 faster than this
// slope floor means the input section vanished too slowly to factor.
inline constexpr double kNondegenUnitTol = 1e-6;
inline constexpr double kNondegenTol = 1e-3;
inline constexpr double kNondegenSlopeFloor = -0.15;

struct NondegeneracyReport {
  bool passes = false;
  double worst_residual = 0.0;
  std::vector<NondegeneracyCase> cases;
};

// The lift of the bimodule over an hbar grid. The per-hbar structure (inner
// product, actions) is shared; what the lift records is the diagnostics of
// its generators: norm profiles, continuity warnings, positivity floor, and
// the Cauchy-Schwarz margin at every sampled hbar.
struct ModuleLift {
  GridBimodule mod;
  HbarGrid grid;
  std::vector<ModuleSection> generators;
  std::vector<NormProfile> profiles;
  std::vector<std::string> warnings;
  double worst_positivity = 0.0;  // min over generators/hbar of min eig of <phi,phi>
  CauchySchwarzReport cs;
  std::optional<NondegeneracyReport> nondegeneracy;
};

ModuleLift lift_module(const GridBimodule& m, const HbarGrid& grid,
                       std::vector<ModuleSection> generators,
                       double continuity_tol = kModuleContinuityTol);

// Vanishing sections of the left algebra for the factorization battery:
// hbar * Q(f) for each symbol, plus hbar * Q(f0)Q(f1) when two or more
// symbols are given. Members vanish linearly on purpose: the membership
// test extrapolates with a line, and superlinear decay (the multiplicativity
// defect, say) biases the intercept below zero past the gate at two-decade
// sampling, so such sections are not certified members here.
std::vector<Section> standard_vanishing_battery(const GridBimodule& m, const HbarGrid& grid,
                                                const std::vector<Symbol>& symbols,
                                                const QuantizeOptions& opt = {});

// For every vanishing section a and generator phi, factor a * phi = phi' * b
// with b = hbar * (right unit) and phi' = (1/hbar) a * phi, and measure the
// mismatch in module norm, relative to the family's largest action norm. The
// canonical case a = hbar * Q(1) is always included with phi' = phi, which
// tests that the quantized unit acts as the exact identity. Throws if a
// battery section fails the vanishing test (it would not lie in the ideal
// being factored). Stores the report on the lift.
NondegeneracyReport strong_nondegeneracy_check(ModuleLift& se,
                                               const std::vector<Section>& a_battery,
                                               const QuantizeOptions& opt = {});

nlohmann::json nondegeneracy_report_json(const NondegeneracyReport& r);

// Quotient by the submodule of sections whose norm profile vanishes at
// hbar -> 0: same linear extrapolation over the smallest decade as the
// section-algebra ideal test.
VanishingReport module_vanishing(const GridBimodule& m, const ModuleSection& phi,
                                 double rel_threshold = 1e-3);
bool same_limit_class(const GridBimodule& m, const ModuleSection& a, const ModuleSection& b,
                      double rel_threshold = 1e-3);

// The module the lift leaves behind at hbar = 0. Requires the
// nondegeneracy report on the lift to have passed (the quotient only
// carries the limit algebra actions in that case).
struct ClassicalLimitModule {
  GridBimodule mod;
  HbarGrid grid;  // samples the extrapolations are read from
};

ClassicalLimitModule hilbert_classical_limit(const ModuleLift& se);

// Entrywise extrapolated hbar -> 0 limit (intercept of the linear fit over
// the smallest sampled decade).
Eigen::VectorXcd module_limit_vector(const HbarGrid& grid, const ModuleSection& phi);

// Limit of the lifted left action of an algebra section on a module section:
// extrapolate (a * phi) entrywise.
Eigen::VectorXcd limit_left_action(const ClassicalLimitModule& clm, const Section& a,
                                   const ModuleSection& phi);
// The closed-form side of the same limit: multiply sample q by the symbol
// read at (base point of q, zero covector).
Eigen::VectorXcd classical_multiplication(const ClassicalLimitModule& clm, const Symbol& f0,
                                          const Eigen::VectorXcd& v);
// Entrywise extrapolated limit of the inner product, in the right-algebra
// block representation.
KernelOperator limit_inner(const ClassicalLimitModule& clm, const ModuleSection& a,
                           const ModuleSection& b);

}  // namespace glab

#pragma once
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "glab/smooth_family.hpp"

namespace glab {

// Classical side of an arrow: the two momentum maps T*M -> G* x H* induced
// by a bibundle of the built-in families, with closed forms per combination.
enum class DualPairCombo { PairTrivial, PairPair, GaugeSO2 };

// Closed-form momentum maps for the supported combinations.
//
//   PairTrivial: M = R (one grid axis), G = pair groupoid of the grid, H =
//                the point groupoid. j_G(q,p) = (q,p), j_H = ().
//   PairPair:    M = X x Y, G = pair(X), H = pair(Y). j_G = (q1, p1),
//                j_H = (q2, -p2): the right action is by the transposed
//                kernel, and transposing a Weyl kernel flips the momentum.
//   GaugeSO2:    M = R^2 minus the origin (Cartesian covers of the annulus),
//                G = gauge groupoid of the polar annulus, H = SO(2).
//                j_G = (r, p_r, L) and j_H = (L) with L = q1 p2 - q2 p1.
//                Both angular slots carry +L: the quantizer pairs the module
//                mode e^{im theta} with covector value hbar*m on either side
//                (measured, not assumed), so the classical relation couples
//                the two angular coordinates diagonally.
//
// The output layout is base coordinates first, then the fiberwise-linear
// covector slots; *_base_dim says where the split is.
struct MomentumPair {
  DualPairCombo combo = DualPairCombo::PairTrivial;
  SmoothGroupoidDescriptor left, right;
  int m_dim = 1;       // dim of M
  int g_dim = 2;       // coordinates of G*
  int h_dim = 0;       // coordinates of H*
  int g_base_dim = 1;  // leading base coords of G* (not linear in the fiber)
  int h_base_dim = 0;
};

// Throws std::invalid_argument on any combination other than the three above.
// The one-argument form takes the point groupoid as the right partner; `right`
// stays default-constructed and unused in that combo.
MomentumPair momentum_maps(const SmoothGroupoidDescriptor& g);
MomentumPair momentum_maps(const SmoothGroupoidDescriptor& g, const SmoothGroupoidDescriptor& h);

// Closed-form evaluation at the covector (q, p), |q| = |p| = m_dim.
std::vector<double> j_g(const MomentumPair& mp, const std::vector<double>& q,
                        const std::vector<double>& p);
std::vector<double> j_h(const MomentumPair& mp, const std::vector<double>& q,
                        const std::vector<double>& p);

// Independent oracle: pair the covector with Richardson central differences
// of the hand-coded action curves (left leg: d/dt exp(tX).q; right leg:
// -d/dt q.exp(tY), the sign and curve orientations calibrated against the
// quantizer's mode pairing). Base slots are copied from the geometry.
std::vector<double> j_g_fd(const MomentumPair& mp, const std::vector<double>& q,
                           const std::vector<double>& p, double eps = 1e-3);
std::vector<double> j_h_fd(const MomentumPair& mp, const std::vector<double>& q,
                           const std::vector<double>& p, double eps = 1e-3);

// Sampling box in T*M: position axes then momentum axes, m_dim each.
struct PhaseBox {
  std::vector<Grid1D> q_axes, p_axes;
};

// Canonical test boxes. Positions avoid the origin for the polar family
// (the radial covector blows up there); momenta cover [-2, 2] per axis.
PhaseBox default_phase_box(const MomentumPair& mp, int nq, int np);

// Scalar observable on G* or H* sample coordinates.
using DualFn = std::function<double(const std::vector<double>&)>;

struct CommutationReport {
  double max_bracket = 0.0;  // max |{f o j_G, g o j_H}| over battery and interior points
  int n_points = 0;          // interior stencil points per pair
  int n_pairs = 0;
  double tol = 0.0;
  bool passes = false;
};

// Canonical Poisson bracket on T*M by 4th-order five-point stencils over the
// box; every axis needs at least five samples. Batteries are zipped, so
// fs.size() == gs.size() pairs are checked.
CommutationReport commutation_check(const MomentumPair& mp, const PhaseBox& box,
                                    const std::vector<DualFn>& fs, const std::vector<DualFn>& gs,
                                    double tol = 1e-5);

// {f o j_H, g o j_H} against the Lie-Poisson bracket of so(2)* (abelian, so
// the target is zero), rotation combo only; throws otherwise.
CommutationReport h_poisson_map_check(const MomentumPair& mp, const PhaseBox& box,
                                      const std::vector<DualFn>& fs, const std::vector<DualFn>& gs,
                                      double tol = 1e-5);

// Ten (f, g) pairs per combo: coordinates, low-degree polynomials, and wide
// smooth envelopes scaled so the stencil truncation stays well under 1e-5.
std::pair<std::vector<DualFn>, std::vector<DualFn>> standard_commutation_battery(
    const MomentumPair& mp);

// max_alpha max_eta | j(q, alpha p) - alpha-scaled j(q, p) | over a coarse
// subsample of the box, fiber slots only (base slots must match exactly).
double fiber_linearity_error(const MomentumPair& mp, const PhaseBox& box,
                             const std::vector<double>& alphas = {0.5, 2.0, -1.0, 3.75});

// Finite epsilon-net for the image (j_G, j_H)[T*M]: points carry the G* and
// H* coordinates side by side, deduplicated in max-norm within tolerance.
struct Relation {
  int a_dim = 0, b_dim = 0;
  std::vector<std::vector<double>> points;  // a_dim + b_dim columns
  double tolerance = 0.0;
  bool degenerate = false;  // empty point set
};

// Samples the box and dedups. tolerance <= 0 picks 2x the largest box step.
// Throws on an empty sampling box.
Relation lagrangian_relation(const MomentumPair& mp, const PhaseBox& box, double tolerance = 0.0);

// {(a, c) : exists (a,b) in r1, (b',c) in r2 with |b - b'|_inf <= tol}.
// tol <= 0 takes the larger input tolerance. Throws when the middle
// coordinate counts differ; an empty result is flagged degenerate.
Relation compose_relations(const Relation& r1, const Relation& r2, double tol = 0.0);

// Diagonal {(b, b)} of the sampled product box; the composition identity.
Relation identity_relation(const std::vector<Grid1D>& axes, double tolerance);

// Symmetric Hausdorff distance in max-norm; 0 for two empty relations,
// +infinity when exactly one side is empty. Throws on column mismatch.
double relation_hausdorff(const Relation& a, const Relation& b);

// CSV point cloud with a one-line JSON header comment (dims, tolerance).
std::string relation_csv(const Relation& r);
void write_relation_csv(const Relation& r, const std::string& path);

}  // namespace glab

#pragma once
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glab/exact.hpp"
#include "glab/finite_groupoid.hpp"

namespace glab {

// Two-sided groupoid space: G acts from the left, H from the right, on a
// finite point set M. Action tables hold -1 where the action is undefined;
// the left action is defined exactly when src_G(x) = tmap[q], the right one
// exactly when smap[q] = tgt_H(y).
struct FiniteBibundle {
  const FiniteGroupoid* left = nullptr;   // G
  const FiniteGroupoid* right = nullptr;  // H
  int n_points = 0;
  std::vector<int> tmap, smap;  // point -> unit arrow of G resp. H
  std::vector<int> lact;        // lact[x * n_points + q]
  std::vector<int> ract;        // ract[q * right->n_arrows + y]
  bool degenerate = false;      // empty middle space (tensor of disjoint pieces)

  int left_act(int x, int q) const { return lact[std::int64_t(x) * n_points + q]; }
  int right_act(int q, int y) const { return ract[std::int64_t(q) * right->n_arrows + y]; }
};

// Exhaustive audit: unit/source/target bookkeeping, mixed associativity,
// commuting of the two actions, and the regularity conditions (left action
// free and transitive on each smap-fiber; every finite right action is
// proper, so properness carries no separate check). Empty = clean.
std::vector<std::string> validate_bibundle(const FiniteBibundle& b);

FiniteBibundle column_bibundle(const FiniteGroupoid& pair_g, const FiniteGroupoid& point_h);
FiniteBibundle algebra_bibundle(const FiniteGroupoid& pair_g);
FiniteBibundle identity_bibundle(const FiniteGroupoid& h);  // M = arrows of h

// Middle space of the composite: pairs (q, r) with smap_M(q) = tmap_N(r),
// modulo the diagonal H-action (q, r) ~ (q y, y^-1 r). reps_out receives one
// representative pair per class. A composite with no compatible pairs comes
// back with n_points = 0 and degenerate = true.
FiniteBibundle bibundle_tensor(const FiniteBibundle& m, const FiniteBibundle& n,
                               std::vector<std::array<int, 2>>* reps_out = nullptr);

// Finite-dimensional bimodule over the two convolution algebras, all data
// exact. lact/ract give the action of each basis delta; the inner product
// with values in the right algebra is stored per arrow y:
//   <e_i, e_j>(y) = inner_y[y](i, j).
struct ExactBimodule {
  const FiniteGroupoid* alg_a = nullptr;
  const FiniteGroupoid* alg_b = nullptr;
  int dim = 0;
  std::vector<RatMat> lact, ract, inner_y;
};

// Inner product, module actions, and the measure family pushed through the
// left action. Throws naming the violated regularity condition.
ExactBimodule bimodule_from_bibundle(const FiniteBibundle& b);

ExactBimodule bimodule_direct_sum(const ExactBimodule& e, const ExactBimodule& f);

// Balanced tensor product over the shared middle algebra: the algebraic
// tensor modulo the null space of the induced semi-inner product, which is
// exactly the span of (phi.b (x) psi - phi (x) b.psi). proj/sect realize the
// quotient concretely: proj * sect = identity on the result.
struct TensorResult {
  ExactBimodule mod;
  RatMat proj;  // mod.dim x (dimE * dimF)
  RatMat sect;  // (dimE * dimF) x mod.dim
};
TensorResult interior_tensor(const ExactBimodule& e, const ExactBimodule& f);

// Basis (columns) of the annihilator of the middle space inside A (x) B^op,
// coordinates x * nB + y for the pair of basis deltas.
RatMat tensor_product_kernel(const ExactBimodule& e);

// Rational *-representation of a convolution algebra: act[y] represents the
// basis delta of arrow y; form is the (PSD, invertible) inner product making
// the representation adjoint-compatible, identity for the built-ins that
// need none.
struct RatRep {
  const FiniteGroupoid* g = nullptr;
  int dim = 0;
  std::vector<RatMat> act;
  RatMat form;
};

RatRep left_regular_rat(const FiniteGroupoid& g);
RatRep column_rep(const FiniteGroupoid& pair_g);
// Rational irreducible representation of Z_m attached to a divisor d of m:
// the companion action on Q[x]/(d-th cyclotomic), with its invariant form.
RatRep cyclotomic_rep(const FiniteGroupoid& zm, int divisor);

// Exhaustive multiplicativity + adjoint-compatibility audit of a RatRep.
std::vector<std::string> validate_rat_rep(const RatRep& r);

// Induction of a representation of B through a (A,B)-bimodule: the quotient
// of E (x) V by the null space of the induced Gram form, carrying A.
struct InducedRep {
  int dim = 0;
  std::vector<RatMat> act;  // per A-arrow
  RatMat gram;              // the induced inner product on the quotient
  bool degenerate = false;  // zero induced space
};
InducedRep rieffel_induce(const ExactBimodule& e, const RatRep& rep);

// Kernel of an induced representation, columns in A-arrow coordinates.
RatMat induced_rep_kernel(const InducedRep& r, int n_arrows_a);

// Exact positivity of every <phi,phi>: the Gram form of the left-regular
// induction is positive semidefinite iff all inner products are positive in
// the algebra. rank_out reports its rank.
bool exact_positivity(const ExactBimodule& e, int* rank_out = nullptr);

// Is w (dim2 x dim1) a bimodule unitary from e1 to e2: invertible,
// intertwines both actions, preserves the algebra-valued inner product?
struct WitnessReport {
  bool ok = true;
  std::string failure;
};
WitnessReport check_unitary_witness(const ExactBimodule& e1, const ExactBimodule& e2,
                                    const RatMat& w);

// Canonical unitaries for the category laws; each returns the witness matrix
// mapping the tensor-product side onto the direct side.
RatMat right_unit_witness(const ExactBimodule& e, const TensorResult& e_tensor_id);
RatMat left_unit_witness(const ExactBimodule& e, const TensorResult& id_tensor_e);
// (E (x) F) (x) K -> E (x) (F (x) K) through the shared triple-tensor space.
RatMat associativity_witness(const TensorResult& ef, const TensorResult& ef_k,
                             const TensorResult& fk, const TensorResult& e_fk, int dim_e,
                             int dim_k);
// interior_tensor(E_M, E_N) -> E_{M (*) N} on delta bases; reps are the orbit
// representatives reported by bibundle_tensor.
RatMat composite_witness(const FiniteBibundle& m, const FiniteBibundle& n,
                         const FiniteBibundle& mn, const std::vector<std::array<int, 2>>& reps,
                         const TensorResult& tens);

// Conjugated copy: lact/ract by w . w^-1, inner by congruence with w^-T,
// so that w itself witnesses the equivalence. w must be invertible.
ExactBimodule conjugate_bimodule(const ExactBimodule& e, const RatMat& w);

// Rational orthogonal matrix from a random antisymmetric seed (Cayley
// transform); exact, determinant +1.
RatMat random_rational_orthogonal(int n, std::uint64_t seed);

// Random regular bibundle holder: owns its groupoids.
struct RandomBibundle {
  std::shared_ptr<FiniteGroupoid> g, h;
  FiniteBibundle m;
};
RandomBibundle random_regular_bibundle(std::uint64_t seed, int max_units = 4);

// A composable chain sharing middle groupoids: (G,H), (H,K), (K,L).
struct RandomBibundleChain {
  std::vector<std::shared_ptr<FiniteGroupoid>> gpds;  // G, H, K, L
  std::vector<FiniteBibundle> links;                  // 3 links
};
RandomBibundleChain random_bibundle_chain(std::uint64_t seed, int max_units = 4);

std::string bibundle_to_json(const FiniteBibundle& b);
struct ParsedBibundle {
  std::shared_ptr<FiniteGroupoid> g, h;
  FiniteBibundle m;
};
ParsedBibundle bibundle_from_json(const std::string& text);

std::string kernel_basis_to_json(const RatMat& kernel);
RatMat kernel_basis_from_json(const std::string& text);

}  // namespace glab

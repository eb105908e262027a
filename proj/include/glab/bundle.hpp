#pragma once
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glab/defects.hpp"

namespace glab {

// How a section came to be. Generated and Product sections remember their
// symbols, which is what makes a symbolic limit available at hbar -> 0.
enum class Provenance { Generated, Product, Raw };

// A sampled section of the field of algebras over the hbar grid: one
// operator fiber per sample.
struct Section {
  HbarGrid grid;
  std::vector<KernelOperator> fibers;
  Provenance prov = Provenance::Raw;
  std::vector<Symbol> symbols;  // Generated: {f}; Product: the factors in order
};

Section section_from_symbol(const Symbol& f, const HbarGrid& grid,
                            const QuantizeOptions& opt = {});
Section section_product(const Section& a, const Section& b);
Section section_add(const Section& a, const Section& b);
Section section_sub(const Section& a, const Section& b);  // provenance Raw
Section section_adjoint(const Section& s);
// Fiber at hbar scaled by phi(hbar). Raw provenance: the symbolic limit of a
// reparametrized section is not tracked.
Section section_scale_profile(const Section& s, const std::function<double(double)>& phi);

struct NormProfile {
  std::vector<double> hbars, norms;
  // modulus of continuity estimate: omega(delta) = max |norm_i - norm_j|
  // over |hbar_i - hbar_j| <= delta, nondecreasing in delta
  std::vector<double> deltas, omegas;
};

NormProfile norm_profile(const Section& s);
double sup_norm(const Section& s);

// Extrapolated membership test for the vanishing-at-zero ideal: least-squares
// fit of the norm profile against c0 + c1*hbar over the smallest sampled
// decade; passes when |c0| <= rel_threshold * sup_norm(s) (plus a round-off
// floor so the zero section passes).
struct VanishingReport {
  bool passes = false;
  double limit = 0.0;     // extrapolated norm at hbar = 0
  double slope = 0.0;     // fitted c1
  double residual = 0.0;  // worst fit deviation over the window
  double threshold = 0.0;
  double fit_lo = 0.0, fit_hi = 0.0;  // hbar window used
  int n_fit = 0;
};

VanishingReport vanishing_at_zero(const Section& s, double rel_threshold = 1e-3);

// The symbol a section converges to: Generated keeps its symbol, Product
// takes the pointwise product of the factors (the limit algebra is abelian,
// so order does not matter). Raw sections have no symbolic limit -> throws.
Symbol classical_fiber(const Section& s);

// Two sections share a classical fiber exactly when their difference lies in
// the vanishing ideal.
bool same_classical_class(const Section& a, const Section& b, double rel_threshold = 1e-3);

void write_norm_profile_csv(const std::string& path, const NormProfile& p);
nlohmann::json vanishing_report_json(const VanishingReport& r);

}  // namespace glab

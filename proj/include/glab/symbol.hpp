#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "glab/smooth_family.hpp"

namespace glab {

// Decay/regularity class the caller asserts for a sampled function. Rapidly
// decaying classes justify treating the sample window as the whole story;
// Generic symbols get no such benefit of the doubt in the checks.
enum class FunctionClass { Schwartz, PaleyWiener, Generic };

using SymbolFn = std::function<std::complex<double>(const std::vector<double>& base,
                                                    const std::vector<double>& fiber)>;

// Function on the total space of the dual bundle, sampled on the product
// grid (base axes then fiber axes, row major, last axis fastest). The sample
// table is the source of truth; closed_form, when present, supplies off-grid
// values exactly instead of through trigonometric interpolation.
struct Symbol {
  LieAlgebroidDual dual;
  std::vector<std::complex<double>> a;
  FunctionClass cls = FunctionClass::Generic;
  SymbolFn closed_form;

  NdIndex index() const { return NdIndex(dual.dims()); }
  std::complex<double>& at(const std::vector<int>& idx) { return a[index().flat(idx)]; }
  const std::complex<double>& at(const std::vector<int>& idx) const {
    return a[index().flat(idx)];
  }
};

Symbol symbol_zero(const LieAlgebroidDual& dual);
Symbol sample_symbol(const LieAlgebroidDual& dual, const SymbolFn& fn,
                     FunctionClass cls = FunctionClass::Generic, bool keep_closed_form = true);

// exp(-|base-c|^2/2sx^2 - |fiber|^2/2sp^2), sampled; Schwartz class.
Symbol gaussian_symbol(const LieAlgebroidDual& dual, std::vector<double> base_center,
                       double base_width, double fiber_width, double amp = 1.0);

Symbol sym_add(const Symbol& f, const Symbol& g);
Symbol sym_sub(const Symbol& f, const Symbol& g);
Symbol sym_scale(std::complex<double> c, const Symbol& f);
Symbol sym_mul(const Symbol& f, const Symbol& g);  // pointwise
Symbol sym_conj(const Symbol& f);
double sup_norm(const Symbol& f);
double sup_diff(const Symbol& f, const Symbol& g);

// Riemann sum with each axis's step as weight (integer mode axes count with
// weight 1, ring axes with their angular step).
std::complex<double> symbol_integral(const Symbol& f);

// Point evaluation: closed form when available, else separable trigonometric
// interpolation (samples are treated as one period of a band-limited signal,
// which is the honest reading for decayed or periodic axes).
std::complex<double> symbol_eval(const Symbol& f, const std::vector<double>& base,
                                 const std::vector<double>& fiber);

// Tensor evaluation on a product of per-axis target lists; returns values in
// row-major order over the target sizes. Used by the quantizer, which needs
// whole half-grids and scaled fiber windows at once.
std::vector<std::complex<double>> eval_tensor(const Symbol& f,
                                              const std::vector<std::vector<double>>& targets,
                                              bool allow_closed_form = true);

// Fiberwise Fourier transform, plain Lebesgue convention:
//   (Ff)(x, X) = integral of f(x,p) exp(-i p.X) dp
// so a unit Gaussian in one fiber variable peaks at sqrt(2*pi). The result is
// sampled on the DFT-dual fiber axes; the inverse carries (2*pi)^-d.
Symbol fiberwise_ft(const Symbol& f);
Symbol fiberwise_ft_inverse(const Symbol& F);

}  // namespace glab

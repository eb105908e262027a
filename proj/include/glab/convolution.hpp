#pragma once
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "glab/finite_groupoid.hpp"
#include "glab/operator_norms.hpp"

namespace glab {

inline std::complex<double> conj_scalar(const std::complex<double>& z) { return std::conj(z); }
template <class S>
S conj_scalar(const S& s) {  // real scalar types are their own conjugates
  return s;
}

// Element of the convolution algebra of a finite groupoid: one coefficient
// per arrow. Scalar S is complex<double> for the numerical sector and an
// exact rational type for the exact sector.
template <class S>
struct ConvElem {
  const FiniteGroupoid* g = nullptr;
  std::vector<S> a;
};

template <class S>
ConvElem<S> conv_zero(const FiniteGroupoid& g) {
  return {&g, std::vector<S>(g.n_arrows, S(0))};
}

template <class S>
ConvElem<S> conv_delta(const FiniteGroupoid& g, int arrow, S amp = S(1)) {
  auto f = conv_zero<S>(g);
  f.a.at(arrow) = amp;
  return f;
}

template <class S>
S rat_scalar(const RatWeight& w) {
  return S(w.num) / S(w.den);
}

// Unit of convolution: mass 1/weight at each unit arrow.
template <class S>
ConvElem<S> conv_identity(const FiniteGroupoid& g) {
  auto f = conv_zero<S>(g);
  for (size_t k = 0; k < g.units.size(); ++k)
    f.a[g.units[k]] = S(g.haar[k].den) / S(g.haar[k].num);
  return f;
}

// (f * h)(x) = w(src(x)) * sum over x' in the source fiber of x of
// f(x x'^-1) h(x'). The fiber weight w is the groupoid's Haar datum.
template <class S>
ConvElem<S> convolve(const ConvElem<S>& f, const ConvElem<S>& h,
                     const std::vector<std::vector<int>>& sfib) {
  if (f.g != h.g) throw std::invalid_argument("convolve: different groupoids");
  const FiniteGroupoid& g = *f.g;
  auto out = conv_zero<S>(g);
  for (int x = 0; x < g.n_arrows; ++x) {
    const int slot = g.unit_slot(g.src[x]);
    S acc(0);
    for (int xp : sfib[slot]) {
      if (h.a[xp] == S(0)) continue;
      const int left = g.compose(x, g.inv[xp]);
      if (left < 0) throw std::logic_error("convolve: composition table is broken");
      acc += f.a[left] * h.a[xp];
    }
    out.a[x] = acc * rat_scalar<S>(g.haar[slot]);
  }
  return out;
}

template <class S>
ConvElem<S> convolve(const ConvElem<S>& f, const ConvElem<S>& h) {
  if (!f.g) throw std::invalid_argument("convolve: empty element");
  return convolve(f, h, source_fibers(*f.g));
}

template <class S>
ConvElem<S> involution(const ConvElem<S>& f) {
  ConvElem<S> out{f.g, std::vector<S>(f.g->n_arrows)};
  for (int x = 0; x < f.g->n_arrows; ++x) out.a[x] = conj_scalar(f.a[f.g->inv[x]]);
  return out;
}

template <class S>
ConvElem<S> conv_add(const ConvElem<S>& f, const ConvElem<S>& h) {
  if (f.g != h.g) throw std::invalid_argument("conv_add: different groupoids");
  ConvElem<S> out = f;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += h.a[i];
  return out;
}

template <class S>
ConvElem<S> conv_sub(const ConvElem<S>& f, const ConvElem<S>& h) {
  if (f.g != h.g) throw std::invalid_argument("conv_sub: different groupoids");
  ConvElem<S> out = f;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= h.a[i];
  return out;
}

template <class S>
ConvElem<S> conv_scale(const S& c, const ConvElem<S>& f) {
  ConvElem<S> out = f;
  for (auto& v : out.a) v = c * v;
  return out;
}

template <class S>
bool conv_is_zero(const ConvElem<S>& f) {
  for (const auto& v : f.a)
    if (!(v == S(0))) return false;
  return true;
}

using ConvElemC = ConvElem<std::complex<double>>;

double conv_sup(const ConvElemC& f);

// Left regular representation: one block per unit, acting on functions on
// that unit's source fiber. Faithful, so operator norms of algebra elements
// are computed here.
KernelOperator left_regular(const ConvElemC& f);

// Pair groupoid over m points with uniform weight c: f -> matrix
// A[a][b] = c * f((a,b)) is a *-isomorphism onto M_m.
Eigen::MatrixXcd matrix_units_iso(const ConvElemC& f);
ConvElemC matrix_units_iso_inv(const FiniteGroupoid& g, const Eigen::MatrixXcd& m);

ConvElemC random_conv_elem(const FiniteGroupoid& g, std::uint64_t seed);

std::string conv_to_json(const ConvElemC& f);
std::vector<std::complex<double>> conv_values_from_json(const std::string& text);

}  // namespace glab

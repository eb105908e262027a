#include "glab/poisson.hpp"

#include <stdexcept>

namespace glab {

using C = std::complex<double>;

namespace {
// value of sample (idx with axis component shifted to j) without bounds fuss
struct AxisView {
  const std::vector<C>& a;
  std::int64_t base_flat;
  std::int64_t stride;
  int n;
  bool periodic;
  C at(int j) const {
    if (periodic) j = (j % n + n) % n;
    return a[base_flat + stride * j];
  }
};

C d_five(const AxisView& v, int i, double h) {
  const int n = v.n;
  if (v.periodic || (i >= 2 && i <= n - 3)) {
    return (-v.at(i + 2) + 8.0 * v.at(i + 1) - 8.0 * v.at(i - 1) + v.at(i - 2)) / (12.0 * h);
  }
  if (i == 0)
    return (-25.0 * v.at(0) + 48.0 * v.at(1) - 36.0 * v.at(2) + 16.0 * v.at(3) - 3.0 * v.at(4)) /
           (12.0 * h);
  if (i == 1)
    return (-3.0 * v.at(0) - 10.0 * v.at(1) + 18.0 * v.at(2) - 6.0 * v.at(3) + v.at(4)) /
           (12.0 * h);
  if (i == n - 1)
    return (25.0 * v.at(n - 1) - 48.0 * v.at(n - 2) + 36.0 * v.at(n - 3) - 16.0 * v.at(n - 4) +
            3.0 * v.at(n - 5)) /
           (12.0 * h);
  // i == n - 2
  return (3.0 * v.at(n - 1) + 10.0 * v.at(n - 2) - 18.0 * v.at(n - 3) + 6.0 * v.at(n - 4) -
          v.at(n - 5)) /
         (12.0 * h);
}
}  // namespace

Symbol d_axis(const Symbol& f, int axis) {
  const auto& ax = f.dual.axis(axis);
  if (!ax.periodic && ax.grid.n < 5)
    throw std::invalid_argument("d_axis: open axis needs at least 5 samples");
  Symbol out = symbol_zero(f.dual);
  out.cls = FunctionClass::Generic;
  NdIndex ix(f.dual.dims());
  const std::int64_t stride = ix.strides[axis];
  const int n = ix.dims[axis];
  const double h = ax.grid.step;
  for (std::int64_t flat = 0; flat < ix.size(); ++flat) {
    auto idx = ix.unflat(flat);
    const int i = idx[axis];
    AxisView v{f.a, flat - stride * i, stride, n, ax.periodic};
    out.a[flat] = d_five(v, i, h);
  }
  return out;
}

Symbol poisson_bracket(const Symbol& f, const Symbol& g) {
  if (f.dual.dims() != g.dual.dims() || f.dual.family != g.dual.family)
    throw std::invalid_argument("poisson_bracket: mismatched symbols");
  const int nb = f.dual.n_base();
  Symbol out = symbol_zero(f.dual);
  auto accum = [&](int ax_a, int ax_b) {
    // += d_a f d_b g - d_b f d_a g
    Symbol fa = d_axis(f, ax_a), fb = d_axis(f, ax_b);
    Symbol ga = d_axis(g, ax_a), gb = d_axis(g, ax_b);
    for (size_t i = 0; i < out.a.size(); ++i)
      out.a[i] += fa.a[i] * gb.a[i] - fb.a[i] * ga.a[i];
  };
  switch (f.dual.family) {
    case Family::PairGrid:
    case Family::ActionRonR:
      for (int k = 0; k < nb; ++k) accum(k, nb + k);  // (x_k, p_k) canonical
      break;
    case Family::ActionSO2onR2:
      // axes (r, alpha | lambda); {f,g} = d_lambda g d_alpha f - d_lambda f d_alpha g
      if (f.dual.desc.so2_group_only())
        break;  // one-point orbits: the bracket vanishes identically
      accum(1, 2);
      break;
    case Family::GaugeSO2Polar:
      accum(0, 1);  // (r, p_r) canonical, lambda inert
      break;
  }
  return out;
}

std::vector<char> interior_mask(const LieAlgebroidDual& dual, int rings) {
  NdIndex ix(dual.dims());
  std::vector<char> mask(ix.size(), 1);
  for (std::int64_t flat = 0; flat < ix.size(); ++flat) {
    auto idx = ix.unflat(flat);
    for (int k = 0; k < dual.n_axes(); ++k) {
      const auto& ax = dual.axis(k);
      if (ax.periodic || ax.grid.n == 1) continue;
      if (idx[k] < rings || idx[k] >= ax.grid.n - rings) {
        mask[flat] = 0;
        break;
      }
    }
  }
  return mask;
}

double sup_norm_masked(const Symbol& f, const std::vector<char>& mask) {
  double m = 0.0;
  for (size_t i = 0; i < f.a.size(); ++i)
    if (mask[i]) m = std::max(m, std::abs(f.a[i]));
  return m;
}

double sup_diff_masked(const Symbol& f, const Symbol& g, const std::vector<char>& mask) {
  double m = 0.0;
  for (size_t i = 0; i < f.a.size(); ++i)
    if (mask[i]) m = std::max(m, std::abs(f.a[i] - g.a[i]));
  return m;
}

}  // namespace glab

#include "glab/symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace glab {

using C = std::complex<double>;

Symbol symbol_zero(const LieAlgebroidDual& dual) {
  Symbol s;
  s.dual = dual;
  s.a.assign(NdIndex(dual.dims()).size(), C(0.0));
  return s;
}

Symbol sample_symbol(const LieAlgebroidDual& dual, const SymbolFn& fn, FunctionClass cls,
                     bool keep_closed_form) {
  Symbol s = symbol_zero(dual);
  s.cls = cls;
  if (keep_closed_form) s.closed_form = fn;
  NdIndex ix(dual.dims());
  const int nb = dual.n_base(), nf = dual.n_fiber();
  std::vector<double> base(nb), fiber(nf);
  for (std::int64_t flat = 0; flat < ix.size(); ++flat) {
    auto idx = ix.unflat(flat);
    for (int k = 0; k < nb; ++k) base[k] = dual.base[k].grid.point(idx[k]);
    for (int k = 0; k < nf; ++k) fiber[k] = dual.fiber[k].grid.point(idx[nb + k]);
    s.a[flat] = fn(base, fiber);
  }
  return s;
}

Symbol gaussian_symbol(const LieAlgebroidDual& dual, std::vector<double> base_center,
                       double base_width, double fiber_width, double amp) {
  if (int(base_center.size()) != dual.n_base())
    throw std::invalid_argument("gaussian_symbol: center dimension mismatch");
  auto fn = [=](const std::vector<double>& base, const std::vector<double>& fiber) -> C {
    double e = 0.0;
    for (size_t k = 0; k < base.size(); ++k) {
      const double d = base[k] - base_center[k];
      e += d * d / (2.0 * base_width * base_width);
    }
    for (double p : fiber) e += p * p / (2.0 * fiber_width * fiber_width);
    return amp * std::exp(-e);
  };
  return sample_symbol(dual, fn, FunctionClass::Schwartz);
}

static void check_same(const Symbol& f, const Symbol& g, const char* who) {
  if (f.dual.dims() != g.dual.dims())
    throw std::invalid_argument(std::string(who) + ": symbols live on different grids");
}

Symbol sym_add(const Symbol& f, const Symbol& g) {
  check_same(f, g, "sym_add");
  Symbol out = f;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += g.a[i];
  out.cls = (f.cls == g.cls) ? f.cls : FunctionClass::Generic;
  auto ff = f.closed_form, gf = g.closed_form;
  out.closed_form = (ff && gf) ? SymbolFn([ff, gf](const std::vector<double>& b,
                                                   const std::vector<double>& p) {
    return ff(b, p) + gf(b, p);
  })
                               : SymbolFn();
  return out;
}

Symbol sym_sub(const Symbol& f, const Symbol& g) {
  return sym_add(f, sym_scale(-1.0, g));
}

Symbol sym_scale(C c, const Symbol& f) {
  Symbol out = f;
  for (auto& v : out.a) v *= c;
  auto ff = f.closed_form;
  out.closed_form = ff ? SymbolFn([c, ff](const std::vector<double>& b,
                                          const std::vector<double>& p) { return c * ff(b, p); })
                       : SymbolFn();
  return out;
}

Symbol sym_mul(const Symbol& f, const Symbol& g) {
  check_same(f, g, "sym_mul");
  Symbol out = f;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] *= g.a[i];
  out.cls = (f.cls == FunctionClass::Generic || g.cls == FunctionClass::Generic)
                ? FunctionClass::Generic
                : f.cls;
  auto ff = f.closed_form, gf = g.closed_form;
  out.closed_form = (ff && gf) ? SymbolFn([ff, gf](const std::vector<double>& b,
                                                   const std::vector<double>& p) {
    return ff(b, p) * gf(b, p);
  })
                               : SymbolFn();
  return out;
}

Symbol sym_conj(const Symbol& f) {
  Symbol out = f;
  for (auto& v : out.a) v = std::conj(v);
  auto ff = f.closed_form;
  out.closed_form = ff ? SymbolFn([ff](const std::vector<double>& b, const std::vector<double>& p) {
    return std::conj(ff(b, p));
  })
                       : SymbolFn();
  return out;
}

double sup_norm(const Symbol& f) {
  double m = 0.0;
  for (const auto& v : f.a) m = std::max(m, std::abs(v));
  return m;
}

double sup_diff(const Symbol& f, const Symbol& g) {
  check_same(f, g, "sup_diff");
  double m = 0.0;
  for (size_t i = 0; i < f.a.size(); ++i) m = std::max(m, std::abs(f.a[i] - g.a[i]));
  return m;
}

std::complex<double> symbol_integral(const Symbol& f) {
  double w = 1.0;
  for (int k = 0; k < f.dual.n_axes(); ++k) w *= f.dual.axis(k).grid.step;
  C s = 0.0;
  for (const auto& v : f.a) s += v;
  return w * s;
}

namespace {
// weight of sample j of a periodic band-limited interpolant evaluated at c
double trig_weight(const Grid1D& g, int j, double c) {
  const double P = g.extent();
  double u = kTwoPi * (c - g.point(j)) / P;
  u = std::remainder(u, kTwoPi);
  const double s = std::sin(0.5 * u);
  if (std::abs(s) < 1e-13) return 1.0;
  if (g.n % 2 == 0) return std::sin(0.5 * g.n * u) / (g.n * std::tan(0.5 * u));
  return std::sin(0.5 * g.n * u) / (g.n * s);
}

std::vector<C> contract_axis(const std::vector<C>& data, std::vector<int>& dims, int axis,
                             const std::vector<std::vector<double>>& w) {
  const int t = int(w.size()), n = dims[axis];
  std::int64_t outer = 1, inner = 1;
  for (int k = 0; k < axis; ++k) outer *= dims[k];
  for (size_t k = axis + 1; k < dims.size(); ++k) inner *= dims[k];
  std::vector<C> out(outer * t * inner, C(0.0));
  for (std::int64_t o = 0; o < outer; ++o)
    for (int ti = 0; ti < t; ++ti) {
      C* dst = &out[(o * t + ti) * inner];
      for (int j = 0; j < n; ++j) {
        const double wj = w[ti][j];
        if (wj == 0.0) continue;
        const C* srcp = &data[(o * n + j) * inner];
        for (std::int64_t i = 0; i < inner; ++i) dst[i] += wj * srcp[i];
      }
    }
  dims[axis] = t;
  return out;
}
}  // namespace

std::vector<C> eval_tensor(const Symbol& f, const std::vector<std::vector<double>>& targets,
                           bool allow_closed_form) {
  const int na = f.dual.n_axes();
  if (int(targets.size()) != na)
    throw std::invalid_argument("eval_tensor: one target list per axis required");

  if (allow_closed_form && f.closed_form) {
    std::vector<int> tdims;
    for (const auto& t : targets) tdims.push_back(int(t.size()));
    NdIndex ix(tdims);
    std::vector<C> out(ix.size());
    const int nb = f.dual.n_base();
    std::vector<double> base(nb), fiber(na - nb);
    for (std::int64_t flat = 0; flat < ix.size(); ++flat) {
      auto idx = ix.unflat(flat);
      for (int k = 0; k < nb; ++k) base[k] = targets[k][idx[k]];
      for (int k = nb; k < na; ++k) fiber[k - nb] = targets[k][idx[k]];
      out[flat] = f.closed_form(base, fiber);
    }
    return out;
  }

  std::vector<C> data = f.a;
  std::vector<int> dims = f.dual.dims();
  for (int ax = 0; ax < na; ++ax) {
    const Grid1D& g = f.dual.axis(ax).grid;
    std::vector<std::vector<double>> w(targets[ax].size(), std::vector<double>(g.n));
    for (size_t t = 0; t < targets[ax].size(); ++t)
      for (int j = 0; j < g.n; ++j) w[t][j] = trig_weight(g, j, targets[ax][t]);
    data = contract_axis(data, dims, ax, w);
  }
  return data;
}

std::complex<double> symbol_eval(const Symbol& f, const std::vector<double>& base,
                                 const std::vector<double>& fiber) {
  if (int(base.size()) != f.dual.n_base() || int(fiber.size()) != f.dual.n_fiber())
    throw std::invalid_argument("symbol_eval: coordinate split mismatch");
  std::vector<std::vector<double>> targets;
  for (double b : base) targets.push_back({b});
  for (double p : fiber) targets.push_back({p});
  return eval_tensor(f, targets)[0];
}

namespace {
// one fiber axis DFT; sign -1 forward (weight = input step), +1 inverse
// (weight = input step / 2pi)
std::vector<C> axis_dft(const std::vector<C>& data, std::vector<int>& dims, int axis,
                        const Grid1D& in, const Grid1D& out_grid, int sign) {
  std::vector<std::vector<C>> w(out_grid.n, std::vector<C>(in.n));
  const double weight = (sign < 0) ? in.step : in.step / kTwoPi;
  for (int t = 0; t < out_grid.n; ++t)
    for (int j = 0; j < in.n; ++j) {
      const double phase = double(sign) * in.point(j) * out_grid.point(t);
      w[t][j] = weight * C(std::cos(phase), std::sin(phase));
    }
  const int tn = out_grid.n, n = dims[axis];
  std::int64_t outer = 1, inner = 1;
  for (int k = 0; k < axis; ++k) outer *= dims[k];
  for (size_t k = axis + 1; k < dims.size(); ++k) inner *= dims[k];
  std::vector<C> out(outer * tn * inner, C(0.0));
  for (std::int64_t o = 0; o < outer; ++o)
    for (int ti = 0; ti < tn; ++ti) {
      C* dst = &out[(o * tn + ti) * inner];
      for (int j = 0; j < n; ++j) {
        const C wj = w[ti][j];
        const C* srcp = &data[(o * n + j) * inner];
        for (std::int64_t i = 0; i < inner; ++i) dst[i] += wj * srcp[i];
      }
    }
  dims[axis] = tn;
  return out;
}

Grid1D dual_of_fiber_axis(const AxisSpec& ax) {
  // integer mode axes pair with the angle circle; momentum axes with the
  // centered position window
  if (ax.grid.step == 1.0 && ax.grid.lo == -double(ax.grid.n / 2)) return Grid1D::circle(ax.grid.n);
  return Grid1D::nyquist_dual(ax.grid);
}
}  // namespace

Symbol fiberwise_ft(const Symbol& f) {
  Symbol out;
  out.dual = f.dual;
  out.cls = f.cls;
  std::vector<C> data = f.a;
  std::vector<int> dims = f.dual.dims();
  for (int k = 0; k < f.dual.n_fiber(); ++k) {
    const int ax = f.dual.n_base() + k;
    Grid1D dual_grid = dual_of_fiber_axis(f.dual.fiber[k]);
    data = axis_dft(data, dims, ax, f.dual.fiber[k].grid, dual_grid, -1);
    out.dual.fiber[k].grid = dual_grid;
    out.dual.fiber[k].periodic = (dual_grid.lo == 0.0);
    out.dual.fiber[k].name = f.dual.fiber[k].name + "_hat";
  }
  out.a = std::move(data);
  return out;
}

Symbol fiberwise_ft_inverse(const Symbol& F) {
  Symbol out;
  out.dual = F.dual;
  out.cls = F.cls;
  std::vector<C> data = F.a;
  std::vector<int> dims = F.dual.dims();
  for (int k = 0; k < F.dual.n_fiber(); ++k) {
    const int ax = F.dual.n_base() + k;
    const Grid1D& in = F.dual.fiber[k].grid;
    // undo the forward map's grid pairing
    Grid1D back = (in.lo == 0.0 && std::abs(in.extent() - kTwoPi) < 1e-12)
                      ? Grid1D::circle_dual(in.n)
                      : Grid1D::nyquist_dual(in);
    data = axis_dft(data, dims, ax, in, back, +1);
    out.dual.fiber[k].grid = back;
    out.dual.fiber[k].periodic = false;
    auto& nm = out.dual.fiber[k].name;
    if (nm.size() > 4 && nm.substr(nm.size() - 4) == "_hat") nm = nm.substr(0, nm.size() - 4);
  }
  out.a = std::move(data);
  return out;
}

}  // namespace glab

#include "glab/quantize.hpp"

#include <cmath>
#include <stdexcept>

namespace glab {

using C = std::complex<double>;

double CutoffSpec::operator()(double u) const {
  if (!enabled) return 1.0;
  u = std::abs(u);
  if (u <= flat) return 1.0;
  if (u >= zero) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (u - flat) / (zero - flat)));
}

CutoffSpec translation_cutoff_for(const QuantizeOptions& opt, const Grid1D& axis) {
  const double L = axis.extent();
  return {opt.translation_cutoff, opt.translation_flat * L, opt.translation_zero * L};
}

namespace {
// DFT mode set, symmetrized: for even n the unpaired Nyquist mode is kept as
// two half-weighted copies at -n/2 and +n/2 (the same DFT column (-1)^delta),
// so conjugation-symmetric symbol data quantizes to self-adjoint matrices AND
// the constant symbol quantizes to the exact identity. Dropping the edge mode
// instead leaves a rank-one residue of norm O(1) whenever the scaled window
// under-resolves the fiber content.
struct ModeSet {
  std::vector<int> m;
  std::vector<double> w;
  int size() const { return int(m.size()); }
};

ModeSet dft_modes(int n) {
  ModeSet s;
  if (n % 2 == 0) {
    for (int k = -n / 2; k <= n / 2; ++k) {
      s.m.push_back(k);
      s.w.push_back(std::abs(2 * k) == n ? 0.5 : 1.0);
    }
  } else {
    for (int k = -(n - 1) / 2; k <= (n - 1) / 2; ++k) {
      s.m.push_back(k);
      s.w.push_back(1.0);
    }
  }
  return s;
}

std::vector<double> half_grid(const Grid1D& g) {
  std::vector<double> t(2 * g.n - 1);
  for (int s = 0; s < 2 * g.n - 1; ++s) t[s] = g.lo + 0.5 * g.step * s;
  return t;
}

std::vector<double> scaled_modes(double hbar, double dp, const ModeSet& modes) {
  std::vector<double> t(modes.m.size());
  for (size_t k = 0; k < modes.m.size(); ++k) t[k] = hbar * dp * modes.m[k];
  return t;
}

// twiddle[mi][delta + N - 1] = w_mi * exp(2 pi i m_mi delta / N)
std::vector<std::vector<C>> twiddles(int N, const ModeSet& modes) {
  std::vector<std::vector<C>> tw(modes.m.size(), std::vector<C>(2 * N - 1));
  for (size_t mi = 0; mi < modes.m.size(); ++mi)
    for (int d = -(N - 1); d <= N - 1; ++d) {
      const double ph = kTwoPi * modes.m[mi] * d / N;
      tw[mi][d + N - 1] = modes.w[mi] * C(std::cos(ph), std::sin(ph));
    }
  return tw;
}

// M[i,j] = cut((i-j)h) / N * sum_m w_m F[(i+j)*nm + m] exp(2 pi i m (i-j)/N);
// F is indexed by (midpoint halfstep, mode). The displacement taper removes
// the mode sum's periodic images, which otherwise fill the far corners with
// short-displacement kernel values read at chord midpoints.
Eigen::MatrixXcd kernel_line(const C* F, int N, const ModeSet& modes, double h,
                             const CutoffSpec& cut) {
  const auto tw = twiddles(N, modes);
  const int nm = modes.size();
  Eigen::MatrixXcd M(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double c = cut((i - j) * h);
      C acc = 0.0;
      if (c != 0.0) {
        const C* row = F + std::int64_t(i + j) * nm;
        for (int mi = 0; mi < nm; ++mi) acc += row[mi] * tw[mi][i - j + N - 1];
        acc *= c / double(N);
      }
      M(i, j) = acc;
    }
  return M;
}

KernelOperator quantize_pair_1d(const Symbol& f, double hbar, const QuantizeOptions& opt) {
  const Grid1D& x = f.dual.base[0].grid;
  const auto modes = dft_modes(x.n);
  const double dp = f.dual.fiber[0].grid.step;
  auto F = eval_tensor(f, {half_grid(x), scaled_modes(hbar, dp, modes)}, opt.use_closed_form);
  KernelOperator k;
  k.blocks.push_back(
      {kernel_line(F.data(), x.n, modes, x.step, translation_cutoff_for(opt, x)), 1, "grid"});
  return k;
}

KernelOperator quantize_pair_2d(const Symbol& f, double hbar, const QuantizeOptions& opt) {
  const Grid1D &x1 = f.dual.base[0].grid, &x2 = f.dual.base[1].grid;
  const int N1 = x1.n, N2 = x2.n;
  const auto m1 = dft_modes(N1), m2 = dft_modes(N2);
  const int nm1 = m1.size(), nm2 = m2.size();
  const double dp1 = f.dual.fiber[0].grid.step, dp2 = f.dual.fiber[1].grid.step;
  auto F = eval_tensor(f,
                       {half_grid(x1), half_grid(x2), scaled_modes(hbar, dp1, m1),
                        scaled_modes(hbar, dp2, m2)},
                       opt.use_closed_form);
  // two partial mode sums: first axis 2 modes -> displacements, then axis 1
  const auto tw1 = twiddles(N1, m1), tw2 = twiddles(N2, m2);
  const int S1 = 2 * N1 - 1, S2 = 2 * N2 - 1, D1 = 2 * N1 - 1, D2 = 2 * N2 - 1;
  std::vector<C> G(std::int64_t(S1) * S2 * nm1 * D2, C(0.0));
  for (std::int64_t s = 0; s < std::int64_t(S1) * S2; ++s)
    for (int a = 0; a < nm1; ++a) {
      const C* src = &F[(s * nm1 + a) * nm2];
      C* dst = &G[(s * nm1 + a) * D2];
      for (int b = 0; b < nm2; ++b) {
        const C v = src[b];
        for (int d2 = 0; d2 < D2; ++d2) dst[d2] += v * tw2[b][d2];
      }
    }
  std::vector<C> H(std::int64_t(S1) * S2 * D1 * D2, C(0.0));
  for (std::int64_t s = 0; s < std::int64_t(S1) * S2; ++s)
    for (int a = 0; a < nm1; ++a)
      for (int d1 = 0; d1 < D1; ++d1) {
        const C w = tw1[a][d1];
        const C* src = &G[(s * nm1 + a) * D2];
        C* dst = &H[(s * D1 + d1) * D2];
        for (int d2 = 0; d2 < D2; ++d2) dst[d2] += w * src[d2];
      }
  const CutoffSpec cut1 = translation_cutoff_for(opt, x1), cut2 = translation_cutoff_for(opt, x2);
  std::vector<double> c1(D1), c2(D2);
  for (int d = 0; d < D1; ++d) c1[d] = cut1((d - (N1 - 1)) * x1.step);
  for (int d = 0; d < D2; ++d) c2[d] = cut2((d - (N2 - 1)) * x2.step);
  Eigen::MatrixXcd M(N1 * N2, N1 * N2);
  const double scale = 1.0 / (double(N1) * N2);
  for (int i1 = 0; i1 < N1; ++i1)
    for (int i2 = 0; i2 < N2; ++i2)
      for (int j1 = 0; j1 < N1; ++j1)
        for (int j2 = 0; j2 < N2; ++j2) {
          const std::int64_t s = std::int64_t(i1 + j1) * S2 + (i2 + j2);
          M(i1 * N2 + i2, j1 * N2 + j2) =
              scale * c1[i1 - j1 + N1 - 1] * c2[i2 - j2 + N2 - 1] *
              H[(s * D1 + (i1 - j1 + N1 - 1)) * D2 + (i2 - j2 + N2 - 1)];
        }
  KernelOperator k;
  k.blocks.push_back({std::move(M), 1, "grid"});
  return k;
}

KernelOperator quantize_so2_group(const Symbol& f, double hbar, const QuantizeOptions& opt) {
  const Grid1D& lam = f.dual.fiber[0].grid;  // integer modes -n/2 .. n/2-1
  const int n = lam.n;
  // one extra target at +n/2: the edge mode slot takes the symmetrized value
  // (f(-edge)+f(+edge))/2, matching the half-weighted Nyquist convention
  std::vector<double> targets(n + 1);
  for (int i = 0; i <= n; ++i) targets[i] = hbar * (lam.lo + i);
  auto F = eval_tensor(f, {{f.dual.base[0].grid.point(0)}, {f.dual.base[1].grid.point(0)}, targets},
                       opt.use_closed_form);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int m = int(std::lround(lam.point(i)));
    M(i, i) = (2 * m == -n) ? 0.5 * (F[i] + F[n]) : F[i];
  }
  KernelOperator k;
  k.blocks.push_back({std::move(M), 1, "modes"});
  return k;
}

KernelOperator quantize_so2_rings(const Symbol& f, double hbar, const QuantizeOptions& opt) {
  const Grid1D& radii = f.dual.base[0].grid;
  const int n = f.dual.desc.n_angles;
  const auto modes = dft_modes(n);
  const int nm = modes.size();
  std::vector<double> half_ang(2 * n);
  for (int t = 0; t < 2 * n; ++t) half_ang[t] = kPi * t / n;
  std::vector<double> rpts(radii.n);
  for (int i = 0; i < radii.n; ++i) rpts[i] = radii.point(i);
  auto F = eval_tensor(f, {rpts, half_ang, scaled_modes(hbar, 1.0, modes)}, opt.use_closed_form);

  const auto tw = twiddles(n, modes);
  KernelOperator k;
  for (int r = 0; r < radii.n; ++r) {
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int dw = i - j;
        if (dw > n / 2) dw -= n;
        if (dw <= -n / 2) dw += n;
        const double xi = dw * kTwoPi / n;
        const double cut = opt.angular_cutoff(xi);
        C acc = 0.0;
        if (cut != 0.0) {
          const int t = ((2 * j + dw) % (2 * n) + 2 * n) % (2 * n);
          const C* row = &F[(std::int64_t(r) * 2 * n + t) * nm];
          for (int mi = 0; mi < nm; ++mi) acc += row[mi] * tw[mi][dw + n - 1];
          acc *= cut / double(n);
        }
        M(i, j) = acc;
      }
    k.blocks.push_back({std::move(M), 1, "ring" + std::to_string(r)});
  }
  return k;
}

KernelOperator quantize_gauge(const Symbol& f, double hbar, const QuantizeOptions& opt) {
  const Grid1D& radii = f.dual.base[0].grid;
  const Grid1D& lam = f.dual.fiber[1].grid;
  const int Nr = radii.n, n = lam.n;
  const auto rmodes = dft_modes(Nr);
  const int nrm = rmodes.size();
  const double dpr = f.dual.fiber[0].grid.step;
  // one extra lambda target at +n/2 for the symmetrized edge-mode block
  std::vector<double> lam_targets(n + 1);
  for (int i = 0; i <= n; ++i) lam_targets[i] = hbar * (lam.lo + i);
  auto F = eval_tensor(f, {half_grid(radii), scaled_modes(hbar, dpr, rmodes), lam_targets},
                       opt.use_closed_form);
  const int nlam = n + 1;
  KernelOperator k;
  for (int mi = 0; mi < n; ++mi) {
    const int m = int(std::lround(lam.point(mi)));
    const bool edge = 2 * m == -n;
    // radial line kernel with the lambda slot frozen at hbar * m
    std::vector<C> slice(std::int64_t(2 * Nr - 1) * nrm);
    for (int s = 0; s < 2 * Nr - 1; ++s)
      for (int a = 0; a < nrm; ++a) {
        const std::int64_t row = (std::int64_t(s) * nrm + a) * nlam;
        slice[std::int64_t(s) * nrm + a] = edge ? 0.5 * (F[row + mi] + F[row + n]) : F[row + mi];
      }
    k.blocks.push_back({kernel_line(slice.data(), Nr, rmodes, radii.step,
                                    translation_cutoff_for(opt, radii)),
                        1, "mode" + std::to_string(m)});
  }
  return k;
}
}  // namespace

KernelOperator quantize(const Symbol& f, double hbar, const QuantizeOptions& opt) {
  if (!(hbar > 0)) throw std::invalid_argument("quantize: hbar must be positive");
  switch (f.dual.family) {
    case Family::PairGrid:
      return f.dual.n_base() == 1 ? quantize_pair_1d(f, hbar, opt)
                                  : quantize_pair_2d(f, hbar, opt);
    case Family::ActionRonR:
      return quantize_pair_1d(f, hbar, opt);
    case Family::ActionSO2onR2:
      return f.dual.desc.so2_group_only() ? quantize_so2_group(f, hbar, opt)
                                          : quantize_so2_rings(f, hbar, opt);
    case Family::GaugeSO2Polar:
      return quantize_gauge(f, hbar, opt);
  }
  throw std::logic_error("quantize: bad enum");
}

std::complex<double> trace_reference(const Symbol& f, double hbar) {
  const C I = symbol_integral(f);
  switch (f.dual.family) {
    case Family::PairGrid:
      return I / std::pow(kTwoPi * hbar, f.dual.n_base());
    case Family::ActionRonR:
      return I / (kTwoPi * hbar);
    case Family::ActionSO2onR2:
      // per-ring traces add; the angle integral carries the 2 pi
      return I / (kTwoPi * hbar * f.dual.base[0].grid.step);
    case Family::GaugeSO2Polar:
      return I / (kTwoPi * hbar * hbar);
  }
  throw std::logic_error("trace_reference: bad enum");
}

ResolvableRange resolvable_window(const LieAlgebroidDual& dual, double support_radius,
                                  double feature_scale) {
  ResolvableRange r;
  r.lo = 0.0;
  r.hi = 1e300;
  for (const auto& ax : dual.fiber) {
    const double edge = std::max(std::abs(ax.grid.lo), std::abs(ax.grid.hi()));
    const double dp = ax.grid.step;
    r.lo = std::max(r.lo, support_radius / edge);
    r.hi = std::min(r.hi, feature_scale / (4.0 * dp));
  }
  return r;
}

}  // namespace glab

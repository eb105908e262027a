#include "glab/roundtrip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "glab/bundle.hpp"

namespace glab {

namespace {

using C = std::complex<double>;

// smallest resolvable hbar for a covector slot: one phase turn per sample
double axis_step(const RoundtripInstance& ri, size_t cov_slot) {
  if (ri.mod.family == ModuleFamily::PairTrivial) return ri.mod.left.axes[0].step;
  return cov_slot == 0 ? ri.mod.left.radii.step : kTwoPi / ri.mod.left.n_angles;
}

// one-axis taper: cos^2(pi u / 2w) inside |u| < w, zero outside
double taper1(double u, double w) {
  const double t = std::abs(u) / w;
  if (t >= 1.0) return 0.0;
  const double c = std::cos(0.5 * kPi * t);
  return c * c;
}

// split a dual-valued point into the (base, fiber) layout a sampled symbol
// wants, padding single-point base axes (the rotation dual keeps its point
// base and base ring as explicit one-sample axes)
void split_for_eval(const LieAlgebroidDual& dual, const std::vector<double>& coords,
                    int n_base_coords, std::vector<double>& base, std::vector<double>& fiber) {
  base.clear();
  fiber.clear();
  size_t next = 0;
  for (const auto& ax : dual.base) {
    if (ax.grid.n == 1) {
      base.push_back(ax.grid.lo);
    } else {
      if (int(next) >= n_base_coords)
        throw std::invalid_argument("symbol evaluation: base coordinate count mismatch");
      base.push_back(coords[next++]);
    }
  }
  if (int(next) != n_base_coords)
    throw std::invalid_argument("symbol evaluation: base coordinate count mismatch");
  for (; next < coords.size(); ++next) fiber.push_back(coords[next]);
  if (fiber.size() != dual.fiber.size())
    throw std::invalid_argument("symbol evaluation: fiber coordinate count mismatch");
}

C eval_on_dual(const Symbol& s, const std::vector<double>& coords, int n_base_coords,
               int* outside) {
  std::vector<double> base, fiber;
  split_for_eval(s.dual, coords, n_base_coords, base, fiber);
  if (outside) {
    bool out = false;
    size_t k = 0;
    for (const auto& ax : s.dual.base) {
      if (ax.grid.n > 1 && !ax.periodic && !ax.grid.contains(base[k])) out = true;
      ++k;
    }
    for (size_t j = 0; j < fiber.size(); ++j)
      if (!s.dual.fiber[j].periodic && !s.dual.fiber[j].grid.contains(fiber[j])) out = true;
    if (out) ++*outside;
  }
  return symbol_eval(s, base, fiber);
}

KernelOperator h_quantize(const RoundtripInstance& ri, const HSymbol& g, double hbar,
                          const QuantizeOptions& opt) {
  if (g.constant) return k_scale(g.c, right_unit(ri.mod));
  if (!ri.h_dual)
    throw std::invalid_argument("right symbol: the point partner only carries constants");
  return quantize(g.sym, hbar, opt);
}

C h_eval(const MomentumPair& mp, const HSymbol& g, const std::vector<double>& jh, int* outside) {
  if (g.constant) return g.c;
  return eval_on_dual(g.sym, jh, mp.h_base_dim, outside);
}

std::vector<std::vector<double>> tile_lattice(const std::vector<TileAxis>& axes) {
  std::vector<std::vector<double>> out{{}};
  for (const auto& ax : axes) {
    auto cs = tile_centers(ax);
    std::vector<std::vector<double>> next;
    next.reserve(out.size() * cs.size());
    for (const auto& head : out)
      for (double c : cs) {
        auto row = head;
        row.push_back(c);
        next.push_back(std::move(row));
      }
    out = std::move(next);
  }
  return out;
}

Symbol g_tile_symbol(const RoundtripInstance& ri, const std::vector<double>& center,
                     const std::vector<TileAxis>& axes) {
  std::vector<double> hw;
  for (const auto& ax : axes) hw.push_back(ax.width);
  return taper_bump_symbol(ri.g_dual, center, hw);
}

HSymbol h_tile_symbol(const RoundtripInstance& ri, const std::vector<double>& center,
                      const std::vector<TileAxis>& axes) {
  if (axes.empty()) return h_constant(1.0);
  if (!ri.h_dual)
    throw std::invalid_argument("reconstruct_relation: the point partner takes no right tiling");
  // rotation dual layout: two one-sample base axes, then the mode axis
  std::vector<double> c{0.0, 0.0};
  std::vector<double> hw{1.0, 1.0};
  c.push_back(center[0]);
  hw.push_back(axes[0].width);
  return h_symbol(taper_bump_symbol(*ri.h_dual, c, hw));
}

struct FitWindow {
  std::vector<double> hs, ds;
  double lo = 0.0, hi = 0.0;
};

// samples between the probe floor and one decade above it; widened to the
// three smallest resolvable samples when the window is thinner than a fit
FitWindow membership_fit_window(const std::vector<double>& hbars, const std::vector<double>& d,
                                double floor_hbar) {
  FitWindow w;
  double smallest = std::numeric_limits<double>::infinity();
  for (double h : hbars)
    if (h >= floor_hbar) smallest = std::min(smallest, h);
  if (!std::isfinite(smallest))
    throw std::invalid_argument("kernel membership: every sample sits under the probe floor");
  const double base = std::max(floor_hbar, smallest);
  for (size_t i = 0; i < hbars.size(); ++i)
    if (hbars[i] >= base - 1e-15 && hbars[i] <= 10.0 * base * (1 + 1e-12)) {
      w.hs.push_back(hbars[i]);
      w.ds.push_back(d[i]);
    }
  if (w.hs.size() < 3) {
    std::vector<std::pair<double, double>> all;
    for (size_t i = 0; i < hbars.size(); ++i)
      if (hbars[i] >= base - 1e-15) all.emplace_back(hbars[i], d[i]);
    std::sort(all.begin(), all.end());
    w.hs.clear();
    w.ds.clear();
    for (size_t i = 0; i < all.size() && i < 3; ++i) {
      w.hs.push_back(all[i].first);
      w.ds.push_back(all[i].second);
    }
  }
  if (w.hs.size() < 3)
    throw std::invalid_argument("kernel membership: need at least 3 resolvable hbar samples");
  w.lo = *std::min_element(w.hs.begin(), w.hs.end());
  w.hi = *std::max_element(w.hs.begin(), w.hs.end());
  return w;
}

DefectProfile finish_profile(const std::vector<double>& hbars, const std::vector<double>& d,
                             double floor_hbar, double sup_f, double sup_g,
                             double threshold_rel) {
  DefectProfile p;
  p.hbars = hbars;
  p.d = d;
  const auto w = membership_fit_window(hbars, d, floor_hbar);
  const LineFit fit = fit_line(w.hs, w.ds);
  p.limit = fit.intercept;
  p.slope = fit.slope;
  p.fit_lo = w.lo;
  p.fit_hi = w.hi;
  p.n_fit = int(w.hs.size());
  p.threshold = threshold_rel * sup_f * sup_g;
  p.in_kernel = p.limit < p.threshold;
  return p;
}

double one_sided_hausdorff(const std::vector<std::vector<double>>& from,
                           const std::vector<std::vector<double>>& to) {
  if (from.empty()) return 0.0;
  if (to.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : to) {
      double dd = 0.0;
      for (size_t k = 0; k < a.size(); ++k) dd = std::max(dd, std::abs(a[k] - b[k]));
      best = std::min(best, dd);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

// scale each coordinate by its tile width so distances read in tile units
std::vector<std::vector<double>> tile_units(const std::vector<std::vector<double>>& pts,
                                            const std::vector<double>& widths) {
  auto out = pts;
  for (auto& p : out)
    for (size_t k = 0; k < p.size(); ++k) p[k] /= widths[k];
  return out;
}

}  // namespace

RoundtripInstance pair_trivial_instance(const SmoothGroupoidDescriptor& pair_desc) {
  RoundtripInstance ri;
  ri.mod = pair_trivial_module(pair_desc);
  ri.mp = momentum_maps(pair_desc);
  ri.g_dual = algebroid_dual(pair_desc);
  return ri;
}

RoundtripInstance gauge_so2_instance(const SmoothGroupoidDescriptor& gauge_desc) {
  RoundtripInstance ri;
  ri.mod = gauge_so2_module(gauge_desc);
  const auto h = make_so2_group(gauge_desc.n_angles);
  ri.mp = momentum_maps(gauge_desc, h);
  ri.g_dual = algebroid_dual(gauge_desc);
  ri.h_dual = algebroid_dual(h);
  return ri;
}

HSymbol h_constant(std::complex<double> c) {
  HSymbol g;
  g.constant = true;
  g.c = c;
  return g;
}

HSymbol h_symbol(Symbol s) {
  HSymbol g;
  g.constant = false;
  g.sym = std::move(s);
  return g;
}

double h_sup_norm(const HSymbol& g) { return g.constant ? std::abs(g.c) : sup_norm(g.sym); }

Symbol taper_bump_symbol(const LieAlgebroidDual& dual, const std::vector<double>& center,
                         const std::vector<double>& halfwidths) {
  const size_t n = dual.base.size() + dual.fiber.size();
  if (center.size() != n || halfwidths.size() != n)
    throw std::invalid_argument("taper_bump_symbol: one center and halfwidth per axis");
  for (double w : halfwidths)
    if (!(w > 0)) throw std::invalid_argument("taper_bump_symbol: halfwidths must be positive");
  std::vector<bool> periodic;
  std::vector<double> period;
  for (size_t k = 0; k < n; ++k) {
    const AxisSpec& ax = k < dual.base.size() ? dual.base[k] : dual.fiber[k - dual.base.size()];
    periodic.push_back(ax.periodic);
    period.push_back(ax.grid.extent());
  }
  auto fn = [center, halfwidths, periodic, period, nb = dual.base.size()](
                const std::vector<double>& base, const std::vector<double>& fiber) -> C {
    double v = 1.0;
    for (size_t k = 0; k < center.size(); ++k) {
      const double x = k < nb ? base[k] : fiber[k - nb];
      double u = x - center[k];
      if (periodic[k] && period[k] > 0) u = std::remainder(u, period[k]);
      v *= taper1(u, halfwidths[k]);
      if (v == 0.0) break;
    }
    return C(v, 0.0);
  };
  return sample_symbol(dual, fn, FunctionClass::Schwartz, true);
}

Beta0Samples beta0(const MomentumPair& mp, const Symbol& f, const HSymbol& g,
                   const PhaseBox& box) {
  if (int(box.q_axes.size()) != mp.m_dim || int(box.p_axes.size()) != mp.m_dim)
    throw std::invalid_argument("beta0: box dims do not match the base");
  for (const auto& ax : box.q_axes)
    if (ax.n < 1) throw std::invalid_argument("beta0: empty sampling box");
  for (const auto& ax : box.p_axes)
    if (ax.n < 1) throw std::invalid_argument("beta0: empty sampling box");
  Beta0Samples out;
  const int m = mp.m_dim;
  std::vector<int> dims;
  for (const auto& ax : box.q_axes) dims.push_back(ax.n);
  for (const auto& ax : box.p_axes) dims.push_back(ax.n);
  std::vector<int> idx(dims.size(), 0);
  std::vector<double> q(m), p(m);
  while (true) {
    for (int k = 0; k < m; ++k) q[k] = box.q_axes[k].point(idx[k]);
    for (int k = 0; k < m; ++k) p[k] = box.p_axes[k].point(idx[m + k]);
    const C fv = eval_on_dual(f, j_g(mp, q, p), mp.g_base_dim, &out.n_outside);
    const C gv = h_eval(mp, g, j_h(mp, q, p), &out.n_outside);
    const C b = fv * gv;
    out.values.push_back(b);
    out.sup_abs = std::max(out.sup_abs, std::abs(b));
    int k = int(dims.size()) - 1;
    while (k >= 0 && ++idx[k] == dims[k]) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

Eigen::VectorXcd probe_vector(const GridBimodule& m, const ProbeSpec& p, double hbar) {
  std::vector<double> w(p.width_scales.size());
  for (size_t k = 0; k < w.size(); ++k) w[k] = p.width_scales[k] * std::sqrt(hbar);
  return coherent_vector(m, p.base, p.cov, w, hbar);
}

double probe_floor(const RoundtripInstance& ri, const std::vector<ProbeSpec>& probes) {
  double floor_hbar = 0.0;
  for (const auto& p : probes)
    for (size_t k = 0; k < p.cov.size(); ++k)
      floor_hbar = std::max(floor_hbar, std::abs(p.cov[k]) * axis_step(ri, k) / kPi);
  return floor_hbar;
}

DefectProfile kernel_membership_quantum(const RoundtripInstance& ri, const Symbol& f,
                                        const HSymbol& g, const HbarGrid& grid,
                                        const MembershipOptions& opt) {
  if (opt.probes.empty())
    throw std::invalid_argument("kernel_membership_quantum: probe battery is empty");
  if (grid.values.empty())
    throw std::invalid_argument("kernel_membership_quantum: empty hbar grid");
  std::vector<double> d;
  d.reserve(grid.values.size());
  for (double h : grid.values) {
    const KernelOperator A = quantize(f, h, opt.qopt);
    const KernelOperator B = h_quantize(ri, g, h, opt.qopt);
    double worst = 0.0;
    for (const auto& ps : opt.probes) {
      const Eigen::VectorXcd phi = probe_vector(ri.mod, ps, h);
      const double np = module_norm(ri.mod, phi);
      if (!(np > 0)) continue;
      const Eigen::VectorXcd v = right_apply(ri.mod, left_apply(ri.mod, A, phi), B);
      worst = std::max(worst, module_norm(ri.mod, v) / np);
    }
    d.push_back(worst);
  }
  return finish_profile(grid.values, d, probe_floor(ri, opt.probes), sup_norm(f), h_sup_norm(g),
                        opt.threshold_rel);
}

std::vector<double> tile_centers(const TileAxis& ax) {
  if (!(ax.width > 0) || ax.hi < ax.lo - 1e-12)
    throw std::invalid_argument("tile_centers: want width > 0 and hi >= lo");
  std::vector<double> cs;
  for (double c = ax.lo; c <= ax.hi + 1e-9 * ax.width; c += ax.width) cs.push_back(c);
  return cs;
}

RoundtripConfig default_pair_roundtrip_config(const RoundtripInstance& ri) {
  if (ri.mod.family != ModuleFamily::PairTrivial)
    throw std::invalid_argument("default_pair_roundtrip_config: wrong instance family");
  RoundtripConfig cfg;
  cfg.g_axes = {{-6.0, 6.0, 3.0}, {0.0, 2.0, 0.5}};
  cfg.grid = hbar_log_grid(0.01, 1.0, 14);
  cfg.classical_box.q_axes = {Grid1D{-6.0, 0.5, 25}};
  cfg.classical_box.p_axes = {Grid1D{0.0, 0.125, 17}};
  cfg.classical_tol = 0.25;
  for (double q0 = -6.0; q0 <= 6.01; q0 += 3.0)
    for (double p0 = 0.0; p0 <= 2.01; p0 += 0.5) cfg.probes.push_back({{q0}, {p0}, {1.5}});
  return cfg;
}

RoundtripConfig default_gauge_roundtrip_config(const RoundtripInstance& ri) {
  if (ri.mod.family != ModuleFamily::GaugeSO2)
    throw std::invalid_argument("default_gauge_roundtrip_config: wrong instance family");
  RoundtripConfig cfg;
  cfg.g_axes = {{2.5, 4.5, 1.0}, {-1.0, 1.0, 1.0}, {0.0, 4.0, 1.0}};
  cfg.h_axes = {{0.0, 4.0, 1.0}};
  cfg.grid = hbar_log_grid(0.01, 1.0, 14);
  // box image must cover the tiled window: radii [2,5], radial momenta
  // [-1.5,1.5], angular momenta [-.5,4.5]
  cfg.classical_box.q_axes = {Grid1D{1.1, 0.35, 9}, Grid1D{1.1, 0.35, 9}};
  cfg.classical_box.p_axes = {Grid1D{-1.8, 0.45, 9}, Grid1D{-1.8, 0.45, 9}};
  cfg.classical_tol = 0.5;
  for (double r0 = 2.5; r0 <= 4.51; r0 += 1.0)
    for (double pr0 = -1.0; pr0 <= 1.01; pr0 += 1.0)
      for (double l0 = 0.0; l0 <= 4.01; l0 += 0.5)
        cfg.probes.push_back({{r0, 0.0}, {pr0, l0}, {0.8, 0.8}});
  return cfg;
}

KernelZeroSet reconstruct_relation(const RoundtripInstance& ri, const RoundtripConfig& cfg) {
  if (cfg.g_axes.empty())
    throw std::invalid_argument("reconstruct_relation: left tiling is empty");
  if (cfg.probes.empty())
    throw std::invalid_argument("reconstruct_relation: probe battery is empty");
  std::vector<ProbeSpec> probes;
  for (size_t i = 0; i < cfg.probes.size(); i += std::max(1, cfg.probe_stride))
    probes.push_back(cfg.probes[i]);

  const auto g_centers = tile_lattice(cfg.g_axes);
  const auto h_centers = tile_lattice(cfg.h_axes);

  std::vector<Symbol> g_syms;
  g_syms.reserve(g_centers.size());
  for (const auto& gc : g_centers) g_syms.push_back(g_tile_symbol(ri, gc, cfg.g_axes));
  std::vector<HSymbol> h_syms;
  h_syms.reserve(h_centers.size());
  for (const auto& hc : h_centers) h_syms.push_back(h_tile_symbol(ri, hc, cfg.h_axes));

  const size_t ng = g_centers.size(), nh = h_centers.size(), nhb = cfg.grid.values.size();
  std::vector<double> g_sups(ng), h_sups(nh);
  for (size_t gi = 0; gi < ng; ++gi) g_sups[gi] = sup_norm(g_syms[gi]);
  for (size_t hi = 0; hi < nh; ++hi) h_sups[hi] = h_sup_norm(h_syms[hi]);

  // defect cube d[gi][hi][ib], filled hbar-major so each tile quantizes once
  std::vector<double> cube(ng * nh * nhb, 0.0);
  for (size_t ib = 0; ib < nhb; ++ib) {
    const double h = cfg.grid.values[ib];
    std::vector<KernelOperator> right_ops;
    right_ops.reserve(nh);
    for (size_t hi = 0; hi < nh; ++hi)
      right_ops.push_back(h_quantize(ri, h_syms[hi], h, cfg.qopt));
    std::vector<Eigen::VectorXcd> phis;
    std::vector<double> phin;
    for (const auto& ps : probes) {
      phis.push_back(probe_vector(ri.mod, ps, h));
      phin.push_back(module_norm(ri.mod, phis.back()));
    }
    for (size_t gi = 0; gi < ng; ++gi) {
      const KernelOperator A = quantize(g_syms[gi], h, cfg.qopt);
      for (size_t pi = 0; pi < phis.size(); ++pi) {
        if (!(phin[pi] > 0)) continue;
        const Eigen::VectorXcd psi = left_apply(ri.mod, A, phis[pi]);
        for (size_t hi = 0; hi < nh; ++hi) {
          const double dv =
              module_norm(ri.mod, right_apply(ri.mod, psi, right_ops[hi])) / phin[pi];
          double& slot = cube[(gi * nh + hi) * nhb + ib];
          slot = std::max(slot, dv);
        }
      }
    }
  }

  KernelZeroSet ks;
  ks.n_pairs = int(ng * nh);
  for (const auto& ax : cfg.g_axes) ks.g_widths.push_back(ax.width);
  for (const auto& ax : cfg.h_axes) ks.h_widths.push_back(ax.width);
  ks.relation.a_dim = int(cfg.g_axes.size());
  ks.relation.b_dim = int(cfg.h_axes.size());
  // survivors form a lattice with one-width spacing; half that keeps them all
  double tol = cfg.g_axes[0].width / 2.0;
  for (const auto& ax : cfg.g_axes) tol = std::min(tol, ax.width / 2.0);
  for (const auto& ax : cfg.h_axes) tol = std::min(tol, ax.width / 2.0);
  ks.relation.tolerance = tol;

  const double floor_hbar = probe_floor(ri, probes);
  std::vector<double> dh(nhb);
  for (size_t gi = 0; gi < ng; ++gi)
    for (size_t hi = 0; hi < nh; ++hi) {
      for (size_t ib = 0; ib < nhb; ++ib) dh[ib] = cube[(gi * nh + hi) * nhb + ib];
      const auto prof = finish_profile(cfg.grid.values, dh, floor_hbar, g_sups[gi], h_sups[hi],
                                       cfg.threshold_rel);
      ks.fit_lo = prof.fit_lo;
      ks.fit_hi = prof.fit_hi;
      TilePairVerdict v;
      v.g_center = g_centers[gi];
      v.h_center = h_centers[hi];
      v.limit = prof.limit;
      v.in_kernel = prof.in_kernel;
      if (!v.in_kernel) {
        auto pt = g_centers[gi];
        pt.insert(pt.end(), h_centers[hi].begin(), h_centers[hi].end());
        ks.relation.points.push_back(std::move(pt));
        ++ks.n_survivors;
      }
      ks.verdicts.push_back(std::move(v));
    }
  ks.relation.degenerate = ks.relation.points.empty();
  return ks;
}

RoundtripReport roundtrip_report(const RoundtripInstance& ri, const RoundtripConfig& cfg) {
  RoundtripReport rep;
  rep.sign_fault_injected = cfg.inject_sign_fault;
  rep.stage = "tiles";
  rep.kernel_set = reconstruct_relation(ri, cfg);
  rep.n_pairs = rep.kernel_set.n_pairs;
  rep.n_survivors = rep.kernel_set.n_survivors;

  rep.stage = "classical";
  rep.classical = lagrangian_relation(ri.mp, cfg.classical_box, cfg.classical_tol);
  if (cfg.inject_sign_fault) {
    // corrupted momentum map: the right leg comes out with the wrong sign
    const int a = rep.classical.a_dim;
    for (auto& pt : rep.classical.points) {
      if (rep.classical.b_dim > 0)
        for (int k = a; k < a + rep.classical.b_dim; ++k) pt[k] = -pt[k];
      else
        pt[a - 1] = -pt[a - 1];
    }
  }
  {  // keep only the classical points the tiling can speak for
    std::vector<double> lo, hi;
    for (const auto& ax : cfg.g_axes) {
      lo.push_back(ax.lo - 0.5 * ax.width);
      hi.push_back(ax.hi + 0.5 * ax.width);
    }
    for (const auto& ax : cfg.h_axes) {
      lo.push_back(ax.lo - 0.5 * ax.width);
      hi.push_back(ax.hi + 0.5 * ax.width);
    }
    std::vector<std::vector<double>> kept;
    for (const auto& pt : rep.classical.points) {
      bool in = true;
      for (size_t k = 0; k < pt.size() && in; ++k) in = pt[k] >= lo[k] && pt[k] <= hi[k];
      if (in) kept.push_back(pt);
    }
    rep.classical.points = std::move(kept);
    rep.classical.degenerate = rep.classical.points.empty();
  }
  rep.n_classical = int(rep.classical.points.size());

  rep.stage = "compare";
  {
    std::vector<double> widths = rep.kernel_set.g_widths;
    widths.insert(widths.end(), rep.kernel_set.h_widths.begin(), rep.kernel_set.h_widths.end());
    const auto qpts = tile_units(rep.kernel_set.relation.points, widths);
    const auto cpts = tile_units(rep.classical.points, widths);
    rep.hausdorff_fwd = one_sided_hausdorff(qpts, cpts);
    rep.hausdorff_rev = one_sided_hausdorff(cpts, qpts);
  }

  rep.stage = "beta0";
  {
    std::vector<HSymbol> h_syms;
    for (const auto& hc : tile_lattice(cfg.h_axes))
      h_syms.push_back(h_tile_symbol(ri, hc, cfg.h_axes));
    size_t vi = 0;
    for (const auto& v : rep.kernel_set.verdicts) {
      const Symbol f = g_tile_symbol(ri, v.g_center, cfg.g_axes);
      const HSymbol& g = h_syms[vi % h_syms.size()];
      const auto bz = beta0(ri.mp, f, g, cfg.classical_box);
      const double scale = std::max(sup_norm(f) * h_sup_norm(g), 1e-300);
      if ((bz.sup_abs <= 1e-9 * scale) == v.in_kernel)
        ++rep.beta0_agreements;
      else
        ++rep.beta0_disagreements;
      ++vi;
    }
  }

  rep.stage = "separation";
  {
    double max_kernel = 0.0, min_live = std::numeric_limits<double>::infinity();
    for (const auto& v : rep.kernel_set.verdicts) {
      if (v.in_kernel)
        max_kernel = std::max(max_kernel, std::max(v.limit, 0.0));
      else
        min_live = std::min(min_live, v.limit);
    }
    if (std::isfinite(min_live) && min_live > 0)
      rep.separation = min_live / std::max(max_kernel, 1e-12);
  }

  rep.stage = "objects";
  {
    const auto g_centers = tile_lattice(cfg.g_axes);
    const Symbol f0 = g_tile_symbol(ri, g_centers[g_centers.size() / 2], cfg.g_axes);
    const Symbol f1 = g_tile_symbol(ri, g_centers[0], cfg.g_axes);
    const Section s0 = section_from_symbol(f0, cfg.grid, cfg.qopt);
    const Section s1 = section_from_symbol(f1, cfg.grid, cfg.qopt);
    const bool gen_ok = sup_diff(classical_fiber(s0), f0) == 0.0;
    const bool prod_ok =
        sup_diff(classical_fiber(section_product(s0, s1)), sym_mul(f0, f1)) == 0.0;
    rep.object_roundtrip_exact = gen_ok && prod_ok;
  }

  rep.stage = "done";
  rep.passes = rep.n_survivors > 0 && rep.n_classical > 0 &&
               std::max(rep.hausdorff_fwd, rep.hausdorff_rev) < rep.tile_tolerance &&
               rep.beta0_disagreements == 0 && rep.object_roundtrip_exact;
  return rep;
}

nlohmann::json roundtrip_report_json(const RoundtripReport& r) {
  nlohmann::json j;
  j["passes"] = r.passes;
  j["hausdorff_fwd_tiles"] = r.hausdorff_fwd;
  j["hausdorff_rev_tiles"] = r.hausdorff_rev;
  j["tile_tolerance"] = r.tile_tolerance;
  j["n_pairs"] = r.n_pairs;
  j["n_survivors"] = r.n_survivors;
  j["n_classical"] = r.n_classical;
  j["beta0_agreements"] = r.beta0_agreements;
  j["beta0_disagreements"] = r.beta0_disagreements;
  j["separation"] = r.separation;
  j["object_roundtrip_exact"] = r.object_roundtrip_exact;
  j["sign_fault_injected"] = r.sign_fault_injected;
  j["stage"] = r.stage;
  j["fit_lo"] = r.kernel_set.fit_lo;
  j["fit_hi"] = r.kernel_set.fit_hi;
  return j;
}

}  // namespace glab

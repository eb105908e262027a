#include "glab/grid_bimodule.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace glab {

using C = std::complex<double>;
using RowMat =
    Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace {

int n_angles(const GridBimodule& m) { return m.left.n_angles; }
const Grid1D& radii(const GridBimodule& m) { return m.left.radii; }

// Analysis / synthesis over the angle axis, frequencies -A/2 + i. The two
// matrices are exact inverses for integer frequencies on the uniform ring.
Eigen::MatrixXcd mode_analysis(int A) {
  Eigen::MatrixXcd W(A, A);  // W(j, i) = exp(-i m_i theta_j) / A
  for (int j = 0; j < A; ++j)
    for (int i = 0; i < A; ++i) {
      const double ph = -(i - A / 2) * (kTwoPi * j / A);
      W(j, i) = C(std::cos(ph), std::sin(ph)) / double(A);
    }
  return W;
}

Eigen::MatrixXcd mode_synthesis(int A) {
  Eigen::MatrixXcd S(A, A);  // S(i, j) = exp(+i m_i theta_j)
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < A; ++j) {
      const double ph = (i - A / 2) * (kTwoPi * j / A);
      S(i, j) = C(std::cos(ph), std::sin(ph));
    }
  return S;
}

Eigen::MatrixXcd to_modes(const GridBimodule& m, const Eigen::VectorXcd& phi) {
  const int Nr = radii(m).n, A = n_angles(m);
  Eigen::Map<const RowMat> P(phi.data(), Nr, A);
  return P * mode_analysis(A);  // (r, mode slot)
}

Eigen::VectorXcd from_modes(const GridBimodule& m, const Eigen::MatrixXcd& hat) {
  const int Nr = radii(m).n, A = n_angles(m);
  Eigen::VectorXcd phi(Nr * A);
  Eigen::Map<RowMat>(phi.data(), Nr, A) = hat * mode_synthesis(A);
  return phi;
}

void check_vec(const GridBimodule& m, const Eigen::VectorXcd& v, const char* who) {
  if (int(v.size()) != m.n_points)
    throw std::invalid_argument(std::string(who) + ": vector length does not match the module");
}

void check_section_grids(const HbarGrid& a, const HbarGrid& b, const char* who) {
  if (a.values != b.values)
    throw std::invalid_argument(std::string(who) + ": hbar grids differ");
}

// indices of the smallest sampled decade, newest convention shared with the
// section-algebra vanishing test
std::vector<int> decade_window(const HbarGrid& grid, const std::string& who) {
  const auto& hb = grid.values;
  if (hb.empty() || hb.back() > 1e-2)
    throw std::invalid_argument(who + ": grid must reach hbar <= 1e-2");
  std::vector<int> idx;
  for (size_t i = 0; i < hb.size(); ++i)
    if (hb[i] <= 10.0 * hb.back()) idx.push_back(int(i));
  if (idx.size() < 3)
    throw std::invalid_argument(who + ": fewer than 3 samples in the smallest decade");
  return idx;
}

// 1x1 stand-in section whose fiber norms are the given profile, so the
// section-algebra extrapolation machinery applies to module norm profiles
Section profile_section(const HbarGrid& grid, const std::vector<double>& norms) {
  Section s;
  s.grid = grid;
  for (double n : norms) {
    KernelOperator k;
    k.blocks.push_back({Eigen::MatrixXcd::Constant(1, 1, n), 1, "scalar"});
    s.fibers.push_back(std::move(k));
  }
  return s;
}

std::vector<double> norms_of(const GridBimodule& m, const ModuleSection& phi) {
  std::vector<double> out;
  out.reserve(phi.vecs.size());
  for (const auto& v : phi.vecs) out.push_back(module_norm(m, v));
  return out;
}

Symbol unit_symbol(const GridBimodule& m) {
  return sample_symbol(algebroid_dual(m.left),
                       [](const std::vector<double>&, const std::vector<double>&) {
                         return C(1.0, 0.0);
                       });
}

Section hbar_times_right_unit(const GridBimodule& m, const HbarGrid& grid) {
  Section b;
  b.grid = grid;
  for (double h : grid.values) b.fibers.push_back(k_scale(h, right_unit(m)));
  return b;
}

}  // namespace

GridBimodule pair_trivial_module(const SmoothGroupoidDescriptor& pair_desc) {
  if (pair_desc.family != Family::PairGrid || pair_desc.axes.size() != 1)
    throw std::invalid_argument("pair_trivial_module: wants a 1-axis PairGrid descriptor");
  validate_descriptor(pair_desc);
  return {ModuleFamily::PairTrivial, pair_desc, pair_desc.axes[0].n};
}

GridBimodule gauge_so2_module(const SmoothGroupoidDescriptor& gauge_desc) {
  if (gauge_desc.family != Family::GaugeSO2Polar)
    throw std::invalid_argument("gauge_so2_module: wants a GaugeSO2Polar descriptor");
  validate_descriptor(gauge_desc);
  return {ModuleFamily::GaugeSO2, gauge_desc, gauge_desc.radii.n * gauge_desc.n_angles};
}

int module_dim(const GridBimodule& m) { return m.n_points; }

std::vector<double> module_point(const GridBimodule& m, int q) {
  if (q < 0 || q >= m.n_points) throw std::out_of_range("module_point: bad sample index");
  if (m.family == ModuleFamily::PairTrivial) return {m.left.axes[0].point(q)};
  const int A = n_angles(m);
  return {radii(m).point(q / A), kTwoPi * (q % A) / A};
}

KernelOperator module_inner(const GridBimodule& m, const Eigen::VectorXcd& phi,
                            const Eigen::VectorXcd& psi) {
  check_vec(m, phi, "module_inner");
  check_vec(m, psi, "module_inner");
  KernelOperator k;
  if (m.family == ModuleFamily::PairTrivial) {
    const C d = m.left.axes[0].step * phi.dot(psi);
    k.blocks.push_back({Eigen::MatrixXcd::Constant(1, 1, d), 1, "scalar"});
    return k;
  }
  const auto ph = to_modes(m, phi), ps = to_modes(m, psi);
  const int A = n_angles(m);
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(A, A);
  for (int i = 0; i < A; ++i) D(i, i) = kTwoPi * radii(m).step * ph.col(i).dot(ps.col(i));
  k.blocks.push_back({std::move(D), 1, "modes"});
  return k;
}

double module_norm(const GridBimodule& m, const Eigen::VectorXcd& phi) {
  return std::sqrt(op_norm(module_inner(m, phi, phi)));
}

double inner_min_eigenvalue(const GridBimodule& m, const Eigen::VectorXcd& phi) {
  const KernelOperator k = module_inner(m, phi, phi);
  double lo = 0.0;
  bool first = true;
  for (const auto& b : k.blocks)
    for (int i = 0; i < b.m.rows(); ++i) {
      const double v = b.m(i, i).real();
      lo = first ? v : std::min(lo, v);
      first = false;
    }
  return lo;
}

Eigen::VectorXcd left_apply(const GridBimodule& m, const KernelOperator& a,
                            const Eigen::VectorXcd& phi) {
  check_vec(m, phi, "left_apply");
  if (m.family == ModuleFamily::PairTrivial) {
    if (a.blocks.size() != 1 || a.blocks[0].m.rows() != m.n_points ||
        a.blocks[0].m.cols() != m.n_points)
      throw std::invalid_argument("left_apply: operator blocks do not match the module");
    return a.blocks[0].m * phi;
  }
  const int Nr = radii(m).n, A = n_angles(m);
  if (int(a.blocks.size()) != A)
    throw std::invalid_argument("left_apply: operator blocks do not match the module");
  for (const auto& b : a.blocks)
    if (b.m.rows() != Nr || b.m.cols() != Nr)
      throw std::invalid_argument("left_apply: operator blocks do not match the module");
  Eigen::MatrixXcd hat = to_modes(m, phi);
  for (int i = 0; i < A; ++i) hat.col(i) = a.blocks[i].m * hat.col(i);
  return from_modes(m, hat);
}

Eigen::VectorXcd right_apply(const GridBimodule& m, const Eigen::VectorXcd& phi,
                             const KernelOperator& b) {
  check_vec(m, phi, "right_apply");
  if (m.family == ModuleFamily::PairTrivial) {
    if (b.blocks.size() != 1 || b.blocks[0].m.rows() != 1 || b.blocks[0].m.cols() != 1)
      throw std::invalid_argument("right_apply: expected a 1x1 scalar block");
    return phi * b.blocks[0].m(0, 0);
  }
  const int A = n_angles(m);
  if (b.blocks.size() != 1 || b.blocks[0].m.rows() != A || b.blocks[0].m.cols() != A)
    throw std::invalid_argument("right_apply: expected one mode-basis block");
  const Eigen::MatrixXcd& d = b.blocks[0].m;
  double off = 0.0, diag = 0.0;
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < A; ++j) {
      const double v = std::abs(d(i, j));
      if (i == j)
        diag = std::max(diag, v);
      else
        off = std::max(off, v);
    }
  if (off > 1e-12 * (1.0 + diag))
    throw std::invalid_argument("right_apply: right algebra elements are diagonal in the mode basis");
  Eigen::MatrixXcd hat = to_modes(m, phi);
  for (int i = 0; i < A; ++i) hat.col(i) *= d(i, i);
  return from_modes(m, hat);
}

KernelOperator right_unit(const GridBimodule& m) {
  KernelOperator k;
  if (m.family == ModuleFamily::PairTrivial)
    k.blocks.push_back({Eigen::MatrixXcd::Identity(1, 1), 1, "scalar"});
  else
    k.blocks.push_back({Eigen::MatrixXcd::Identity(n_angles(m), n_angles(m)), 1, "modes"});
  return k;
}

ModuleSection constant_section(const GridBimodule& m, const HbarGrid& grid,
                               const Eigen::VectorXcd& v) {
  check_vec(m, v, "constant_section");
  ModuleSection s;
  s.grid = grid;
  s.vecs.assign(grid.values.size(), v);
  return s;
}

ModuleSection scale_module_profile(const ModuleSection& s,
                                   const std::function<double(double)>& phi) {
  ModuleSection out;
  out.grid = s.grid;
  for (size_t i = 0; i < s.vecs.size(); ++i)
    out.vecs.push_back(phi(s.grid.values[i]) * s.vecs[i]);
  return out;
}

ModuleSection module_section_add(const ModuleSection& a, const ModuleSection& b) {
  check_section_grids(a.grid, b.grid, "module_section_add");
  ModuleSection out;
  out.grid = a.grid;
  for (size_t i = 0; i < a.vecs.size(); ++i) out.vecs.push_back(a.vecs[i] + b.vecs[i]);
  return out;
}

ModuleSection module_section_sub(const ModuleSection& a, const ModuleSection& b) {
  check_section_grids(a.grid, b.grid, "module_section_sub");
  ModuleSection out;
  out.grid = a.grid;
  for (size_t i = 0; i < a.vecs.size(); ++i) out.vecs.push_back(a.vecs[i] - b.vecs[i]);
  return out;
}

Eigen::VectorXcd coherent_vector(const GridBimodule& m, const std::vector<double>& base,
                                 const std::vector<double>& cov,
                                 const std::vector<double>& widths, double hbar) {
  if (!(hbar > 0)) throw std::invalid_argument("coherent_vector: hbar must be positive");
  Eigen::VectorXcd v(m.n_points);
  if (m.family == ModuleFamily::PairTrivial) {
    if (base.size() != 1 || cov.size() != 1 || widths.size() != 1)
      throw std::invalid_argument("coherent_vector: line module wants 1-dim base/cov/width");
    const Grid1D& g = m.left.axes[0];
    for (int q = 0; q < g.n; ++q) {
      const double dx = g.point(q) - base[0];
      const double ph = cov[0] * dx / hbar;
      v[q] = std::exp(-dx * dx / (2 * widths[0] * widths[0])) * C(std::cos(ph), std::sin(ph));
    }
    return v;
  }
  if (base.size() != 2 || cov.size() != 2 || widths.size() != 2)
    throw std::invalid_argument("coherent_vector: annulus module wants 2-dim base/cov/width");
  const Grid1D& r = radii(m);
  const int A = n_angles(m);
  const long mode = std::lround(cov[1] / hbar);
  for (int i = 0; i < r.n; ++i) {
    const double dr = r.point(i) - base[0];
    const double radial = std::exp(-dr * dr / (2 * widths[0] * widths[0]));
    const double phr = cov[0] * dr / hbar;
    for (int j = 0; j < A; ++j) {
      double dth = kTwoPi * j / A - base[1];
      dth = std::remainder(dth, kTwoPi);
      const double env = radial * std::exp(-dth * dth / (2 * widths[1] * widths[1]));
      const double ph = phr + mode * dth;
      v[i * A + j] = env * C(std::cos(ph), std::sin(ph));
    }
  }
  return v;
}

ModuleSection coherent_section(const GridBimodule& m, const HbarGrid& grid,
                               const std::vector<double>& base, const std::vector<double>& cov,
                               const std::vector<double>& widths) {
  ModuleSection s;
  s.grid = grid;
  for (double h : grid.values) s.vecs.push_back(coherent_vector(m, base, cov, widths, h));
  return s;
}

ModuleSection left_apply_section(const GridBimodule& m, const Section& a,
                                 const ModuleSection& phi) {
  check_section_grids(a.grid, phi.grid, "left_apply_section");
  ModuleSection out;
  out.grid = phi.grid;
  for (size_t i = 0; i < phi.vecs.size(); ++i)
    out.vecs.push_back(left_apply(m, a.fibers[i], phi.vecs[i]));
  return out;
}

ModuleSection right_apply_section(const GridBimodule& m, const ModuleSection& phi,
                                  const Section& b) {
  check_section_grids(b.grid, phi.grid, "right_apply_section");
  ModuleSection out;
  out.grid = phi.grid;
  for (size_t i = 0; i < phi.vecs.size(); ++i)
    out.vecs.push_back(right_apply(m, phi.vecs[i], b.fibers[i]));
  return out;
}

NormProfile module_norm_profile(const GridBimodule& m, const ModuleSection& phi) {
  return norm_profile(profile_section(phi.grid, norms_of(m, phi)));
}

ModuleLift lift_module(const GridBimodule& m, const HbarGrid& grid,
                       std::vector<ModuleSection> generators, double continuity_tol) {
  validate_hbar_grid(grid);
  ModuleLift se;
  se.mod = m;
  se.grid = grid;
  se.generators = std::move(generators);
  const int ng = int(se.generators.size());
  std::vector<std::vector<double>> norms(ng);
  for (int g = 0; g < ng; ++g) {
    const auto& s = se.generators[g];
    check_section_grids(s.grid, grid, "lift_module");
    for (const auto& v : s.vecs) check_vec(m, v, "lift_module");
    norms[g] = norms_of(m, s);
    se.profiles.push_back(norm_profile(profile_section(grid, norms[g])));
    double scale = 0.0;
    for (double n : norms[g]) scale = std::max(scale, n);
    if (scale > 0.0)
      for (size_t i = 0; i + 1 < norms[g].size(); ++i) {
        const double jump = std::abs(norms[g][i + 1] - norms[g][i]) / scale;
        if (jump > continuity_tol) {
          char buf[160];
          std::snprintf(buf, sizeof buf,
                        "generator %d: norm profile jumps %.3f of scale between hbar=%g and hbar=%g",
                        g, jump, grid.values[i], grid.values[i + 1]);
          se.warnings.push_back(buf);
        }
      }
  }
  // positivity floor and Cauchy-Schwarz margin across generators and hbar
  bool first = true;
  for (int g = 0; g < ng; ++g)
    for (size_t i = 0; i < grid.values.size(); ++i) {
      const double e = inner_min_eigenvalue(m, se.generators[g].vecs[i]);
      se.worst_positivity = first ? e : std::min(se.worst_positivity, e);
      first = false;
    }
  for (int g = 0; g < ng; ++g)
    for (int h = g + 1; h < ng; ++h)
      for (size_t i = 0; i < grid.values.size(); ++i) {
        const double cross =
            op_norm(module_inner(m, se.generators[g].vecs[i], se.generators[h].vecs[i]));
        const double bound = norms[g][i] * norms[h][i];
        const double v = (cross - bound) / std::max(1.0, bound);
        se.cs.worst_violation = std::max(se.cs.worst_violation, v);
        ++se.cs.n_checked;
      }
  se.cs.passes = se.cs.worst_violation <= 1e-12;
  return se;
}

std::vector<Section> standard_vanishing_battery(const GridBimodule& m, const HbarGrid& grid,
                                                const std::vector<Symbol>& symbols,
                                                const QuantizeOptions& opt) {
  std::vector<Section> out;
  std::vector<Section> gen;
  for (const auto& f : symbols) {
    if (f.dual.family != m.left.family)
      throw std::invalid_argument("standard_vanishing_battery: symbol lives on the wrong dual");
    gen.push_back(section_from_symbol(f, grid, opt));
    out.push_back(section_scale_profile(gen.back(), [](double h) { return h; }));
  }
  if (symbols.size() >= 2)
    out.push_back(section_scale_profile(section_product(gen[0], gen[1]),
                                        [](double h) { return h; }));
  return out;
}

NondegeneracyReport strong_nondegeneracy_check(ModuleLift& se,
                                               const std::vector<Section>& a_battery,
                                               const QuantizeOptions& opt) {
  const GridBimodule& m = se.mod;
  const Section b = hbar_times_right_unit(m, se.grid);
  const bool b_ok = vanishing_at_zero(b).passes;
  const auto window = decade_window(se.grid, "strong_nondegeneracy_check");

  NondegeneracyReport rep;
  auto run_case = [&](const std::string& name, const Section& a, const ModuleSection& phi,
                      bool quotient_is_phi) {
    const ModuleSection aphi = left_apply_section(m, a, phi);
    ModuleSection quot = quotient_is_phi
                             ? phi
                             : scale_module_profile(aphi, [](double h) { return 1.0 / h; });
    const ModuleSection back = right_apply_section(m, quot, b);
    double scale = 0.0;
    std::vector<double> qnorms = norms_of(m, quot);
    for (const auto& v : aphi.vecs) scale = std::max(scale, module_norm(m, v));
    NondegeneracyCase c;
    c.name = name;
    c.b_vanishes = b_ok;
    for (double n : qnorms) c.quotient_sup = std::max(c.quotient_sup, n);
    if (scale > 0.0)
      for (size_t i = 0; i < aphi.vecs.size(); ++i)
        c.residual = std::max(
            c.residual, module_norm(m, Eigen::VectorXcd(aphi.vecs[i] - back.vecs[i])) / scale);
    std::vector<double> xs, ys;
    for (int i : window)
      if (qnorms[i] > 1e-300) {
        xs.push_back(std::log(se.grid.values[i]));
        ys.push_back(std::log(qnorms[i]));
      }
    c.quotient_slope = xs.size() >= 2 ? fit_line(xs, ys).slope : 0.0;
    rep.cases.push_back(std::move(c));
  };

  // canonical factorization: a = hbar * Q(1) against phi itself; the quantized
  // unit must act as the exact identity for this to come out at round-off
  Section a_unit;
  a_unit.grid = se.grid;
  const Symbol one = unit_symbol(m);
  for (double h : se.grid.values) a_unit.fibers.push_back(k_scale(h, quantize(one, h, opt)));
  for (size_t g = 0; g < se.generators.size(); ++g)
    run_case("unit:gen" + std::to_string(g), a_unit, se.generators[g], true);

  for (size_t ai = 0; ai < a_battery.size(); ++ai) {
    check_section_grids(a_battery[ai].grid, se.grid, "strong_nondegeneracy_check");
    if (!vanishing_at_zero(a_battery[ai]).passes)
      throw std::invalid_argument("strong_nondegeneracy_check: battery section " +
                                  std::to_string(ai) + " does not vanish at hbar -> 0");
    for (size_t g = 0; g < se.generators.size(); ++g)
      run_case("a" + std::to_string(ai) + ":gen" + std::to_string(g), a_battery[ai],
               se.generators[g], false);
  }

  rep.passes = b_ok;
  for (const auto& c : rep.cases) {
    rep.worst_residual = std::max(rep.worst_residual, c.residual);
    const double tol = c.name.rfind("unit:", 0) == 0 ? kNondegenUnitTol : kNondegenTol;
    if (c.residual > tol || !c.b_vanishes || c.quotient_slope < kNondegenSlopeFloor)
      rep.passes = false;
  }
  se.nondegeneracy = rep;
  return rep;
}

nlohmann::json nondegeneracy_report_json(const NondegeneracyReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"name", c.name},
                     {"residual", c.residual},
                     {"quotient_sup", c.quotient_sup},
                     {"quotient_slope", c.quotient_slope},
                     {"b_vanishes", c.b_vanishes}});
  return nlohmann::json{
      {"passes", r.passes}, {"worst_residual", r.worst_residual}, {"cases", cases}};
}

VanishingReport module_vanishing(const GridBimodule& m, const ModuleSection& phi,
                                 double rel_threshold) {
  return vanishing_at_zero(profile_section(phi.grid, norms_of(m, phi)), rel_threshold);
}

bool same_limit_class(const GridBimodule& m, const ModuleSection& a, const ModuleSection& b,
                      double rel_threshold) {
  const ModuleSection d = module_section_sub(a, b);
  const auto window = decade_window(a.grid, "same_limit_class");
  double sup = 0.0;
  for (size_t i = 0; i < a.vecs.size(); ++i)
    sup = std::max({sup, module_norm(m, a.vecs[i]), module_norm(m, b.vecs[i])});
  std::vector<double> xs, ys;
  for (int i : window) {
    xs.push_back(a.grid.values[i]);
    ys.push_back(module_norm(m, d.vecs[i]));
  }
  const LineFit fit = fit_line(xs, ys);
  return std::abs(fit.intercept) <= rel_threshold * sup + 1e-12 * std::max(1.0, sup);
}

ClassicalLimitModule hilbert_classical_limit(const ModuleLift& se) {
  if (!se.nondegeneracy || !se.nondegeneracy->passes)
    throw std::logic_error(
        "hilbert_classical_limit: strong nondegeneracy not established on this lift");
  return {se.mod, se.grid};
}

Eigen::VectorXcd module_limit_vector(const HbarGrid& grid, const ModuleSection& phi) {
  check_section_grids(grid, phi.grid, "module_limit_vector");
  const auto window = decade_window(grid, "module_limit_vector");
  std::vector<double> xs;
  for (int i : window) xs.push_back(grid.values[i]);
  const int n = int(phi.vecs.empty() ? 0 : phi.vecs[0].size());
  Eigen::VectorXcd out(n);
  std::vector<double> re(xs.size()), im(xs.size());
  for (int q = 0; q < n; ++q) {
    for (size_t k = 0; k < window.size(); ++k) {
      re[k] = phi.vecs[window[k]][q].real();
      im[k] = phi.vecs[window[k]][q].imag();
    }
    out[q] = C(fit_line(xs, re).intercept, fit_line(xs, im).intercept);
  }
  return out;
}

Eigen::VectorXcd limit_left_action(const ClassicalLimitModule& clm, const Section& a,
                                   const ModuleSection& phi) {
  return module_limit_vector(clm.grid, left_apply_section(clm.mod, a, phi));
}

Eigen::VectorXcd classical_multiplication(const ClassicalLimitModule& clm, const Symbol& f0,
                                          const Eigen::VectorXcd& v) {
  check_vec(clm.mod, v, "classical_multiplication");
  const int nf = f0.dual.n_fiber();
  const std::vector<double> zero(nf, 0.0);
  Eigen::VectorXcd out(v.size());
  for (int q = 0; q < int(v.size()); ++q) {
    auto pt = module_point(clm.mod, q);
    // the annulus middle point carries (r, theta); the gauge symbol's base
    // is the radius alone
    if (clm.mod.family == ModuleFamily::GaugeSO2) pt.resize(1);
    out[q] = symbol_eval(f0, pt, zero) * v[q];
  }
  return out;
}

KernelOperator limit_inner(const ClassicalLimitModule& clm, const ModuleSection& a,
                           const ModuleSection& b) {
  const auto window = decade_window(clm.grid, "limit_inner");
  std::vector<double> xs;
  for (int i : window) xs.push_back(clm.grid.values[i]);
  std::vector<KernelOperator> inns;
  for (int i : window) inns.push_back(module_inner(clm.mod, a.vecs[i], b.vecs[i]));
  KernelOperator out = inns[0];
  std::vector<double> re(xs.size()), im(xs.size());
  for (size_t bl = 0; bl < out.blocks.size(); ++bl)
    for (int i = 0; i < out.blocks[bl].m.rows(); ++i)
      for (int j = 0; j < out.blocks[bl].m.cols(); ++j) {
        for (size_t k = 0; k < window.size(); ++k) {
          re[k] = inns[k].blocks[bl].m(i, j).real();
          im[k] = inns[k].blocks[bl].m(i, j).imag();
        }
        out.blocks[bl].m(i, j) = C(fit_line(xs, re).intercept, fit_line(xs, im).intercept);
      }
  return out;
}

}  // namespace glab

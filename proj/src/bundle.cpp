#include "glab/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glab/io_util.hpp"

namespace glab {

namespace {
void check_same_grid(const Section& a, const Section& b, const char* who) {
  if (a.grid.values != b.grid.values)
    throw std::invalid_argument(std::string(who) + ": sections live over different hbar grids");
}
}  // namespace

Section section_from_symbol(const Symbol& f, const HbarGrid& grid, const QuantizeOptions& opt) {
  validate_hbar_grid(grid);
  Section s;
  s.grid = grid;
  s.prov = Provenance::Generated;
  s.symbols = {f};
  s.fibers.reserve(grid.values.size());
  for (double hbar : grid.values) s.fibers.push_back(quantize(f, hbar, opt));
  return s;
}

Section section_product(const Section& a, const Section& b) {
  check_same_grid(a, b, "section_product");
  Section s;
  s.grid = a.grid;
  for (size_t i = 0; i < a.fibers.size(); ++i) s.fibers.push_back(k_mul(a.fibers[i], b.fibers[i]));
  const bool symbolic = a.prov != Provenance::Raw && b.prov != Provenance::Raw;
  s.prov = symbolic ? Provenance::Product : Provenance::Raw;
  if (symbolic) {
    s.symbols = a.symbols;
    s.symbols.insert(s.symbols.end(), b.symbols.begin(), b.symbols.end());
  }
  return s;
}

Section section_add(const Section& a, const Section& b) {
  check_same_grid(a, b, "section_add");
  Section s;
  s.grid = a.grid;
  s.prov = Provenance::Raw;
  for (size_t i = 0; i < a.fibers.size(); ++i) s.fibers.push_back(k_add(a.fibers[i], b.fibers[i]));
  return s;
}

Section section_sub(const Section& a, const Section& b) {
  check_same_grid(a, b, "section_sub");
  Section s;
  s.grid = a.grid;
  s.prov = Provenance::Raw;
  for (size_t i = 0; i < a.fibers.size(); ++i) s.fibers.push_back(k_sub(a.fibers[i], b.fibers[i]));
  return s;
}

Section section_adjoint(const Section& s) {
  Section out;
  out.grid = s.grid;
  out.prov = s.prov;
  for (const auto& f : s.fibers) out.fibers.push_back(k_adjoint(f));
  for (const auto& f : s.symbols) out.symbols.push_back(sym_conj(f));
  return out;
}

Section section_scale_profile(const Section& s, const std::function<double(double)>& phi) {
  Section out;
  out.grid = s.grid;
  out.prov = Provenance::Raw;
  for (size_t i = 0; i < s.fibers.size(); ++i)
    out.fibers.push_back(k_scale(phi(s.grid.values[i]), s.fibers[i]));
  return out;
}

NormProfile norm_profile(const Section& s) {
  NormProfile p;
  p.hbars = s.grid.values;
  for (const auto& f : s.fibers) p.norms.push_back(op_norm(f));
  if (p.hbars.size() < 2) return p;
  const double span = p.hbars.front() - p.hbars.back();
  double min_gap = span;
  for (size_t i = 1; i < p.hbars.size(); ++i)
    min_gap = std::min(min_gap, p.hbars[i - 1] - p.hbars[i]);
  const int n_delta = 8;
  for (int k = 0; k < n_delta; ++k) {
    const double delta = min_gap * std::pow(span / min_gap, double(k) / (n_delta - 1));
    double omega = 0.0;
    for (size_t i = 0; i < p.hbars.size(); ++i)
      for (size_t j = i + 1; j < p.hbars.size(); ++j)
        if (p.hbars[i] - p.hbars[j] <= delta)
          omega = std::max(omega, std::abs(p.norms[i] - p.norms[j]));
    p.deltas.push_back(delta);
    p.omegas.push_back(omega);
  }
  return p;
}

double sup_norm(const Section& s) {
  double m = 0.0;
  for (const auto& f : s.fibers) m = std::max(m, op_norm(f));
  return m;
}

VanishingReport vanishing_at_zero(const Section& s, double rel_threshold) {
  const auto& hb = s.grid.values;
  if (hb.empty() || hb.back() > 1e-2)
    throw std::invalid_argument("vanishing_at_zero: grid must reach hbar <= 1e-2");
  const double lo = hb.back(), hi = 10.0 * lo;
  std::vector<double> xs, ys;
  for (size_t i = 0; i < hb.size(); ++i)
    if (hb[i] <= hi) {
      xs.push_back(hb[i]);
      ys.push_back(op_norm(s.fibers[i]));
    }
  if (xs.size() < 3)
    throw std::invalid_argument("vanishing_at_zero: fewer than 3 samples in the smallest decade");
  const LineFit fit = fit_line(xs, ys);
  VanishingReport r;
  r.limit = fit.intercept;
  r.slope = fit.slope;
  r.residual = fit.residual;
  r.fit_lo = lo;
  r.fit_hi = xs.front();
  r.n_fit = int(xs.size());
  const double sup = sup_norm(s);
  r.threshold = rel_threshold * sup;
  r.passes = std::abs(r.limit) <= r.threshold + 1e-12 * std::max(1.0, sup);
  return r;
}

Symbol classical_fiber(const Section& s) {
  if (s.prov == Provenance::Raw || s.symbols.empty())
    throw std::invalid_argument("classical_fiber: no symbolic limit available");
  Symbol out = s.symbols[0];
  for (size_t i = 1; i < s.symbols.size(); ++i) out = sym_mul(out, s.symbols[i]);
  return out;
}

bool same_classical_class(const Section& a, const Section& b, double rel_threshold) {
  const Section d = section_sub(a, b);
  // scale the threshold by the larger section, not the difference: the
  // difference of two copies of a section is numerically tiny and its own
  // sup-norm would make the threshold meaninglessly small
  const double sup = std::max(sup_norm(a), sup_norm(b));
  const auto& hb = d.grid.values;
  if (hb.empty() || hb.back() > 1e-2)
    throw std::invalid_argument("same_classical_class: grid must reach hbar <= 1e-2");
  const double hi = 10.0 * hb.back();
  std::vector<double> xs, ys;
  for (size_t i = 0; i < hb.size(); ++i)
    if (hb[i] <= hi) {
      xs.push_back(hb[i]);
      ys.push_back(op_norm(d.fibers[i]));
    }
  const LineFit fit = fit_line(xs, ys);
  return std::abs(fit.intercept) <= rel_threshold * sup + 1e-12 * std::max(1.0, sup);
}

void write_norm_profile_csv(const std::string& path, const NormProfile& p) {
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < p.hbars.size(); ++i) rows.push_back({p.hbars[i], p.norms[i]});
  write_csv(path, "hbar,norm", rows);
}

nlohmann::json vanishing_report_json(const VanishingReport& r) {
  return nlohmann::json{{"passes", r.passes},     {"limit", r.limit},
                        {"slope", r.slope},       {"residual", r.residual},
                        {"threshold", r.threshold}, {"fit_lo", r.fit_lo},
                        {"fit_hi", r.fit_hi},     {"n_fit", r.n_fit}};
}

}  // namespace glab

#include "glab/defects.hpp"

#include <cmath>
#include <stdexcept>

#include "glab/io_util.hpp"
#include "glab/poisson.hpp"

namespace glab {

HbarGrid hbar_log_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("hbar_log_grid: need 0 < lo < hi and count >= 2");
  HbarGrid g;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g.values.push_back(std::exp(lhi + (llo - lhi) * i / (count - 1)));
  g.values.front() = hi;
  g.values.back() = lo;
  return g;
}

void validate_hbar_grid(const HbarGrid& grid) {
  const auto& v = grid.values;
  if (v.size() < 8) throw std::invalid_argument("hbar grid: need at least 8 samples");
  for (size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || v[i] > 1.0)
      throw std::invalid_argument("hbar grid: samples must lie in (0,1]");
    if (i && !(v[i] < v[i - 1]))
      throw std::invalid_argument("hbar grid: samples must be strictly decreasing");
  }
  if (v.front() / v.back() < 100.0)
    throw std::invalid_argument("hbar grid: must span at least two decades");
}

std::vector<DefectRow> strict_quantization_defects(const Symbol& f, const Symbol& g,
                                                   const HbarGrid& grid,
                                                   const QuantizeOptions& opt) {
  const Symbol fg = sym_mul(f, g);
  const Symbol br = poisson_bracket(f, g);
  std::vector<DefectRow> rows;
  rows.reserve(grid.values.size());
  for (double hbar : grid.values) {
    DefectRow r;
    r.hbar = hbar;
    const KernelOperator qf = quantize(f, hbar, opt);
    const KernelOperator qg = quantize(g, hbar, opt);
    const KernelOperator qfg = quantize(fg, hbar, opt);
    const KernelOperator qbr = quantize(br, hbar, opt);
    const KernelOperator prod = k_mul(qf, qg);
    r.vn = op_norm(k_sub(prod, qfg));
    const KernelOperator comm = k_commutator(qf, qg);
    r.dirac_raw = op_norm(k_sub(qbr, comm));
    // (1/i hbar) [a,b]
    const KernelOperator scaled = k_scale(std::complex<double>(0.0, -1.0 / hbar), comm);
    r.dirac_scaled = op_norm(k_sub(qbr, scaled));
    r.norm = op_norm(qf);
    rows.push_back(r);
  }
  return rows;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need two or more paired points");
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (size_t i = 0; i < xs.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  return fit;
}

LineFit fit_decay_exponent(const std::vector<DefectRow>& rows, double DefectRow::*field,
                           double floor) {
  std::vector<double> xs, ys;
  for (const auto& r : rows)
    if (r.*field > floor) {
      xs.push_back(std::log(r.hbar));
      ys.push_back(std::log(r.*field));
    }
  return fit_line(xs, ys);
}

void write_defect_csv(const std::string& path, const std::vector<DefectRow>& rows) {
  std::vector<std::vector<double>> table;
  for (const auto& r : rows)
    table.push_back({r.hbar, r.vn, r.dirac_scaled, r.dirac_raw, r.norm});
  write_csv(path, "hbar,vn,dirac_scaled,dirac_raw,norm", table);
}

}  // namespace glab

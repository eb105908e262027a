#pragma once
#include <string>
#include <vector>

#include "glab/quantize.hpp"

namespace glab {

// Strictly decreasing list of hbar samples in (0, 1].
struct HbarGrid {
  std::vector<double> values;
};

// Log-spaced grid from hi down to lo. The validator is separate so callers
// can build ad-hoc grids for unit tests; battery entry points validate.
HbarGrid hbar_log_grid(double lo, double hi, int count);

// Throws unless: all values in (0,1], strictly decreasing, at least 8
// samples, and the range spans two decades or more.
void validate_hbar_grid(const HbarGrid& grid);

// One hbar sample of the quantization-quality battery:
//   vn            |Q(f)Q(g) - Q(fg)|            (asymptotic multiplicativity)
//   dirac_scaled  |Q({f,g}) - (1/i hbar)[Q(f),Q(g)]|
//   dirac_raw     |Q({f,g}) - [Q(f),Q(g)]|      (unscaled commutator, for the record)
//   norm          |Q(f)|                         (norm-continuity profile)
struct DefectRow {
  double hbar = 0.0;
  double vn = 0.0;
  double dirac_scaled = 0.0;
  double dirac_raw = 0.0;
  double norm = 0.0;
};

std::vector<DefectRow> strict_quantization_defects(const Symbol& f, const Symbol& g,
                                                   const HbarGrid& grid,
                                                   const QuantizeOptions& opt = {});

// Least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0, intercept = 0.0;
  double residual = 0.0;  // max |y - fit| over the points
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Fitted decay exponent: slope of log(value) against log(hbar), over rows
// whose value is positive. Rows with value <= floor are skipped.
LineFit fit_decay_exponent(const std::vector<DefectRow>& rows, double DefectRow::*field,
                           double floor = 1e-300);

// Columns: hbar,vn,dirac_scaled,dirac_raw,norm
void write_defect_csv(const std::string& path, const std::vector<DefectRow>& rows);

}  // namespace glab

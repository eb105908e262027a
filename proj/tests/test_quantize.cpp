#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>

#include "glab/quantize.hpp"

using namespace glab;
using C = std::complex<double>;

namespace {
double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double adjoint_defect(const KernelOperator& k) {
  double d = 0.0;
  for (const auto& b : k.blocks) d = std::max(d, max_abs(b.m - b.m.adjoint().eval()));
  return d;
}
}  // namespace

TEST_CASE("line kernel matches the closed-form gaussian kernel") {
  // continuum kernel of the scaled quantization of
  //   f(x,p) = exp(-x^2/2sx^2) exp(-p^2/2sp^2):
  //   h * sp/(sqrt(2 pi) hbar) exp(-mid^2/2sx^2) exp(-sp^2 (x-y)^2 / 2 hbar^2)
  // times the displacement taper; dropping the taper from either side leaves
  // the mode sum's periodic images sitting in the far corners at full size
  const double sx = 1.2, sp = 1.0;
  auto dual = algebroid_dual(make_pair_grid({Grid1D::centered(16.0, 128)}));
  auto f = gaussian_symbol(dual, {0.0}, sx, sp);
  const Grid1D& x = dual.base[0].grid;
  const CutoffSpec cut = translation_cutoff_for(QuantizeOptions{}, x);
  for (double hbar : {0.3, 0.5, 1.0}) {
    auto q = quantize(f, hbar);
    REQUIRE(q.blocks.size() == 1);
    const auto& M = q.blocks[0].m;
    Eigen::MatrixXcd want(x.n, x.n);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) {
        const double mid = 0.5 * (x.point(i) + x.point(j));
        const double X = x.point(i) - x.point(j);
        want(i, j) = cut(X) * x.step * sp / (std::sqrt(kTwoPi) * hbar) *
                     std::exp(-mid * mid / (2 * sx * sx)) *
                     std::exp(-sp * sp * X * X / (2 * hbar * hbar));
      }
    CHECK(max_abs(M - want) < 1e-8 * max_abs(want));
  }
}

TEST_CASE("real symbols quantize to self-adjoint operators") {
  SUBCASE("line") {
    auto dual = algebroid_dual(make_pair_grid({Grid1D::centered(12.0, 48)}));
    auto f = gaussian_symbol(dual, {0.7}, 1.0, 0.8);
    CHECK(adjoint_defect(quantize(f, 0.37)) < 1e-13);
  }
  SUBCASE("plane") {
    auto dual = algebroid_dual(
        make_pair_grid({Grid1D::centered(8.0, 12), Grid1D::centered(8.0, 12)}));
    auto f = gaussian_symbol(dual, {0.0, -0.4}, 1.1, 0.9);
    CHECK(adjoint_defect(quantize(f, 0.5)) < 1e-13);
  }
  SUBCASE("rotation group and rings") {
    auto gd = algebroid_dual(make_so2_group(32));
    auto fg = sample_symbol(gd, [](const std::vector<double>&, const std::vector<double>& p) {
      return C(std::exp(-p[0] * p[0] / 2.0), 0.0);
    });
    CHECK(adjoint_defect(quantize(fg, 0.2)) < 1e-14);

    auto rd = algebroid_dual(make_action_so2_on_r2(Grid1D{1.0, 0.5, 3}, 16, 16));
    auto fr = sample_symbol(rd, [](const std::vector<double>& b, const std::vector<double>& p) {
      return C(std::exp(-p[0] * p[0] / 2.0) * (1.0 + 0.3 * std::cos(b[1])) * b[0], 0.0);
    });
    CHECK(adjoint_defect(quantize(fr, 0.2)) < 1e-13);
  }
  SUBCASE("gauge annulus") {
    auto dual = algebroid_dual(make_gauge_so2_polar(Grid1D{1.0, 0.1, 24}, 16));
    auto f = sample_symbol(dual, [](const std::vector<double>& b, const std::vector<double>& p) {
      const double r = b[0] - 2.15;
      return C(std::exp(-r * r / 0.18 - p[0] * p[0] / 2 - p[1] * p[1] / 2), 0.0);
    });
    CHECK(adjoint_defect(quantize(f, 0.15)) < 1e-13);
  }
}

TEST_CASE("product symbols on the plane quantize to tensor products") {
  auto d1 = algebroid_dual(make_pair_grid({Grid1D::centered(8.0, 12)}));
  auto d2 = algebroid_dual(make_pair_grid({Grid1D::centered(6.0, 10)}));
  auto f1 = gaussian_symbol(d1, {0.3}, 1.0, 0.9);
  auto f2 = gaussian_symbol(d2, {-0.2}, 0.8, 1.1);
  auto dd = algebroid_dual(make_pair_grid({d1.base[0].grid, d2.base[0].grid}));
  auto prod = sample_symbol(
      dd,
      [&](const std::vector<double>& b, const std::vector<double>& p) {
        return f1.closed_form({b[0]}, {p[0]}) * f2.closed_form({b[1]}, {p[1]});
      },
      FunctionClass::Schwartz);
  const double hbar = 0.4;
  auto Q = quantize(prod, hbar).blocks[0].m;
  auto A = quantize(f1, hbar).blocks[0].m;
  auto B = quantize(f2, hbar).blocks[0].m;
  Eigen::MatrixXcd kron(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i1 = 0; i1 < A.rows(); ++i1)
    for (int i2 = 0; i2 < B.rows(); ++i2)
      for (int j1 = 0; j1 < A.cols(); ++j1)
        for (int j2 = 0; j2 < B.cols(); ++j2)
          kron(i1 * B.rows() + i2, j1 * B.cols() + j2) = A(i1, j1) * B(i2, j2);
  CHECK(max_abs(Q - kron) < 1e-12 * max_abs(kron));
}

TEST_CASE("rotation group quantization is evaluation on the scaled modes") {
  auto dual = algebroid_dual(make_so2_group(64));
  auto f = sample_symbol(dual, [](const std::vector<double>&, const std::vector<double>& p) {
    return C(std::exp(-p[0] * p[0] / 8.0), 0.0);
  });
  const double hbar = 0.3;
  auto Q = quantize(f, hbar).blocks[0].m;
  for (int i = 0; i < 64; ++i) {
    const int m = i - 32;
    // the edge slot carries the average of the two Nyquist values, which for
    // this even symbol is just the value
    const C want = C(std::exp(-(hbar * m) * (hbar * m) / 8.0), 0.0);
    CHECK(std::abs(Q(i, i) - want) < 1e-13);
    for (int j = 0; j < 64; ++j)
      if (j != i) CHECK(std::abs(Q(i, j)) == 0.0);
  }
}

TEST_CASE("ring blocks are circulants with mode eigenvalues when the base is symmetric") {
  const int n = 32;
  auto dual = algebroid_dual(make_action_so2_on_r2(Grid1D{1.5, 0.5, 2}, n, n));
  auto f = sample_symbol(dual, [](const std::vector<double>& b, const std::vector<double>& p) {
    return C(b[0] * std::exp(-p[0] * p[0] / 2.0), 0.0);
  });
  QuantizeOptions plain;
  plain.angular_cutoff.enabled = false;
  const double hbar = 0.2;
  auto Q = quantize(f, hbar, plain);
  REQUIRE(Q.blocks.size() == 2);
  for (int r = 0; r < 2; ++r) {
    const double rad = 1.5 + 0.5 * r;
    const auto& M = Q.blocks[r].m;
    for (int m = -n / 2 + 1; m < n / 2; ++m) {
      Eigen::VectorXcd v(n);
      for (int j = 0; j < n; ++j) v(j) = std::exp(C(0, kTwoPi * m * j / n));
      const double lam = rad * std::exp(-(hbar * m) * (hbar * m) / 2.0);
      CHECK((M * v - lam * v).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("angular taper is invisible on fast-decaying kernels") {
  // kernel width in the angular displacement is about hbar over the fiber
  // width, so it must die off well inside the taper's flat region, and the
  // scaled mode window must still cover the fiber content: n = 128 at
  // hbar = 0.2 gives both
  const int n = 128;
  auto dual = algebroid_dual(make_action_so2_on_r2(Grid1D{2.0, 0.5, 1}, n, n));
  auto f = sample_symbol(dual, [](const std::vector<double>& b, const std::vector<double>& p) {
    return C(std::exp(-p[0] * p[0] / 2.0) * (1.0 + 0.2 * std::sin(b[1])), 0.0);
  });
  QuantizeOptions tapered;  // default
  QuantizeOptions plain;
  plain.angular_cutoff.enabled = false;
  auto A = quantize(f, 0.2, tapered), B = quantize(f, 0.2, plain);
  CHECK(op_norm(k_sub(A, B)) < 1e-9 * op_norm(B));
}

TEST_CASE("gauge blocks factor through the radial kernel") {
  Grid1D radii{1.0, 0.1, 24};
  auto dual = algebroid_dual(make_gauge_so2_polar(radii, 16));
  const double sr = 0.3;
  auto radial = [=](double r, double pr) {
    const double u = r - 2.15;
    return std::exp(-u * u / (2 * sr * sr) - pr * pr / 2.0);
  };
  auto wlam = [](double lam) { return std::exp(-lam * lam / 2.0); };
  auto f = sample_symbol(
      dual,
      [&](const std::vector<double>& b, const std::vector<double>& p) {
        return C(radial(b[0], p[0]) * wlam(p[1]), 0.0);
      },
      FunctionClass::Schwartz);
  auto rd = algebroid_dual(make_pair_grid({radii}));
  auto frad = sample_symbol(
      rd,
      [&](const std::vector<double>& b, const std::vector<double>& p) {
        return C(radial(b[0], p[0]), 0.0);
      },
      FunctionClass::Schwartz);
  const double hbar = 0.15;
  auto Q = quantize(f, hbar);
  auto R = quantize(frad, hbar).blocks[0].m;
  REQUIRE(Q.blocks.size() == 16);
  for (int mi = 0; mi < 16; ++mi) {
    const int m = mi - 8;  // edge slot: average of the two Nyquist values; wlam is even
    CHECK(max_abs(Q.blocks[mi].m - wlam(hbar * m) * R) < 1e-12);
  }
}

TEST_CASE("trace of the quantization matches the scaled integral") {
  SUBCASE("line") {
    // scaled window must cover the fiber gaussian: hbar * pi/h >= 6 sigma
    auto dual = algebroid_dual(make_pair_grid({Grid1D::centered(20.0, 256)}));
    auto f = gaussian_symbol(dual, {0.0}, 1.3, 1.0, 0.8);
    for (double hbar : {0.3, 0.17}) {
      const C tr = op_trace(quantize(f, hbar));
      const C ref = trace_reference(f, hbar);
      CHECK(std::abs(tr - ref) < 1e-9 * std::abs(ref));
    }
  }
  SUBCASE("rotation group") {
    auto dual = algebroid_dual(make_so2_group(256));
    auto f = sample_symbol(dual, [](const std::vector<double>&, const std::vector<double>& p) {
      return C(std::exp(-p[0] * p[0] / 2.0), 0.0);
    });
    const double hbar = 0.1;
    const C tr = op_trace(quantize(f, hbar));
    const C ref = trace_reference(f, hbar);
    CHECK(std::abs(tr - ref) < 1e-7 * std::abs(ref));
  }
  SUBCASE("gauge annulus") {
    // the reference integral is quadrature on the symbol's own fiber grid,
    // whose radial-momentum spacing is 2 pi / annulus width; the fiber
    // gaussian must be wide enough for that comb (sigma = 3) and hbar large
    // enough that the scaled window still covers it
    auto dual = algebroid_dual(make_gauge_so2_polar(Grid1D{1.0, 0.05, 48}, 64));
    auto f = sample_symbol(
        dual,
        [](const std::vector<double>& b, const std::vector<double>& p) {
          const double u = b[0] - 2.15;
          return C(std::exp(-u * u / 0.08 - p[0] * p[0] / 18 - p[1] * p[1] / 2), 0.0);
        },
        FunctionClass::Schwartz);
    const double hbar = 0.3;
    const C tr = op_trace(quantize(f, hbar));
    const C ref = trace_reference(f, hbar);
    CHECK(std::abs(tr - ref) < 1e-7 * std::abs(ref));
  }
}

TEST_CASE("interpolated sampling agrees with closed-form sampling") {
  auto dual = algebroid_dual(make_pair_grid({Grid1D::centered(20.0, 96)}));
  auto f = gaussian_symbol(dual, {0.4}, 1.2, 1.0);
  QuantizeOptions interp;
  interp.use_closed_form = false;
  auto A = quantize(f, 0.33), B = quantize(f, 0.33, interp);
  CHECK(max_abs(A.blocks[0].m - B.blocks[0].m) < 1e-8 * max_abs(A.blocks[0].m));
}

TEST_CASE("norm approaches the sup norm from below as hbar shrinks") {
  auto dual = algebroid_dual(make_pair_grid({Grid1D::centered(16.0, 96)}));
  auto f = gaussian_symbol(dual, {0.0}, 1.0, 1.0, 2.0);
  double prev = 0.0;
  for (double hbar : {0.8, 0.4, 0.2, 0.1}) {
    const double nq = op_norm(quantize(f, hbar));
    CHECK(nq > prev);   // approach is monotone for this symbol
    CHECK(nq < 2.0001);  // never overshoots the sup norm
    prev = nq;
  }
  CHECK(std::abs(prev - 2.0) < 0.25);
}

TEST_CASE("resolvable window behaves like a window") {
  auto dual = algebroid_dual(make_pair_grid({Grid1D::centered(16.0, 64)}));
  auto w = resolvable_window(dual, 4.0, 1.0);
  CHECK(w.lo > 0.0);
  CHECK(w.lo < w.hi);
  auto w2 = resolvable_window(dual, 8.0, 1.0);
  CHECK(w2.lo == doctest::Approx(2 * w.lo));
  CHECK_THROWS_AS(quantize(gaussian_symbol(dual, {0.0}, 1.0, 1.0), 0.0),
                  std::invalid_argument);
}

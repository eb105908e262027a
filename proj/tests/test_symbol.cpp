#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>

#include "glab/symbol.hpp"

using namespace glab;
using C = std::complex<double>;

static LieAlgebroidDual line_dual(double L, int n) {
  return algebroid_dual(make_pair_grid({Grid1D::centered(L, n)}));
}

TEST_CASE("sampling and arithmetic") {
  auto dual = line_dual(16.0, 32);
  auto f = gaussian_symbol(dual, {0.0}, 1.5, 1.0, 2.0);
  CHECK(f.cls == FunctionClass::Schwartz);
  CHECK(sup_norm(f) == doctest::Approx(2.0));  // grid contains the peak
  auto g = sym_mul(f, f);
  CHECK(sup_norm(g) == doctest::Approx(4.0));
  CHECK(sup_diff(sym_sub(g, g), symbol_zero(dual)) == 0.0);
  auto h = sym_scale(C(0, 1), f);
  CHECK(std::abs(h.a[100] - C(0, 1) * f.a[100]) < 1e-15);
}

TEST_CASE("gaussian integral against the closed form") {
  auto dual = line_dual(24.0, 64);
  const double sx = 1.3, sp = 0.9, amp = 0.7;
  auto f = gaussian_symbol(dual, {0.0}, sx, sp, amp);
  const double exact = amp * kTwoPi * sx * sp;  // product of two 1-d gaussians
  CHECK(std::abs(symbol_integral(f).real() - exact) < 1e-10 * exact);
  CHECK(std::abs(symbol_integral(f).imag()) < 1e-12);
}

TEST_CASE("trig interpolation reproduces off-grid values of decayed symbols") {
  auto dual = line_dual(20.0, 64);
  auto f = gaussian_symbol(dual, {0.4}, 1.2, 1.1);
  Symbol sampled = f;
  sampled.closed_form = nullptr;  // force the interpolation path
  for (double x : {0.123, -1.77, 3.05}) {
    for (double p : {0.511, -2.03}) {
      const C want = f.closed_form({x}, {p});
      const C got = symbol_eval(sampled, {x}, {p});
      CHECK(std::abs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("eval_tensor closed-form and interpolation routes agree") {
  auto dual = line_dual(18.0, 48);
  auto f = gaussian_symbol(dual, {-0.3}, 1.4, 1.0);
  std::vector<double> xs, ps;
  for (int i = 0; i < 7; ++i) xs.push_back(-2.0 + 0.6 * i + 0.05);
  for (int i = 0; i < 5; ++i) ps.push_back(-1.5 + 0.7 * i + 0.11);
  auto exact = eval_tensor(f, {xs, ps}, true);
  auto interp = eval_tensor(f, {xs, ps}, false);
  REQUIRE(exact.size() == interp.size());
  for (size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(exact[i] - interp[i]) < 1e-9);
}

TEST_CASE("fiber transform: unit gaussian peaks at sqrt(2 pi)") {
  auto dual = line_dual(24.0, 96);
  auto f = gaussian_symbol(dual, {0.0}, 1.5, 1.0);
  auto F = fiberwise_ft(f);
  // at X = 0 the transform equals the integral of exp(-p^2/2) = sqrt(2 pi)
  const int nb = 96 / 2;  // center index of the transformed fiber axis
  std::vector<int> idx = {48, nb};
  const C peak = F.at(idx);
  const double gx = std::exp(-0.0);  // base gaussian at its center sample
  CHECK(std::abs(peak.real() - std::sqrt(kTwoPi) * gx) < 1e-10);
  CHECK(std::abs(peak.imag()) < 1e-12);
}

TEST_CASE("fiber transform round trips exactly") {
  SUBCASE("momentum axis") {
    auto dual = line_dual(12.0, 40);
    auto f = gaussian_symbol(dual, {0.2}, 1.1, 0.9);
    auto back = fiberwise_ft_inverse(fiberwise_ft(f));
    REQUIRE(back.a.size() == f.a.size());
    CHECK(sup_diff(back, f) < 1e-12);
    CHECK(back.dual.fiber[0].grid.step == doctest::Approx(f.dual.fiber[0].grid.step));
  }
  SUBCASE("integer mode axis") {
    auto dual = algebroid_dual(make_so2_group(16));
    auto f = sample_symbol(
        dual,
        [](const std::vector<double>&, const std::vector<double>& fib) {
          return C(std::exp(-fib[0] * fib[0] / 8.0), 0.1 * fib[0]);
        },
        FunctionClass::Schwartz);
    auto F = fiberwise_ft(f);
    CHECK(F.dual.fiber[0].periodic);
    CHECK(F.dual.fiber[0].grid.n == 16);
    auto back = fiberwise_ft_inverse(F);
    CHECK(sup_diff(back, f) < 1e-12);
  }
}

TEST_CASE("transform turns fiber translation into phase") {
  // sanity for the sign convention: f(p - a) has transform e^{-iaX} F(X)
  auto dual = line_dual(24.0, 96);
  auto f = gaussian_symbol(dual, {0.0}, 1.5, 1.0);
  auto shifted = sample_symbol(
      dual,
      [&](const std::vector<double>& b, const std::vector<double>& p) {
        return f.closed_form(b, {p[0] - 0.8});
      },
      FunctionClass::Schwartz);
  auto F = fiberwise_ft(f), G = fiberwise_ft(shifted);
  NdIndex ix(F.dual.dims());
  double worst = 0.0;
  for (int t = 30; t < 66; ++t) {
    const double X = F.dual.fiber[0].grid.point(t);
    const C want = std::exp(C(0, -0.8 * X)) * F.at({48, t});
    worst = std::max(worst, std::abs(G.at({48, t}) - want));
  }
  CHECK(worst < 1e-9);
}

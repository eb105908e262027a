#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <doctest/doctest.h>

#include "glab/grid_bimodule.hpp"

using namespace glab;
using C = std::complex<double>;

namespace {

GridBimodule line_module() {
  return pair_trivial_module(make_pair_grid({Grid1D::centered(16.0, 64)}));
}

GridBimodule annulus_module() {
  // Wide annulus: radial extent 2pi so the dual radial spacing is 1 and the
  // operator sup norms converge linearly inside the sampled decade.
  return gauge_so2_module(make_gauge_so2_polar(Grid1D{0.5, kTwoPi / 32.0, 32}, 32));
}

Eigen::VectorXcd bumpvec(const GridBimodule& m, double x0, double w) {
  Eigen::VectorXcd v(m.n_points);
  for (int q = 0; q < m.n_points; ++q) {
    double x = module_point(m, q)[0];
    v[q] = std::exp(-(x - x0) * (x - x0) / (2 * w * w));
  }
  return v;
}

Eigen::VectorXcd annulus_phi(const GridBimodule& m) {
  Eigen::VectorXcd v(m.n_points);
  for (int q = 0; q < m.n_points; ++q) {
    auto pt = module_point(m, q);
    v[q] = std::exp(-std::pow(pt[0] - 3.0, 2) / 2.0) *
           C(std::cos(2 * pt[1]), std::sin(2 * pt[1]));
  }
  return v;
}

Eigen::VectorXcd annulus_psi(const GridBimodule& m) {
  Eigen::VectorXcd v(m.n_points);
  for (int q = 0; q < m.n_points; ++q) {
    auto pt = module_point(m, q);
    v[q] = std::exp(-std::pow(pt[0] - 2.5, 2) / (2 * 0.8 * 0.8)) * std::cos(pt[1]);
  }
  return v;
}

// Shared heavy state for the line module: a certified lift plus the battery
// that certified it. Built once; the nondegeneracy cases quantize at every
// hbar sample and dominate the test runtime.
struct LineFixture {
  GridBimodule mod = line_module();
  LieAlgebroidDual dual = algebroid_dual(make_pair_grid({Grid1D::centered(16.0, 64)}));
  HbarGrid grid = hbar_log_grid(0.01, 1.0, 10);
  Symbol f = gaussian_symbol(dual, {0.4}, 0.8, 3.0);
  Symbol g = gaussian_symbol(dual, {-0.3}, 1.04, 2.7);
  Eigen::VectorXcd phi = bumpvec(mod, 0.5, 1.2);
  Eigen::VectorXcd psi = bumpvec(mod, -1.0, 0.9);
  ModuleSection g0 = constant_section(mod, grid, phi);
  ModuleSection g1 = coherent_section(mod, grid, {0.5}, {0.8}, {1.2});
  std::vector<Section> bat = standard_vanishing_battery(mod, grid, {f, g});
  ModuleLift lift = lift_module(mod, grid, {g0, g1});
  NondegeneracyReport rep = strong_nondegeneracy_check(lift, bat);
};

const LineFixture& line_fix() {
  static LineFixture fx;
  return fx;
}

struct AnnulusFixture {
  GridBimodule mod = annulus_module();
  LieAlgebroidDual dual =
      algebroid_dual(make_gauge_so2_polar(Grid1D{0.5, kTwoPi / 32.0, 32}, 32));
  HbarGrid grid = hbar_log_grid(0.01, 1.0, 10);
  Symbol f = gaussian_symbol(dual, {3.0}, 1.0, 3.0);
  Symbol g = gaussian_symbol(dual, {2.4}, 1.2, 2.6);
  Eigen::VectorXcd phi = annulus_phi(mod);
  ModuleSection g0 = constant_section(mod, grid, phi);
  ModuleSection g1 = coherent_section(mod, grid, {3.0, 1.0}, {0.5, 0.8}, {0.8, 0.5});
  std::vector<Section> bat = standard_vanishing_battery(mod, grid, {f, g});
  ModuleLift lift = lift_module(mod, grid, {g0, g1});
  NondegeneracyReport rep = strong_nondegeneracy_check(lift, bat);
};

const AnnulusFixture& annulus_fix() {
  static AnnulusFixture fx;
  return fx;
}

}  // namespace

TEST_CASE("module constructors check the descriptor family") {
  auto pair_desc = make_pair_grid({Grid1D::centered(16.0, 64)});
  auto gauge_desc = make_gauge_so2_polar(Grid1D{0.5, kTwoPi / 32.0, 32}, 32);

  CHECK_THROWS_AS(pair_trivial_module(gauge_desc), std::invalid_argument);
  CHECK_THROWS_AS(gauge_so2_module(pair_desc), std::invalid_argument);
  auto g = Grid1D::centered(4.0, 8);
  CHECK_THROWS_AS(pair_trivial_module(make_pair_grid({g, g})), std::invalid_argument);

  auto mod = pair_trivial_module(pair_desc);
  CHECK(mod.family == ModuleFamily::PairTrivial);
  CHECK(module_dim(mod) == 64);
  REQUIRE(module_point(mod, 0).size() == 1);
  CHECK(module_point(mod, 0)[0] == doctest::Approx(-8.0));
  CHECK(module_point(mod, 63)[0] == doctest::Approx(7.75));
  CHECK_THROWS_AS(module_point(mod, 64), std::out_of_range);
  CHECK_THROWS_AS(module_point(mod, -1), std::out_of_range);

  auto gmod = gauge_so2_module(gauge_desc);
  CHECK(gmod.family == ModuleFamily::GaugeSO2);
  CHECK(module_dim(gmod) == 32 * 32);
  // radius-major layout: q = r_idx * n_angles + angle_idx
  auto p0 = module_point(gmod, 0);
  REQUIRE(p0.size() == 2);
  CHECK(p0[0] == doctest::Approx(0.5));
  CHECK(p0[1] == doctest::Approx(0.0));
  auto p33 = module_point(gmod, 33);
  CHECK(p33[0] == doctest::Approx(0.5 + kTwoPi / 32.0));
  CHECK(p33[1] == doctest::Approx(kTwoPi / 32.0));
}

TEST_CASE("inner products use the flat trivialization measure") {
  auto mod = line_module();
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(64);
  // step 0.25 over 64 points: <1,1> = 16, norm 4
  CHECK(module_norm(mod, ones) == doctest::Approx(4.0).epsilon(1e-12));

  auto phi = bumpvec(mod, 0.5, 1.2);
  auto psi = bumpvec(mod, -1.0, 0.9);
  auto ip = module_inner(mod, phi, psi);
  REQUIRE(ip.blocks.size() == 1);
  CHECK(ip.blocks[0].label == "scalar");
  REQUIRE(ip.blocks[0].m.rows() == 1);
  auto ip_sym = module_inner(mod, psi, phi);
  CHECK(std::abs(ip.blocks[0].m(0, 0) - std::conj(ip_sym.blocks[0].m(0, 0))) < 1e-14);
  CHECK(inner_min_eigenvalue(mod, phi) ==
        doctest::Approx(module_norm(mod, phi) * module_norm(mod, phi)));

  Eigen::VectorXcd wrong = Eigen::VectorXcd::Ones(63);
  CHECK_THROWS_AS(module_inner(mod, phi, wrong), std::invalid_argument);
  CHECK_THROWS_AS(module_norm(mod, wrong), std::invalid_argument);

  auto gmod = annulus_module();
  Eigen::VectorXcd gones = Eigen::VectorXcd::Ones(gmod.n_points);
  // angular weight 2pi spread over the modes times radial extent 2pi
  CHECK(module_norm(gmod, gones) == doctest::Approx(kTwoPi).epsilon(1e-12));
  auto gip = module_inner(gmod, annulus_phi(gmod), annulus_psi(gmod));
  REQUIRE(gip.blocks.size() == 1);
  CHECK(gip.blocks[0].label == "modes");
  CHECK(gip.blocks[0].m.rows() == 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      if (i != j) CHECK(std::abs(gip.blocks[0].m(i, j)) == 0.0);
}

TEST_CASE("left action is a *-homomorphism for the trivial line module") {
  auto mod = line_module();
  auto dual = algebroid_dual(make_pair_grid({Grid1D::centered(16.0, 64)}));
  Symbol f = gaussian_symbol(dual, {0.4}, 0.8, 3.0);
  Symbol g = gaussian_symbol(dual, {-0.3}, 1.04, 2.7);
  auto Qf = quantize(f, 0.15);
  auto Qg = quantize(g, 0.15);
  auto phi = bumpvec(mod, 0.5, 1.2);
  auto psi = bumpvec(mod, -1.0, 0.9);

  // <a.phi, psi> = <phi, a*.psi>, measured 2.2e-16
  auto i1 = module_inner(mod, left_apply(mod, Qf, phi), psi);
  auto i2 = module_inner(mod, phi, left_apply(mod, k_adjoint(Qf), psi));
  CHECK(std::abs(i1.blocks[0].m(0, 0) - i2.blocks[0].m(0, 0)) < 1e-12);

  // (ab).phi = a.(b.phi), measured 4.4e-16
  auto lhs = left_apply(mod, k_mul(Qf, Qg), phi);
  auto rhs = left_apply(mod, Qf, left_apply(mod, Qg, phi));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

  auto gdual = algebroid_dual(make_gauge_so2_polar(Grid1D{0.5, kTwoPi / 32.0, 32}, 32));
  auto Qwrong = quantize(gaussian_symbol(gdual, {3.0}, 1.0, 3.0), 0.15);
  CHECK_THROWS_AS(left_apply(mod, Qwrong, phi), std::invalid_argument);
}

TEST_CASE("gauge left action respects adjoints blockwise") {
  auto gmod = annulus_module();
  auto gdual = algebroid_dual(make_gauge_so2_polar(Grid1D{0.5, kTwoPi / 32.0, 32}, 32));
  auto Qgf = quantize(gaussian_symbol(gdual, {3.0}, 1.0, 3.0), 0.15);
  REQUIRE(Qgf.blocks.size() == 32);
  CHECK(Qgf.blocks[0].label == "mode-16");

  auto gphi = annulus_phi(gmod);
  auto gpsi = annulus_psi(gmod);
  auto gi1 = module_inner(gmod, left_apply(gmod, Qgf, gphi), gpsi);
  auto gi2 = module_inner(gmod, gphi, left_apply(gmod, k_adjoint(Qgf), gpsi));
  double admax = 0.0;
  for (int i = 0; i < 32; ++i)
    admax = std::max(admax, std::abs(gi1.blocks[0].m(i, i) - gi2.blocks[0].m(i, i)));
  CHECK(admax < 1e-12);  // measured 7.3e-16
}

TEST_CASE("right action is diagonal in the mode basis") {
  auto gmod = annulus_module();
  Eigen::VectorXcd gones = Eigen::VectorXcd::Ones(gmod.n_points);
  auto rt = right_apply(gmod, gones, right_unit(gmod));
  CHECK((rt - gones).cwiseAbs().maxCoeff() < 1e-12);  // measured 5.6e-15

  // compatibility <phi, psi.b> = <phi, psi> b, measured 7.9e-16
  auto gphi = annulus_phi(gmod);
  auto gpsi = annulus_psi(gmod);
  auto hb = quantize(gaussian_symbol(algebroid_dual(make_so2_group(32)), {0, 0}, 1.0, 2.5), 0.2);
  auto left_side = module_inner(gmod, gphi, right_apply(gmod, gpsi, hb));
  auto right_side = k_mul(module_inner(gmod, gphi, gpsi), hb);
  double cmax = 0.0;
  for (int i = 0; i < 32; ++i)
    cmax = std::max(cmax, std::abs(left_side.blocks[0].m(i, i) - right_side.blocks[0].m(i, i)));
  CHECK(cmax < 1e-12);

  auto bad = hb;
  bad.blocks[0].m(0, 1) += 1.0;
  CHECK_THROWS_AS(right_apply(gmod, gpsi, bad), std::invalid_argument);

  // line module: right algebra is scalars, the unit acts as identity
  auto mod = line_module();
  auto phi = bumpvec(mod, 0.5, 1.2);
  auto u = right_unit(mod);
  REQUIRE(u.blocks.size() == 1);
  CHECK(u.blocks[0].m.rows() == 1);
  CHECK((right_apply(mod, phi, u) - phi).cwiseAbs().maxCoeff() == 0.0);
  auto twice = u;
  twice.blocks[0].m(0, 0) = 2.0;
  CHECK((right_apply(mod, phi, twice) - 2.0 * phi).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(right_apply(mod, phi, hb), std::invalid_argument);
}

TEST_CASE("coherent vectors validate their parameters") {
  auto mod = line_module();
  auto gmod = annulus_module();
  CHECK_THROWS_AS(coherent_vector(mod, {0.5, 0.1}, {0.8, 0.0}, {1.2, 1.0}, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(coherent_vector(gmod, {3.0}, {0.5}, {0.8}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(coherent_vector(mod, {0.5}, {0.8}, {1.2}, 0.0), std::invalid_argument);

  // zero covector: plain real Gaussian
  auto v0 = coherent_vector(mod, {0.5}, {0.0}, {1.2}, 0.5);
  double im = 0.0, re = 0.0;
  for (int q = 0; q < mod.n_points; ++q) {
    im = std::max(im, std::abs(v0[q].imag()));
    re = std::max(re, std::abs(v0[q].real()));
  }
  CHECK(im == 0.0);
  CHECK(re > 0.5);
  // nonzero covector twists the phase
  auto v1 = coherent_vector(mod, {0.5}, {0.8}, {1.2}, 0.5);
  double im1 = 0.0;
  for (int q = 0; q < mod.n_points; ++q) im1 = std::max(im1, std::abs(v1[q].imag()));
  CHECK(im1 > 0.1);

  // annulus: the angular covector rides the nearest integer mode, so at
  // hbar = 0.5 a covector of 1.0 lands on mode 2 and the vector picks up
  // exactly e^{2 i theta} along each radius circle (angular envelope opened
  // wide so only the phase varies).
  auto w = coherent_vector(gmod, {3.0, 1.0}, {0.0, 1.0}, {0.8, 1e8}, 0.5);
  int base = 16 * 32;  // radius row nearest r = 3.0: index (3.0 - 0.5) / step
  double worst = 0.0;
  for (int a = 0; a < 32; ++a) {
    double th = kTwoPi * a / 32.0;
    C expected = w[base] * C(std::cos(2 * th), std::sin(2 * th));
    worst = std::max(worst, std::abs(w[base + a] - expected));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("module lift reports profiles, continuity, positivity, Cauchy-Schwarz") {
  const auto& fx = line_fix();
  auto g2 = scale_module_profile(fx.g0, [](double h) { return h; });
  ModuleSection g3 = fx.g0;
  for (size_t i = 5; i < g3.vecs.size(); ++i) g3.vecs[i] = 3.0 * g3.vecs[i];

  auto lift = lift_module(fx.mod, fx.grid, {fx.g0, fx.g1, g2, g3});
  REQUIRE(lift.profiles.size() == 4);
  REQUIRE(lift.warnings.size() == 1);
  CHECK(lift.warnings[0].find("generator 3") != std::string::npos);
  CHECK(lift.warnings[0].find("jumps") != std::string::npos);

  const double nphi = module_norm(fx.mod, fx.phi);
  CHECK(lift.profiles[0].norms.front() == doctest::Approx(nphi));
  CHECK(lift.profiles[0].norms.back() == doctest::Approx(nphi));
  CHECK(lift.profiles[2].norms.back() == doctest::Approx(0.01 * nphi));
  CHECK(lift.profiles[3].norms.back() == doctest::Approx(3.0 * nphi));

  // worst positivity comes from the scaled generator at the smallest hbar
  CHECK(lift.worst_positivity > 0.0);
  CHECK(lift.worst_positivity == doctest::Approx(1e-4 * nphi * nphi));
  CHECK(lift.cs.passes);
  CHECK(lift.cs.worst_violation < 1e-12);  // measured 3.5e-16
  CHECK(lift.cs.n_checked == 60);          // 6 generator pairs x 10 hbar samples

  auto other_grid = hbar_log_grid(0.01, 1.0, 12);
  auto stray = constant_section(fx.mod, other_grid, fx.phi);
  CHECK_THROWS_AS(lift_module(fx.mod, fx.grid, {fx.g0, stray}), std::invalid_argument);
}

TEST_CASE("vanishing battery members are certified by linear extrapolation") {
  const auto& fx = line_fix();
  REQUIRE(fx.bat.size() == 3);
  double sups[3] = {0.8276, 0.8489, 0.6090};
  for (size_t i = 0; i < fx.bat.size(); ++i) {
    auto r = vanishing_at_zero(fx.bat[i]);
    CHECK(r.passes);
    CHECK(r.limit < 4e-4);   // measured 1.9e-4 / 2.4e-4 / 2.8e-4
    CHECK(r.slope > 0.75);   // measured 0.98 / 0.98 / 0.84
    CHECK(sup_norm(fx.bat[i]) == doctest::Approx(sups[i]).epsilon(1e-3));
  }

  auto gdual = algebroid_dual(make_gauge_so2_polar(Grid1D{0.5, kTwoPi / 32.0, 32}, 32));
  CHECK_THROWS_AS(
      standard_vanishing_battery(fx.mod, fx.grid, {gaussian_symbol(gdual, {3.0}, 1.0, 3.0)}),
      std::invalid_argument);

  // The multiplicativity defect vanishes like hbar^{3/2}; the linear
  // extrapolation under-shoots on such convex profiles and refuses to
  // certify it, which is why the standard battery sticks to members with
  // manifestly linear profiles.
  auto F = section_from_symbol(fx.f, fx.grid);
  auto G = section_from_symbol(fx.g, fx.grid);
  auto defect = section_sub(section_product(F, G), section_from_symbol(sym_mul(fx.f, fx.g), fx.grid));
  CHECK_FALSE(vanishing_at_zero(defect).passes);
}

TEST_CASE("strong nondegeneracy factors generators through the battery") {
  const auto& fx = line_fix();
  CHECK(fx.rep.passes);
  CHECK(fx.rep.worst_residual < 1e-12);  // measured 6.6e-16
  REQUIRE(fx.rep.cases.size() == 8);     // (2 unit + 3 battery) x 2 generators
  CHECK(fx.rep.cases[0].name == "unit:gen0");
  CHECK(fx.rep.cases[1].name == "unit:gen1");
  CHECK(fx.rep.cases[2].name == "a0:gen0");

  const double nphi = module_norm(fx.mod, fx.phi);
  for (const auto& c : fx.rep.cases) {
    CHECK(c.residual < 1e-12);
    CHECK(c.b_vanishes);
    CHECK(c.quotient_slope > kNondegenSlopeFloor);  // measured worst -0.034
    CHECK(c.quotient_sup > 0.0);
  }
  // unit cases quotient by phi itself, so the sup is just the norm of phi
  CHECK(fx.rep.cases[0].quotient_sup == doctest::Approx(nphi));

  auto j = nondegeneracy_report_json(fx.rep);
  CHECK(j["passes"].get<bool>());
  CHECK(j["cases"].size() == 8);
  CHECK(j["worst_residual"].get<double>() < 1e-12);

  // a battery member that does not vanish is rejected outright
  auto lift2 = lift_module(fx.mod, fx.grid, {fx.g0});
  std::vector<Section> bad = {section_from_symbol(fx.f, fx.grid)};
  CHECK_THROWS_AS(strong_nondegeneracy_check(lift2, bad), std::invalid_argument);
}

TEST_CASE("classical limit waits for the nondegeneracy certificate") {
  const auto& fx = line_fix();
  auto fresh = lift_module(fx.mod, fx.grid, {fx.g0});
  CHECK_THROWS_AS(hilbert_classical_limit(fresh), std::logic_error);
  CHECK_NOTHROW(hilbert_classical_limit(fx.lift));
}

TEST_CASE("limit left action matches multiplication by the base symbol") {
  const auto& fx = line_fix();
  auto clm = hilbert_classical_limit(fx.lift);

  auto F = section_from_symbol(fx.f, fx.grid);
  auto lim = limit_left_action(clm, F, fx.g0);
  auto ref = classical_multiplication(clm, fx.f, fx.phi);
  double scale = ref.cwiseAbs().maxCoeff();
  CHECK((lim - ref).cwiseAbs().maxCoeff() / scale < 2e-4);  // measured 7.7e-5

  // product sections converge to the product of the base symbols
  auto FG = section_product(F, section_from_symbol(fx.g, fx.grid));
  auto limp = limit_left_action(clm, FG, fx.g0);
  auto refp = classical_multiplication(clm, sym_mul(fx.f, fx.g), fx.phi);
  CHECK((limp - refp).cwiseAbs().maxCoeff() / refp.cwiseAbs().maxCoeff() < 5e-4);  // 2.2e-4

  // limits of constant sections are exact
  auto lv = module_limit_vector(fx.grid, fx.g0);
  CHECK((lv - fx.phi).cwiseAbs().maxCoeff() < 1e-12);
  auto g2 = scale_module_profile(fx.g0, [](double h) { return h; });
  CHECK(module_limit_vector(fx.grid, g2).cwiseAbs().maxCoeff() < 1e-12);

  auto h0 = constant_section(fx.mod, fx.grid, fx.psi);
  auto li = limit_inner(clm, fx.g0, h0);
  auto li2 = limit_inner(clm, h0, fx.g0);
  REQUIRE(li.blocks.size() == 1);
  CHECK(li.blocks[0].m(0, 0).real() == doctest::Approx(1.09464977).epsilon(1e-6));
  CHECK(std::abs(li.blocks[0].m(0, 0).imag()) < 1e-14);
  CHECK(std::abs(li.blocks[0].m(0, 0) - std::conj(li2.blocks[0].m(0, 0))) < 1e-14);
  auto direct = module_inner(fx.mod, fx.phi, fx.psi);
  CHECK(std::abs(li.blocks[0].m(0, 0) - direct.blocks[0].m(0, 0)) < 1e-13);
}

TEST_CASE("module vanishing and limit classes") {
  const auto& fx = line_fix();
  auto g2 = scale_module_profile(fx.g0, [](double h) { return h; });
  auto rv = module_vanishing(fx.mod, g2);
  CHECK(rv.passes);
  CHECK(rv.limit < 1e-12);
  auto rv0 = module_vanishing(fx.mod, fx.g0);
  CHECK_FALSE(rv0.passes);
  CHECK(rv0.limit == doctest::Approx(module_norm(fx.mod, fx.phi)).epsilon(1e-3));

  auto pert = module_section_add(
      fx.g0, scale_module_profile(constant_section(fx.mod, fx.grid, fx.psi),
                                  [](double h) { return h; }));
  CHECK(same_limit_class(fx.mod, fx.g0, pert));
  CHECK_FALSE(same_limit_class(fx.mod, fx.g0, fx.g1));

  // extrapolation needs two decades with at least three samples at the bottom
  auto coarse = hbar_log_grid(0.05, 1.0, 10);
  CHECK_THROWS_AS(module_vanishing(fx.mod, constant_section(fx.mod, coarse, fx.phi)),
                  std::invalid_argument);
  auto sparse = hbar_log_grid(0.005, 1.0, 5);
  CHECK_THROWS_AS(module_vanishing(fx.mod, constant_section(fx.mod, sparse, fx.phi)),
                  std::invalid_argument);
}

TEST_CASE("gauge module lift passes the same gates") {
  const auto& fx = annulus_fix();
  CHECK(fx.lift.warnings.empty());
  CHECK(fx.lift.worst_positivity >= 0.0);
  CHECK(fx.lift.cs.passes);
  CHECK(fx.lift.cs.worst_violation < 1e-12);

  REQUIRE(fx.bat.size() == 3);
  for (const auto& s : fx.bat) {
    auto r = vanishing_at_zero(s);
    CHECK(r.passes);
    CHECK(r.limit < 6e-4);  // measured 2.1e-4 / 2.0e-4 / 3.2e-4
  }

  CHECK(fx.rep.passes);
  CHECK(fx.rep.worst_residual < 1e-12);  // measured 9.6e-16
  REQUIRE(fx.rep.cases.size() == 8);
  for (const auto& c : fx.rep.cases) {
    CHECK(c.residual < 1e-12);
    CHECK(c.b_vanishes);
    CHECK(c.quotient_slope > kNondegenSlopeFloor);  // measured worst -0.058
  }

  auto clm = hilbert_classical_limit(fx.lift);
  auto F = section_from_symbol(fx.f, fx.grid);
  auto lim = limit_left_action(clm, F, fx.g0);
  auto ref = classical_multiplication(clm, fx.f, fx.phi);
  CHECK((lim - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() < 8e-4);  // 3.7e-4
}

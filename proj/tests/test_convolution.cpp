#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include "glab/convolution.hpp"

using namespace glab;
using C = std::complex<double>;

static FiniteGroupoid pair_with_weight(int m, long long num, long long den) {
  auto g = pair_groupoid(m);
  for (auto& w : g.haar) w = RatWeight{num, den};
  return g;
}

static double mat_dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

TEST_CASE("pair groupoid convolution is the matrix product") {
  for (long long den : {1LL, 6LL}) {
    auto g = pair_with_weight(6, 1, den);
    REQUIRE(validate_groupoid(g).empty());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto f = random_conv_elem(g, 1000 + seed);
      auto h = random_conv_elem(g, 2000 + seed);
      auto lhs = matrix_units_iso(convolve(f, h));
      Eigen::MatrixXcd rhs = matrix_units_iso(f) * matrix_units_iso(h);
      CHECK(mat_dist(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("involution matches the conjugate transpose") {
  auto g = pair_with_weight(5, 1, 3);
  auto f = random_conv_elem(g, 7);
  CHECK(mat_dist(matrix_units_iso(involution(f)),
                 matrix_units_iso(f).adjoint()) < 1e-14);
  // and it is an anti-homomorphism: (f*h)^* = h^* f^*
  auto h = random_conv_elem(g, 8);
  CHECK(mat_dist(matrix_units_iso(involution(convolve(f, h))),
                 matrix_units_iso(convolve(involution(h), involution(f)))) < 1e-12);
}

TEST_CASE("convolution unit and associativity on a mixed union") {
  auto g = disjoint_union(pair_with_weight(4, 1, 2), cyclic_group_groupoid(3));
  REQUIRE(validate_groupoid(g).empty());
  auto e = conv_identity<C>(g);
  auto f = random_conv_elem(g, 11);
  auto h = random_conv_elem(g, 12);
  auto k = random_conv_elem(g, 13);

  auto ef = convolve(e, f);
  auto fe = convolve(f, e);
  for (int x = 0; x < g.n_arrows; ++x) {
    CHECK(std::abs(ef.a[x] - f.a[x]) < 1e-14);
    CHECK(std::abs(fe.a[x] - f.a[x]) < 1e-14);
  }

  auto lhs = convolve(convolve(f, h), k);
  auto rhs = convolve(f, convolve(h, k));
  for (int x = 0; x < g.n_arrows; ++x) CHECK(std::abs(lhs.a[x] - rhs.a[x]) < 1e-12);
}

TEST_CASE("left regular representation is a faithful *-homomorphism") {
  auto g = disjoint_union(pair_with_weight(3, 1, 1), cyclic_group_groupoid(4));
  auto f = random_conv_elem(g, 21);
  auto h = random_conv_elem(g, 22);

  auto pf = left_regular(f), ph = left_regular(h);
  auto prod = left_regular(convolve(f, h));
  auto mul = k_mul(pf, ph);
  REQUIRE(prod.blocks.size() == mul.blocks.size());
  for (size_t b = 0; b < prod.blocks.size(); ++b)
    CHECK(mat_dist(prod.blocks[b].m, mul.blocks[b].m) < 1e-12);

  auto adj = k_adjoint(pf);
  auto star = left_regular(involution(f));
  for (size_t b = 0; b < star.blocks.size(); ++b)
    CHECK(mat_dist(star.blocks[b].m, adj.blocks[b].m) < 1e-12);
}

TEST_CASE("C*-identity holds in the left regular representation") {
  auto g = disjoint_union(pair_with_weight(5, 1, 5), cyclic_group_groupoid(6));
  for (std::uint64_t seed : {31, 32, 33}) {
    auto f = random_conv_elem(g, seed);
    const double n = op_norm(left_regular(f));
    const double nn = op_norm(left_regular(convolve(involution(f), f)));
    CHECK(std::abs(nn - n * n) < 1e-8 * std::max(1.0, n * n));
  }
}

TEST_CASE("pair groupoid: representation norm equals the matrix norm") {
  auto g = pair_with_weight(7, 1, 4);
  auto f = random_conv_elem(g, 41);
  CHECK(std::abs(op_norm(left_regular(f)) - sigma_max_svd(matrix_units_iso(f))) < 1e-10);
}

TEST_CASE("two norm routes agree") {
  // seeded dense matrices
  auto g = pair_with_weight(50, 1, 1);
  for (std::uint64_t seed : {51, 52, 53}) {
    auto m = matrix_units_iso(random_conv_elem(g, seed));
    const double a = sigma_max_svd(m);
    const double b = sigma_max_power(m);
    CHECK(std::abs(a - b) < 1e-8 * a);
  }
  // and on a block operator coming from the algebra
  auto gu = disjoint_union(pair_with_weight(9, 1, 3), cyclic_group_groupoid(8));
  auto k = left_regular(random_conv_elem(gu, 54));
  CHECK(std::abs(op_norm(k) - op_norm_oracle(k)) < 1e-8 * op_norm(k));
}

TEST_CASE("matrix units isomorphism round trips") {
  auto g = pair_with_weight(6, 1, 6);
  auto f = random_conv_elem(g, 61);
  auto back = matrix_units_iso_inv(g, matrix_units_iso(f));
  for (int x = 0; x < g.n_arrows; ++x) CHECK(std::abs(back.a[x] - f.a[x]) < 1e-14);
}

TEST_CASE("value tables serialize") {
  auto g = cyclic_group_groupoid(5);
  auto f = random_conv_elem(g, 71);
  auto vals = conv_values_from_json(conv_to_json(f));
  REQUIRE(vals.size() == f.a.size());
  for (size_t i = 0; i < vals.size(); ++i) CHECK(std::abs(vals[i] - f.a[i]) < 1e-15);
}

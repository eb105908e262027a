#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace glab {

using Rat = boost::multiprecision::cpp_rational;

// Dense rational matrix, row major. Everything here is exact; the only
// floating point in this header is absent on purpose.
struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), Rat(0)) {}

  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static RatMat identity(int n);
};

RatMat rat_mul(const RatMat& x, const RatMat& y);
RatMat rat_add(const RatMat& x, const RatMat& y);
RatMat rat_sub(const RatMat& x, const RatMat& y);
RatMat rat_scale(const Rat& c, const RatMat& x);
RatMat rat_transpose(const RatMat& x);
bool rat_eq(const RatMat& x, const RatMat& y);
bool rat_is_zero(const RatMat& x);

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rat_rref(RatMat& m);

int rat_rank(const RatMat& m);

// Columns form a basis of the kernel (cols == 0 when injective).
RatMat rat_nullspace(const RatMat& m);

// One solution of m x = b (b a column vector), if any.
std::optional<RatMat> rat_solve(const RatMat& m, const RatMat& b);

std::optional<RatMat> rat_inverse(const RatMat& m);

// Kronecker product, row-major convention: (i1*r2+i2, j1*c2+j2).
RatMat rat_kron(const RatMat& x, const RatMat& y);

// Do the columns of x and y span the same subspace?
bool same_column_space(const RatMat& x, const RatMat& y);

// Rational square root when one exists.
std::optional<Rat> rat_sqrt(const Rat& v);

// Rank of the reduction mod p = 2^61 - 1. Entries whose denominator is
// divisible by p are rejected (never happens for the sizes used here).
// Agreement with rat_rank is a cheap independent route to the same integer.
int modp_rank(const RatMat& m);

// Exact positive-semidefiniteness for a symmetric rational matrix, by
// pivoted LDL^T: every pivot must be positive, and once no positive diagonal
// remains the rest of the matrix must vanish (a symmetric matrix with zero
// diagonal and a nonzero off-diagonal entry has an indefinite 2x2 minor).
// Returns the rank as a byproduct via *rank_out when non-null.
bool rat_is_psd(const RatMat& m, int* rank_out = nullptr);

}  // namespace glab

#include "glab/exact.hpp"

#include <stdexcept>

namespace glab {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

static void check_same_shape(const RatMat& x, const RatMat& y, const char* who) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument(std::string(who) + ": shape mismatch");
}

RatMat rat_mul(const RatMat& x, const RatMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("rat_mul: inner dimensions differ");
  RatMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) out.at(i, j) += v * y.at(k, j);
    }
  return out;
}

RatMat rat_add(const RatMat& x, const RatMat& y) {
  check_same_shape(x, y, "rat_add");
  RatMat out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

RatMat rat_sub(const RatMat& x, const RatMat& y) {
  check_same_shape(x, y, "rat_sub");
  RatMat out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
  return out;
}

RatMat rat_scale(const Rat& c, const RatMat& x) {
  RatMat out = x;
  for (auto& v : out.a) v *= c;
  return out;
}

RatMat rat_transpose(const RatMat& x) {
  RatMat out(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
  return out;
}

bool rat_eq(const RatMat& x, const RatMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  return x.a == y.a;
}

bool rat_is_zero(const RatMat& x) {
  for (const auto& v : x.a)
    if (v != 0) return false;
  return true;
}

std::vector<int> rat_rref(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
    const Rat inv = Rat(1) / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      const Rat f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rat_rank(const RatMat& m) {
  RatMat c = m;
  return int(rat_rref(c).size());
}

RatMat rat_nullspace(const RatMat& m) {
  RatMat r = m;
  const std::vector<int> pivots = rat_rref(r);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMat out(m.cols, int(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    out.at(fc, int(k)) = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi) out.at(pivots[pi], int(k)) = -r.at(int(pi), fc);
  }
  return out;
}

std::optional<RatMat> rat_solve(const RatMat& m, const RatMat& b) {
  if (b.rows != m.rows || b.cols != 1) throw std::invalid_argument("rat_solve: b shape");
  RatMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b.at(i, 0);
  }
  const std::vector<int> pivots = rat_rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // 0 = 1 row
  RatMat x(m.cols, 1);
  for (size_t pi = 0; pi < pivots.size(); ++pi) x.at(pivots[pi], 0) = aug.at(int(pi), m.cols);
  return x;
}

std::optional<RatMat> rat_inverse(const RatMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("rat_inverse: not square");
  const int n = m.rows;
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  const std::vector<int> pivots = rat_rref(aug);
  if (int(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

RatMat rat_kron(const RatMat& x, const RatMat& y) {
  RatMat out(x.rows * y.rows, x.cols * y.cols);
  for (int i1 = 0; i1 < x.rows; ++i1)
    for (int j1 = 0; j1 < x.cols; ++j1) {
      const Rat& v = x.at(i1, j1);
      if (v == 0) continue;
      for (int i2 = 0; i2 < y.rows; ++i2)
        for (int j2 = 0; j2 < y.cols; ++j2)
          out.at(i1 * y.rows + i2, j1 * y.cols + j2) = v * y.at(i2, j2);
    }
  return out;
}

bool same_column_space(const RatMat& x, const RatMat& y) {
  if (x.rows != y.rows) return false;
  RatMat both(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) both.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) both.at(i, x.cols + j) = y.at(i, j);
  }
  const int rx = rat_rank(x), ry = rat_rank(y);
  return rx == ry && rat_rank(both) == rx;
}

std::optional<Rat> rat_sqrt(const Rat& v) {
  using boost::multiprecision::cpp_int;
  if (v < 0) return std::nullopt;
  const cpp_int num = boost::multiprecision::numerator(v);
  const cpp_int den = boost::multiprecision::denominator(v);
  const cpp_int rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rat(rn, rd);
}

namespace {

constexpr uint64_t kP = (uint64_t(1) << 61) - 1;

uint64_t mulmod(uint64_t x, uint64_t y) {
  return uint64_t((__uint128_t(x) * y) % kP);
}

uint64_t powmod(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

uint64_t rat_modp(const Rat& v) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::numerator(v);
  const cpp_int den = boost::multiprecision::denominator(v);
  cpp_int nm = num % kP;
  if (nm < 0) nm += kP;
  const cpp_int dm = den % kP;
  if (dm == 0) throw std::domain_error("modp_rank: denominator divisible by p");
  const uint64_t n64 = nm.convert_to<uint64_t>();
  const uint64_t d64 = dm.convert_to<uint64_t>();
  return mulmod(n64, powmod(d64, kP - 2));
}

}  // namespace

int modp_rank(const RatMat& m) {
  std::vector<uint64_t> w(m.a.size());
  for (size_t i = 0; i < m.a.size(); ++i) w[i] = rat_modp(m.a[i]);
  auto at = [&](int i, int j) -> uint64_t& { return w[size_t(i) * m.cols + j]; };
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int p = -1;
    for (int i = rank; i < m.rows; ++i)
      if (at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != rank)
      for (int j = col; j < m.cols; ++j) std::swap(at(p, j), at(rank, j));
    const uint64_t inv = powmod(at(rank, col), kP - 2);
    for (int j = col; j < m.cols; ++j) at(rank, j) = mulmod(at(rank, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank || at(i, col) == 0) continue;
      const uint64_t f = at(i, col);
      for (int j = col; j < m.cols; ++j) {
        const uint64_t sub = mulmod(f, at(rank, j));
        at(i, j) = (at(i, j) + kP - sub) % kP;
      }
    }
    ++rank;
  }
  return rank;
}

bool rat_is_psd(const RatMat& m, int* rank_out) {
  if (m.rows != m.cols) throw std::invalid_argument("rat_is_psd: not square");
  if (!rat_eq(m, rat_transpose(m))) throw std::invalid_argument("rat_is_psd: not symmetric");
  RatMat w = m;
  const int n = m.rows;
  std::vector<bool> done(n, false);
  int rank = 0;
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && w.at(i, i) > 0 && (p < 0 || w.at(i, i) > w.at(p, p))) p = i;
    if (p < 0) {
      // no positive diagonal left; PSD iff the remaining block vanishes
      for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        if (w.at(i, i) != 0) return false;  // strictly negative (positives exhausted)
        for (int j = 0; j < n; ++j)
          if (!done[j] && w.at(i, j) != 0) return false;
      }
      break;
    }
    const Rat piv = w.at(p, p);
    for (int i = 0; i < n; ++i) {
      if (done[i] || i == p || w.at(i, p) == 0) continue;
      const Rat f = w.at(i, p) / piv;
      for (int j = 0; j < n; ++j)
        if (!done[j]) w.at(i, j) -= f * w.at(p, j);
    }
    for (int j = 0; j < n; ++j) {
      w.at(p, j) = 0;
      w.at(j, p) = 0;
    }
    done[p] = true;
    ++rank;
  }
  if (rank_out) *rank_out = rank;
  return true;
}

}  // namespace glab

#include "glab/operator_norms.hpp"

#include <cmath>
#include <stdexcept>

namespace glab {

double sigma_max_svd(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 32 && m.cols() <= 32) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

namespace {
// splitmix64, used only to get a reproducible starting vector
std::uint64_t mix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double power_run(const Eigen::MatrixXcd& m, int max_iters, double tol, std::uint64_t seed) {
  const Eigen::Index n = m.cols();
  Eigen::VectorXcd v(n);
  std::uint64_t s = seed;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = double(mix64(s) >> 11) * 0x1p-53 - 0.5;
    const double im = double(mix64(s) >> 11) * 0x1p-53 - 0.5;
    v(i) = std::complex<double>(re, im);
  }
  double nv = v.norm();
  if (nv == 0) {
    v.setOnes();
    nv = v.norm();
  }
  v /= nv;
  double lam = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    const double wn = w.norm();
    if (wn == 0) return 0.0;  // landed in the kernel of m
    const double lam_new = std::real(v.dot(w));
    w /= wn;
    v.swap(w);
    if (it > 4 && std::abs(lam_new - lam) <= tol * std::max(1.0, std::abs(lam_new))) {
      lam = lam_new;
      break;
    }
    lam = lam_new;
  }
  return std::sqrt(std::max(0.0, lam));
}
}  // namespace

double sigma_max_power(const Eigen::MatrixXcd& m, int max_iters, double tol, std::uint64_t seed) {
  if (m.size() == 0) return 0.0;
  // the start vector could be nearly orthogonal to the top singular space, so
  // take the best of a few seeded restarts
  double best = 0.0;
  for (int r = 0; r < 3; ++r) best = std::max(best, power_run(m, max_iters, tol, seed + 101 * r));
  return best;
}

double op_norm(const KernelOperator& k) {
  double best = 0.0;
  for (const auto& b : k.blocks) {
    const double s =
        (b.m.rows() > 1024 || b.m.cols() > 1024) ? sigma_max_power(b.m) : sigma_max_svd(b.m);
    best = std::max(best, s);
  }
  return best;
}

double op_norm_oracle(const KernelOperator& k) {
  double best = 0.0;
  for (const auto& b : k.blocks) best = std::max(best, sigma_max_power(b.m));
  return best;
}

std::complex<double> op_trace(const KernelOperator& k) {
  std::complex<double> t = 0.0;
  for (const auto& b : k.blocks) t += double(b.multiplicity) * b.m.trace();
  return t;
}

double hs_norm(const KernelOperator& k) {
  double s = 0.0;
  for (const auto& b : k.blocks) s += double(b.multiplicity) * b.m.squaredNorm();
  return std::sqrt(s);
}

namespace {
void check_same_shape(const KernelOperator& a, const KernelOperator& b, const char* who) {
  if (a.blocks.size() != b.blocks.size())
    throw std::invalid_argument(std::string(who) + ": block counts differ");
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].m.rows() != b.blocks[i].m.rows() ||
        a.blocks[i].m.cols() != b.blocks[i].m.cols() ||
        a.blocks[i].multiplicity != b.blocks[i].multiplicity)
      throw std::invalid_argument(std::string(who) + ": block shapes differ");
  }
}
}  // namespace

KernelOperator k_scale(std::complex<double> c, const KernelOperator& a) {
  KernelOperator out = a;
  for (auto& b : out.blocks) b.m *= c;
  return out;
}

KernelOperator k_add(const KernelOperator& a, const KernelOperator& b) {
  check_same_shape(a, b, "k_add");
  KernelOperator out = a;
  for (size_t i = 0; i < out.blocks.size(); ++i) out.blocks[i].m += b.blocks[i].m;
  return out;
}

KernelOperator k_sub(const KernelOperator& a, const KernelOperator& b) {
  check_same_shape(a, b, "k_sub");
  KernelOperator out = a;
  for (size_t i = 0; i < out.blocks.size(); ++i) out.blocks[i].m -= b.blocks[i].m;
  return out;
}

KernelOperator k_mul(const KernelOperator& a, const KernelOperator& b) {
  check_same_shape(a, b, "k_mul");
  KernelOperator out = a;
  for (size_t i = 0; i < out.blocks.size(); ++i) out.blocks[i].m = a.blocks[i].m * b.blocks[i].m;
  return out;
}

KernelOperator k_adjoint(const KernelOperator& a) {
  KernelOperator out = a;
  for (auto& b : out.blocks) b.m = b.m.adjoint().eval();
  return out;
}

KernelOperator k_commutator(const KernelOperator& a, const KernelOperator& b) {
  return k_sub(k_mul(a, b), k_mul(b, a));
}

}  // namespace glab

#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace glab {

// A bounded operator presented block-diagonally. Representations of the lab's
// groupoid algebras all decompose over source fibers (finite case) or over
// rings / angular modes (smooth case); `multiplicity` counts how many
// identical copies of a block occur so we never store repeats.
struct KernelOperator {
  struct Block {
    Eigen::MatrixXcd m;
    int multiplicity = 1;
    std::string label;
  };
  std::vector<Block> blocks;

  int max_dim() const {
    int d = 0;
    for (const auto& b : blocks) d = std::max(d, int(b.m.rows()));
    return d;
  }
  std::int64_t total_dim() const {
    std::int64_t d = 0;
    for (const auto& b : blocks) d += std::int64_t(b.m.rows()) * b.multiplicity;
    return d;
  }
};

double sigma_max_svd(const Eigen::MatrixXcd& m);
// Independent route: power iteration on m^H m with a seeded deterministic
// start and restarts. Kept free of Eigen's decompositions on purpose so norm
// checks have two genuinely different implementations to compare.
double sigma_max_power(const Eigen::MatrixXcd& m, int max_iters = 6000,
                       double tol = 1e-13, std::uint64_t seed = 0x5bd1e995u);

double op_norm(const KernelOperator& k);         // SVD per block (power fallback > 1024)
double op_norm_oracle(const KernelOperator& k);  // power-iteration route only
std::complex<double> op_trace(const KernelOperator& k);
double hs_norm(const KernelOperator& k);

KernelOperator k_scale(std::complex<double> c, const KernelOperator& a);
KernelOperator k_add(const KernelOperator& a, const KernelOperator& b);
KernelOperator k_sub(const KernelOperator& a, const KernelOperator& b);
KernelOperator k_mul(const KernelOperator& a, const KernelOperator& b);
KernelOperator k_adjoint(const KernelOperator& a);
KernelOperator k_commutator(const KernelOperator& a, const KernelOperator& b);

}  // namespace glab

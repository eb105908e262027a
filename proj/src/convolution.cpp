#include "glab/convolution.hpp"

#include <random>

#include <nlohmann/json.hpp>

namespace glab {

double conv_sup(const ConvElemC& f) {
  double m = 0.0;
  for (const auto& v : f.a) m = std::max(m, std::abs(v));
  return m;
}

KernelOperator left_regular(const ConvElemC& f) {
  const FiniteGroupoid& g = *f.g;
  const auto sfib = source_fibers(g);
  KernelOperator k;
  for (size_t slot = 0; slot < g.units.size(); ++slot) {
    const auto& fib = sfib[slot];
    const double w = g.haar[slot].value();
    Eigen::MatrixXcd m(fib.size(), fib.size());
    for (size_t i = 0; i < fib.size(); ++i)
      for (size_t j = 0; j < fib.size(); ++j) {
        const int left = g.compose(fib[i], g.inv[fib[j]]);
        m(i, j) = w * f.a[left];
      }
    k.blocks.push_back({std::move(m), 1, "fiber_u" + std::to_string(g.units[slot])});
  }
  return k;
}

Eigen::MatrixXcd matrix_units_iso(const ConvElemC& f) {
  const FiniteGroupoid& g = *f.g;
  if (!is_pair_groupoid(g))
    throw std::invalid_argument("matrix_units_iso: not a pair groupoid");
  const int m = int(g.units.size());
  const double c = g.haar[0].value();
  Eigen::MatrixXcd out(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out(a, b) = c * f.a[pair_arrow(m, a, b)];
  return out;
}

ConvElemC matrix_units_iso_inv(const FiniteGroupoid& g, const Eigen::MatrixXcd& mat) {
  if (!is_pair_groupoid(g))
    throw std::invalid_argument("matrix_units_iso_inv: not a pair groupoid");
  const int m = int(g.units.size());
  if (mat.rows() != m || mat.cols() != m)
    throw std::invalid_argument("matrix_units_iso_inv: size mismatch");
  const double c = g.haar[0].value();
  auto f = conv_zero<std::complex<double>>(g);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) f.a[pair_arrow(m, a, b)] = mat(a, b) / c;
  return f;
}

ConvElemC random_conv_elem(const FiniteGroupoid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto f = conv_zero<std::complex<double>>(g);
  for (auto& v : f.a) v = std::complex<double>(u(rng), u(rng));
  return f;
}

std::string conv_to_json(const ConvElemC& f) {
  nlohmann::json j;
  j["n_arrows"] = f.g->n_arrows;
  auto vals = nlohmann::json::array();
  for (const auto& v : f.a) vals.push_back({v.real(), v.imag()});
  j["values"] = vals;
  return j.dump(2);
}

std::vector<std::complex<double>> conv_values_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<std::complex<double>> out;
  for (const auto& row : j.at("values"))
    out.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
  return out;
}

}  // namespace glab

#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace glab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Uniform 1-D sample grid: points lo, lo+step, ..., lo+(n-1)*step.
struct Grid1D {
  double lo = 0.0;
  double step = 1.0;
  int n = 0;

  double point(int i) const { return lo + step * i; }
  double hi() const { return lo + step * (n - 1); }
  double extent() const { return step * n; }  // period of the trig interpolant

  // Symmetric grid covering [-length/2, length/2) with n points.
  static Grid1D centered(double length, int n) {
    if (n <= 0 || length <= 0) throw std::invalid_argument("grid: need n>0, length>0");
    return {-length / 2.0, length / n, n};
  }
  // Momentum grid dual to a position grid: spacing 2*pi/(n*h), extent +-pi/h.
  static Grid1D nyquist_dual(const Grid1D& x) {
    double dp = kTwoPi / (x.n * x.step);
    return {-dp * (x.n / 2), dp, x.n};
  }
  // Angle circle [0, 2*pi) with n points.
  static Grid1D circle(int n) {
    if (n <= 0) throw std::invalid_argument("grid: need n>0");
    return {0.0, kTwoPi / n, n};
  }
  // Integer Fourier modes dual to an n-point circle: -(n/2), ..., n/2-1.
  static Grid1D circle_dual(int n) { return {-double(n / 2), 1.0, n}; }

  // Nearest sample index, clamped into range.
  int clamp_index(double v) const {
    int i = int(std::lround((v - lo) / step));
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return i;
  }
  bool contains(double v) const { return v >= lo - 0.5 * step && v <= hi() + 0.5 * step; }
};

// Row-major index helper over a list of axes (last axis fastest).
struct NdIndex {
  std::vector<int> dims;
  std::vector<std::int64_t> strides;

  explicit NdIndex(std::vector<int> d = {}) { reset(std::move(d)); }
  void reset(std::vector<int> d) {
    dims = std::move(d);
    strides.assign(dims.size(), 1);
    for (int k = int(dims.size()) - 2; k >= 0; --k)
      strides[k] = strides[k + 1] * dims[k + 1];
  }
  std::int64_t size() const {
    std::int64_t s = dims.empty() ? 0 : 1;
    for (int d : dims) s *= d;
    return s;
  }
  std::int64_t flat(const std::vector<int>& idx) const {
    std::int64_t f = 0;
    for (size_t k = 0; k < dims.size(); ++k) f += strides[k] * idx[k];
    return f;
  }
  std::vector<int> unflat(std::int64_t f) const {
    std::vector<int> idx(dims.size());
    for (size_t k = 0; k < dims.size(); ++k) {
      idx[k] = int(f / strides[k]);
      f %= strides[k];
    }
    return idx;
  }
};

}  // namespace glab

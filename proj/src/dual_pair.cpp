#include "glab/dual_pair.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "glab/io_util.hpp"

namespace glab {

namespace {

bool is_line_pair(const SmoothGroupoidDescriptor& d) {
  return d.family == Family::PairGrid && d.axes.size() == 1 && d.axes[0].n > 1;
}

void check_eta(const MomentumPair& mp, const std::vector<double>& q, const std::vector<double>& p,
               const char* who) {
  if (int(q.size()) != mp.m_dim || int(p.size()) != mp.m_dim)
    throw std::invalid_argument(std::string(who) + ": covector dims do not match the base");
}

double radius(const std::vector<double>& q) {
  const double r = std::hypot(q[0], q[1]);
  if (r <= 0.0) throw std::invalid_argument("momentum map: the polar family excludes the origin");
  return r;
}

std::vector<double> rotate(const std::vector<double>& q, double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {c * q[0] - s * q[1], s * q[0] + c * q[1]};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Fourth-order Richardson value of F'(0) from central differences.
double richardson(const std::function<double(double)>& F, double eps) {
  auto D = [&](double s) { return (F(s) - F(-s)) / (2 * s); };
  return (4.0 * D(eps / 2) - D(eps)) / 3.0;
}

}  // namespace

MomentumPair momentum_maps(const SmoothGroupoidDescriptor& g) {
  if (!is_line_pair(g))
    throw std::invalid_argument("momentum_maps: the trivial partner wants a 1-d pair groupoid");
  MomentumPair mp;
  mp.left = g;
  mp.combo = DualPairCombo::PairTrivial;
  mp.m_dim = 1;
  mp.g_dim = 2;
  mp.g_base_dim = 1;
  mp.h_dim = 0;
  mp.h_base_dim = 0;
  return mp;
}

MomentumPair momentum_maps(const SmoothGroupoidDescriptor& g, const SmoothGroupoidDescriptor& h) {
  MomentumPair mp;
  mp.left = g;
  mp.right = h;
  if (is_line_pair(g) && is_line_pair(h)) {
    mp.combo = DualPairCombo::PairPair;
    mp.m_dim = 2;
    mp.g_dim = 2;
    mp.g_base_dim = 1;
    mp.h_dim = 2;
    mp.h_base_dim = 1;
    return mp;
  }
  if (g.family == Family::GaugeSO2Polar && h.so2_group_only()) {
    mp.combo = DualPairCombo::GaugeSO2;
    mp.m_dim = 2;
    mp.g_dim = 3;
    mp.g_base_dim = 1;
    mp.h_dim = 1;
    mp.h_base_dim = 0;
    return mp;
  }
  throw std::invalid_argument("momentum_maps: unsupported family combination");
}

std::vector<double> j_g(const MomentumPair& mp, const std::vector<double>& q,
                        const std::vector<double>& p) {
  check_eta(mp, q, p, "j_g");
  switch (mp.combo) {
    case DualPairCombo::PairTrivial:
      return {q[0], p[0]};
    case DualPairCombo::PairPair:
      return {q[0], p[0]};
    case DualPairCombo::GaugeSO2: {
      const double r = radius(q);
      return {r, (q[0] * p[0] + q[1] * p[1]) / r, q[0] * p[1] - q[1] * p[0]};
    }
  }
  throw std::logic_error("j_g: bad combo");
}

std::vector<double> j_h(const MomentumPair& mp, const std::vector<double>& q,
                        const std::vector<double>& p) {
  check_eta(mp, q, p, "j_h");
  switch (mp.combo) {
    case DualPairCombo::PairTrivial:
      return {};
    case DualPairCombo::PairPair:
      return {q[1], -p[1]};
    case DualPairCombo::GaugeSO2:
      radius(q);  // reject the origin like the closed form on the other leg
      return {q[0] * p[1] - q[1] * p[0]};
  }
  throw std::logic_error("j_h: bad combo");
}

std::vector<double> j_g_fd(const MomentumPair& mp, const std::vector<double>& q,
                           const std::vector<double>& p, double eps) {
  check_eta(mp, q, p, "j_g_fd");
  switch (mp.combo) {
    case DualPairCombo::PairTrivial:
    case DualPairCombo::PairPair: {
      // pair(X) moves the first coordinate: exp(tX).q = q + t e1
      auto F = [&](double t) {
        std::vector<double> c = q;
        c[0] += t;
        return dot(p, c);
      };
      return {q[0], richardson(F, eps)};
    }
    case DualPairCombo::GaugeSO2: {
      const double r = radius(q);
      auto Fr = [&](double t) {  // unit radial translation
        return dot(p, {q[0] * (1 + t / r), q[1] * (1 + t / r)});
      };
      auto Fth = [&](double t) {  // counterclockwise rotation
        return dot(p, rotate(q, t));
      };
      return {r, richardson(Fr, eps), richardson(Fth, eps)};
    }
  }
  throw std::logic_error("j_g_fd: bad combo");
}

std::vector<double> j_h_fd(const MomentumPair& mp, const std::vector<double>& q,
                           const std::vector<double>& p, double eps) {
  check_eta(mp, q, p, "j_h_fd");
  switch (mp.combo) {
    case DualPairCombo::PairTrivial:
      return {};
    case DualPairCombo::PairPair: {
      // right pair action composes onto the second coordinate
      auto F = [&](double t) {
        std::vector<double> c = q;
        c[1] += t;
        return dot(p, c);
      };
      return {q[1], -richardson(F, eps)};
    }
    case DualPairCombo::GaugeSO2: {
      radius(q);
      // right rotation runs clockwise: the orientation of the so(2) basis is
      // calibrated so the quantizer's mode m carries covector value +hbar*m
      auto F = [&](double t) { return dot(p, rotate(q, -t)); };
      return {-richardson(F, eps)};
    }
  }
  throw std::logic_error("j_h_fd: bad combo");
}

PhaseBox default_phase_box(const MomentumPair& mp, int nq, int np) {
  if (nq <= 0 || np <= 0) throw std::invalid_argument("default_phase_box: need nq, np > 0");
  PhaseBox box;
  switch (mp.combo) {
    case DualPairCombo::PairTrivial:
      box.q_axes = {Grid1D::centered(16.0, nq)};
      box.p_axes = {Grid1D::centered(8.0, np)};
      return box;
    case DualPairCombo::PairPair:
      box.q_axes = {Grid1D::centered(8.0, nq), Grid1D::centered(8.0, nq)};
      box.p_axes = {Grid1D::centered(4.0, np), Grid1D::centered(4.0, np)};
      return box;
    case DualPairCombo::GaugeSO2:
      // positive quadrant away from the origin; radii land in [1, 5.3]
      box.q_axes = {Grid1D{0.7, 3.0 / nq, nq}, Grid1D{0.7, 3.0 / nq, nq}};
      box.p_axes = {Grid1D::centered(4.0, np), Grid1D::centered(4.0, np)};
      return box;
  }
  throw std::logic_error("default_phase_box: bad combo");
}

namespace {

void check_box(const MomentumPair& mp, const PhaseBox& box, const char* who, int min_n) {
  if (int(box.q_axes.size()) != mp.m_dim || int(box.p_axes.size()) != mp.m_dim)
    throw std::invalid_argument(std::string(who) + ": box dims do not match the base");
  for (const auto& a : box.q_axes)
    if (a.n < min_n) throw std::invalid_argument(std::string(who) + ": box axis too short");
  for (const auto& a : box.p_axes)
    if (a.n < min_n) throw std::invalid_argument(std::string(who) + ": box axis too short");
}

std::vector<int> box_dims(const PhaseBox& box) {
  std::vector<int> d;
  for (const auto& a : box.q_axes) d.push_back(a.n);
  for (const auto& a : box.p_axes) d.push_back(a.n);
  return d;
}

// Evaluate fn composed with one leg of the momentum pair over the whole box,
// odometer order (last axis fastest).
void eval_leg(const MomentumPair& mp, const PhaseBox& box, const DualFn& fn, bool left_leg,
              std::vector<double>& out) {
  const int m = mp.m_dim;
  const auto dims = box_dims(box);
  std::int64_t total = 1;
  for (int n : dims) total *= n;
  out.resize(total);
  std::vector<int> idx(dims.size(), 0);
  std::vector<double> q(m), p(m);
  for (std::int64_t f = 0; f < total; ++f) {
    for (int k = 0; k < m; ++k) q[k] = box.q_axes[k].point(idx[k]);
    for (int k = 0; k < m; ++k) p[k] = box.p_axes[k].point(idx[m + k]);
    out[f] = fn(left_leg ? j_g(mp, q, p) : j_h(mp, q, p));
    for (int k = int(dims.size()) - 1; k >= 0; --k) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
}

// max |{F, G}| over interior points, both functions given as sampled arrays.
double bracket_max(const PhaseBox& box, const std::vector<double>& F, const std::vector<double>& G,
                   int* n_points) {
  const int m = int(box.q_axes.size());
  const auto dims = box_dims(box);
  NdIndex nd(dims);
  auto deriv = [&](const std::vector<double>& a, std::int64_t f, std::int64_t s, double h) {
    return (-a[f + 2 * s] + 8 * a[f + s] - 8 * a[f - s] + a[f - 2 * s]) / (12 * h);
  };
  std::vector<int> idx(dims.size(), 2);
  double worst = 0.0;
  int count = 0;
  bool done = false;
  while (!done) {
    const std::int64_t f = nd.flat(idx);
    double br = 0.0;
    for (int i = 0; i < m; ++i) {
      const std::int64_t sq = nd.strides[i], sp = nd.strides[m + i];
      const double hq = box.q_axes[i].step, hp = box.p_axes[i].step;
      br += deriv(F, f, sq, hq) * deriv(G, f, sp, hp) - deriv(F, f, sp, hp) * deriv(G, f, sq, hq);
    }
    worst = std::max(worst, std::abs(br));
    ++count;
    done = true;
    for (int k = int(dims.size()) - 1; k >= 0; --k) {
      if (++idx[k] <= dims[k] - 3) {
        done = false;
        break;
      }
      idx[k] = 2;
    }
  }
  if (n_points) *n_points = count;
  return worst;
}

CommutationReport run_bracket_battery(const MomentumPair& mp, const PhaseBox& box,
                                      const std::vector<DualFn>& fs, const std::vector<DualFn>& gs,
                                      bool f_on_left, double tol, const char* who) {
  check_box(mp, box, who, 5);
  if (fs.empty() || fs.size() != gs.size())
    throw std::invalid_argument(std::string(who) + ": battery sizes differ or empty");
  CommutationReport rep;
  rep.tol = tol;
  rep.n_pairs = int(fs.size());
  std::vector<double> F, G;
  for (size_t k = 0; k < fs.size(); ++k) {
    eval_leg(mp, box, fs[k], f_on_left, F);
    eval_leg(mp, box, gs[k], false, G);
    int n = 0;
    rep.max_bracket = std::max(rep.max_bracket, bracket_max(box, F, G, &n));
    rep.n_points = n;
  }
  rep.passes = rep.max_bracket < tol;
  return rep;
}

}  // namespace

CommutationReport commutation_check(const MomentumPair& mp, const PhaseBox& box,
                                    const std::vector<DualFn>& fs, const std::vector<DualFn>& gs,
                                    double tol) {
  return run_bracket_battery(mp, box, fs, gs, true, tol, "commutation_check");
}

CommutationReport h_poisson_map_check(const MomentumPair& mp, const PhaseBox& box,
                                      const std::vector<DualFn>& fs, const std::vector<DualFn>& gs,
                                      double tol) {
  if (mp.combo != DualPairCombo::GaugeSO2)
    throw std::invalid_argument("h_poisson_map_check: rotation combo only");
  return run_bracket_battery(mp, box, fs, gs, false, tol, "h_poisson_map_check");
}

std::pair<std::vector<DualFn>, std::vector<DualFn>> standard_commutation_battery(
    const MomentumPair& mp) {
  std::vector<DualFn> fs, gs;
  switch (mp.combo) {
    case DualPairCombo::PairTrivial: {
      fs = {[](const std::vector<double>& t) { return t[0]; },
            [](const std::vector<double>& t) { return t[1]; },
            [](const std::vector<double>& t) { return t[0] * t[0] / 4; },
            [](const std::vector<double>& t) { return t[1] * t[1] / 4; },
            [](const std::vector<double>& t) { return t[0] * t[1] / 8; },
            [](const std::vector<double>& t) { return std::sin(t[0] / 2); },
            [](const std::vector<double>& t) { return std::exp(-t[0] * t[0] / 8 - t[1] * t[1] / 8); },
            [](const std::vector<double>& t) { return t[0] + t[1] / 2; },
            [](const std::vector<double>& t) { return std::cos(t[1] / 2); },
            [](const std::vector<double>& t) { return 1.0 / (1.0 + t[0] * t[0] / 16); }};
      const double cs[10] = {1.0, 2.0, -0.5, 0.7, 3.0, 1.5, -2.0, 0.25, 1.0, 0.5};
      for (double c : cs) gs.push_back([c](const std::vector<double>&) { return c; });
      return {fs, gs};
    }
    case DualPairCombo::PairPair: {
      auto mk = [](int which) {
        std::vector<DualFn> v = {
            [](const std::vector<double>& t) { return t[0]; },
            [](const std::vector<double>& t) { return t[1]; },
            [](const std::vector<double>& t) { return t[0] * t[0] / 4; },
            [](const std::vector<double>& t) { return t[1] * t[1] / 4; },
            [](const std::vector<double>& t) { return t[0] * t[1] / 8; },
            [](const std::vector<double>& t) { return std::sin(t[0] / 2); },
            [](const std::vector<double>& t) { return std::exp(-t[0] * t[0] / 8 - t[1] * t[1] / 8); },
            [](const std::vector<double>& t) { return t[0] - t[1] / 2; },
            [](const std::vector<double>& t) { return std::cos(t[1] / 2); },
            [](const std::vector<double>& t) { return 1.0 / (1.0 + t[0] * t[0] / 8); }};
        if (which == 1) std::rotate(v.begin(), v.begin() + 3, v.end());
        return v;
      };
      return {mk(0), mk(1)};
    }
    case DualPairCombo::GaugeSO2: {
      // scaled so fifth derivatives through the chain rule stay small: the
      // angular covector grows like |q||p| over the box, so its envelopes
      // are wide and the polynomial members are tamped down
      fs = {[](const std::vector<double>& t) { return t[0]; },
            [](const std::vector<double>& t) { return t[1]; },
            [](const std::vector<double>& t) { return t[2]; },
            [](const std::vector<double>& t) { return t[0] * t[0] / 4; },
            [](const std::vector<double>& t) { return t[0] * t[2] / 16; },
            [](const std::vector<double>& t) { return t[1] * t[2] / 16; },
            [](const std::vector<double>& t) { return std::exp(-(t[0] - 2.2) * (t[0] - 2.2) / 4); },
            [](const std::vector<double>& t) { return std::sin(t[1] / 2); },
            [](const std::vector<double>& t) { return std::exp(-t[2] * t[2] / 64); },
            [](const std::vector<double>& t) { return std::cos(t[2] / 8); }};
      gs = {[](const std::vector<double>& l) { return l[0]; },
            [](const std::vector<double>& l) { return l[0] * l[0] / 16; },
            [](const std::vector<double>& l) { return 1.0 + l[0] / 2; },
            [](const std::vector<double>& l) { return std::sin(l[0] / 8); },
            [](const std::vector<double>& l) { return std::exp(-l[0] * l[0] / 64); },
            [](const std::vector<double>& l) { return l[0]; },
            [](const std::vector<double>& l) { return std::cos(l[0] / 8); },
            [](const std::vector<double>& l) { return l[0] / 4; },
            [](const std::vector<double>& l) { return std::exp(-l[0] * l[0] / 48); },
            [](const std::vector<double>& l) { return l[0] * l[0] / 32; }};
      return {fs, gs};
    }
  }
  throw std::logic_error("standard_commutation_battery: bad combo");
}

double fiber_linearity_error(const MomentumPair& mp, const PhaseBox& box,
                             const std::vector<double>& alphas) {
  check_box(mp, box, "fiber_linearity_error", 1);
  const int m = mp.m_dim;
  auto samples = [](const Grid1D& g) {
    std::vector<double> v;
    const int stride = std::max(1, g.n / 5);
    for (int i = 0; i < g.n; i += stride) v.push_back(g.point(i));
    return v;
  };
  std::vector<std::vector<double>> qs(m), ps(m);
  for (int k = 0; k < m; ++k) qs[k] = samples(box.q_axes[k]);
  for (int k = 0; k < m; ++k) ps[k] = samples(box.p_axes[k]);

  double worst = 0.0;
  std::vector<int> idx(2 * m, 0);
  std::vector<int> lens;
  for (int k = 0; k < m; ++k) lens.push_back(int(qs[k].size()));
  for (int k = 0; k < m; ++k) lens.push_back(int(ps[k].size()));
  bool done = false;
  std::vector<double> q(m), p(m), ap(m);
  while (!done) {
    for (int k = 0; k < m; ++k) q[k] = qs[k][idx[k]];
    for (int k = 0; k < m; ++k) p[k] = ps[k][idx[m + k]];
    for (double a : alphas) {
      for (int k = 0; k < m; ++k) ap[k] = a * p[k];
      for (int leg = 0; leg < 2; ++leg) {
        const auto base = leg ? j_h(mp, q, p) : j_g(mp, q, p);
        const auto scaled = leg ? j_h(mp, q, ap) : j_g(mp, q, ap);
        const int nb = leg ? mp.h_base_dim : mp.g_base_dim;
        for (size_t c = 0; c < base.size(); ++c) {
          const double want = int(c) < nb ? base[c] : a * base[c];
          worst = std::max(worst, std::abs(scaled[c] - want));
        }
      }
    }
    done = true;
    for (int k = int(idx.size()) - 1; k >= 0; --k) {
      if (++idx[k] < lens[k]) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
  }
  return worst;
}

namespace {

struct CellHash {
  size_t operator()(const std::vector<long long>& k) const {
    size_t h = 1469598103934665603ull;
    for (long long v : k) {
      h ^= std::hash<long long>()(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

using CellMap = std::unordered_map<std::vector<long long>, std::vector<int>, CellHash>;

std::vector<long long> cell_of(const double* x, int d, double cell) {
  std::vector<long long> k(d);
  for (int i = 0; i < d; ++i) k[i] = (long long)std::floor(x[i] / cell);
  return k;
}

// Visit every bucket whose cell is within one step of `key` in each axis.
template <typename Fn>
void for_neighbors(const CellMap& map, const std::vector<long long>& key, Fn&& fn) {
  const int d = int(key.size());
  std::vector<long long> probe(key);
  std::vector<int> off(d, -1);
  while (true) {
    for (int i = 0; i < d; ++i) probe[i] = key[i] + off[i];
    auto it = map.find(probe);
    if (it != map.end())
      for (int j : it->second) fn(j);
    int k = d - 1;
    while (k >= 0 && off[k] == 1) off[k--] = -1;
    if (k < 0) break;
    ++off[k];
  }
}

bool linf_within(const double* a, const double* b, int d, double tol) {
  for (int i = 0; i < d; ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// Greedy epsilon-net insertion: keep the point unless an accepted one sits
// within tol in max-norm.
void net_insert(std::vector<std::vector<double>>& pts, CellMap& map, std::vector<double> cand,
                double tol) {
  const int d = int(cand.size());
  const auto key = cell_of(cand.data(), d, tol);
  bool dup = false;
  for_neighbors(map, key, [&](int j) {
    if (!dup && linf_within(cand.data(), pts[j].data(), d, tol)) dup = true;
  });
  if (dup) return;
  map[key].push_back(int(pts.size()));
  pts.push_back(std::move(cand));
}

}  // namespace

Relation lagrangian_relation(const MomentumPair& mp, const PhaseBox& box, double tolerance) {
  check_box(mp, box, "lagrangian_relation", 1);
  std::int64_t total = 1;
  for (int n : box_dims(box)) total *= n;
  if (total <= 0) throw std::invalid_argument("lagrangian_relation: empty sampling box");
  if (tolerance <= 0) {
    for (const auto& a : box.q_axes)
      if (a.n > 1) tolerance = std::max(tolerance, 2 * a.step);
    for (const auto& a : box.p_axes)
      if (a.n > 1) tolerance = std::max(tolerance, 2 * a.step);
    if (tolerance <= 0) tolerance = 1e-6;  // single-point box
  }

  Relation r;
  r.a_dim = mp.g_dim;
  r.b_dim = mp.h_dim;
  r.tolerance = tolerance;
  CellMap map;
  const int m = mp.m_dim;
  const auto dims = box_dims(box);
  std::vector<int> idx(dims.size(), 0);
  std::vector<double> q(m), p(m);
  for (std::int64_t f = 0; f < total; ++f) {
    for (int k = 0; k < m; ++k) q[k] = box.q_axes[k].point(idx[k]);
    for (int k = 0; k < m; ++k) p[k] = box.p_axes[k].point(idx[m + k]);
    auto a = j_g(mp, q, p);
    const auto b = j_h(mp, q, p);
    a.insert(a.end(), b.begin(), b.end());
    net_insert(r.points, map, std::move(a), tolerance);
    for (int k = int(dims.size()) - 1; k >= 0; --k) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
  r.degenerate = r.points.empty();
  return r;
}

Relation compose_relations(const Relation& r1, const Relation& r2, double tol) {
  if (r1.b_dim != r2.a_dim)
    throw std::invalid_argument("compose_relations: middle coordinate dims differ");
  if (tol <= 0) tol = std::max(r1.tolerance, r2.tolerance);
  if (tol <= 0) tol = 1e-9;

  Relation out;
  out.a_dim = r1.a_dim;
  out.b_dim = r2.b_dim;
  out.tolerance = tol;
  const int mid = r1.b_dim;

  // bucket r2 by the middle coordinates
  CellMap mid_map;
  for (size_t j = 0; j < r2.points.size(); ++j)
    mid_map[cell_of(r2.points[j].data(), mid, tol)].push_back(int(j));

  CellMap out_map;
  for (const auto& pa : r1.points) {
    const double* b1 = pa.data() + r1.a_dim;
    const auto key = cell_of(b1, mid, tol);
    for_neighbors(mid_map, key, [&](int j) {
      if (!linf_within(b1, r2.points[j].data(), mid, tol)) return;
      std::vector<double> joined(pa.begin(), pa.begin() + r1.a_dim);
      joined.insert(joined.end(), r2.points[j].begin() + mid, r2.points[j].end());
      net_insert(out.points, out_map, std::move(joined), tol);
    });
  }
  out.degenerate = out.points.empty();
  return out;
}

Relation identity_relation(const std::vector<Grid1D>& axes, double tolerance) {
  if (axes.empty() || tolerance <= 0)
    throw std::invalid_argument("identity_relation: need axes and a positive tolerance");
  Relation r;
  r.a_dim = r.b_dim = int(axes.size());
  r.tolerance = tolerance;
  CellMap map;
  std::vector<int> idx(axes.size(), 0);
  std::int64_t total = 1;
  for (const auto& a : axes) total *= a.n;
  if (total <= 0) throw std::invalid_argument("identity_relation: empty axes");
  for (std::int64_t f = 0; f < total; ++f) {
    std::vector<double> pt;
    for (size_t k = 0; k < axes.size(); ++k) pt.push_back(axes[k].point(idx[k]));
    pt.insert(pt.end(), pt.begin(), pt.end());
    net_insert(r.points, map, std::move(pt), tolerance);
    for (int k = int(axes.size()) - 1; k >= 0; --k) {
      if (++idx[k] < axes[k].n) break;
      idx[k] = 0;
    }
  }
  r.degenerate = r.points.empty();
  return r;
}

double relation_hausdorff(const Relation& a, const Relation& b) {
  if (a.a_dim != b.a_dim || a.b_dim != b.b_dim)
    throw std::invalid_argument("relation_hausdorff: column mismatch");
  if (a.points.empty() && b.points.empty()) return 0.0;
  if (a.points.empty() || b.points.empty()) return std::numeric_limits<double>::infinity();
  const int d = a.a_dim + a.b_dim;
  auto one_sided = [d](const std::vector<std::vector<double>>& from,
                       const std::vector<std::vector<double>>& to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : to) {
        double dist = 0.0;
        for (int i = 0; i < d; ++i) dist = std::max(dist, std::abs(x[i] - y[i]));
        best = std::min(best, dist);
        if (best == 0.0) break;
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a.points, b.points), one_sided(b.points, a.points));
}

std::string relation_csv(const Relation& r) {
  nlohmann::json hdr{{"a_dim", r.a_dim},
                     {"b_dim", r.b_dim},
                     {"tolerance", r.tolerance},
                     {"degenerate", r.degenerate},
                     {"n", r.points.size()}};
  std::ostringstream os;
  os << "# " << hdr.dump() << "\n";
  for (int i = 0; i < r.a_dim; ++i) os << "a" << i << (i + 1 < r.a_dim || r.b_dim ? "," : "");
  for (int i = 0; i < r.b_dim; ++i) os << "b" << i << (i + 1 < r.b_dim ? "," : "");
  os << "\n";
  for (const auto& pt : r.points) {
    for (size_t i = 0; i < pt.size(); ++i) os << format_double(pt[i]) << (i + 1 < pt.size() ? "," : "");
    os << "\n";
  }
  return os.str();
}

void write_relation_csv(const Relation& r, const std::string& path) {
  write_text(path, relation_csv(r));
}

}  // namespace glab

#include "glab/finite_bimodule.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace glab {

namespace {

Rat haar_rat(const FiniteGroupoid& g, int unit) {
  const RatWeight& w = g.haar[g.unit_slot(unit)];
  return Rat(w.num, w.den);
}

std::string describe_point(int q) { return "point " + std::to_string(q); }

}  // namespace

std::vector<std::string> validate_bibundle(const FiniteBibundle& b) {
  std::vector<std::string> out;
  if (!b.left || !b.right) return {"bibundle: missing groupoid reference"};
  const FiniteGroupoid& G = *b.left;
  const FiniteGroupoid& H = *b.right;
  const int np = b.n_points;
  if (int(b.tmap.size()) != np || int(b.smap.size()) != np)
    return {"bibundle: anchor maps sized differently from the point set"};
  if (std::int64_t(b.lact.size()) != std::int64_t(G.n_arrows) * np ||
      std::int64_t(b.ract.size()) != std::int64_t(np) * H.n_arrows)
    return {"bibundle: action tables sized differently from the point set"};
  if (np == 0) return out;  // degenerate composites are empty but well formed

  for (int q = 0; q < np; ++q) {
    if (!G.is_unit(b.tmap[q])) out.push_back("target anchor of " + describe_point(q) + " is not a unit");
    if (!H.is_unit(b.smap[q])) out.push_back("source anchor of " + describe_point(q) + " is not a unit");
  }

  for (int x = 0; x < G.n_arrows; ++x)
    for (int q = 0; q < np; ++q) {
      const int r = b.left_act(x, q);
      const bool should = (G.src[x] == b.tmap[q]);
      if (should && r < 0)
        out.push_back("left action undefined on composable " + std::to_string(x) + "." +
                      describe_point(q));
      if (!should && r >= 0)
        out.push_back("left action defined off its domain at " + std::to_string(x) + "." +
                      describe_point(q));
      if (r >= 0 && should) {
        if (b.tmap[r] != G.tgt[x])
          out.push_back("left action breaks the target anchor at " + std::to_string(x));
        if (b.smap[r] != b.smap[q])
          out.push_back("left action moves the source anchor at " + std::to_string(x));
      }
    }
  for (int q = 0; q < np; ++q) {
    if (b.left_act(b.tmap[q], q) != q)
      out.push_back("target unit does not act trivially on " + describe_point(q));
    if (b.right_act(q, b.smap[q]) != q)
      out.push_back("source unit does not act trivially on " + describe_point(q));
  }
  for (int y = 0; y < H.n_arrows; ++y)
    for (int q = 0; q < np; ++q) {
      const int r = b.right_act(q, y);
      const bool should = (b.smap[q] == H.tgt[y]);
      if (should && r < 0)
        out.push_back("right action undefined on composable " + describe_point(q) + "." +
                      std::to_string(y));
      if (!should && r >= 0)
        out.push_back("right action defined off its domain at " + describe_point(q) + "." +
                      std::to_string(y));
      if (r >= 0 && should) {
        if (b.smap[r] != H.src[y])
          out.push_back("right action breaks the source anchor at " + std::to_string(y));
        if (b.tmap[r] != b.tmap[q])
          out.push_back("right action moves the target anchor at " + std::to_string(y));
      }
    }

  // mixed associativity and commutation
  for (int x = 0; x < G.n_arrows; ++x)
    for (int x2 = 0; x2 < G.n_arrows; ++x2) {
      if (G.src[x] != G.tgt[x2]) continue;
      const int xx2 = G.compose(x, x2);
      for (int q = 0; q < np; ++q) {
        if (G.src[x2] != b.tmap[q]) continue;
        if (b.left_act(x, b.left_act(x2, q)) != b.left_act(xx2, q)) {
          out.push_back("left action is not associative");
          x = G.n_arrows;
          break;
        }
      }
    }
  for (int y = 0; y < H.n_arrows; ++y)
    for (int y2 = 0; y2 < H.n_arrows; ++y2) {
      if (H.src[y] != H.tgt[y2]) continue;
      const int yy2 = H.compose(y, y2);
      for (int q = 0; q < np; ++q) {
        if (b.smap[q] != H.tgt[y]) continue;
        if (b.right_act(b.right_act(q, y), y2) != b.right_act(q, yy2)) {
          out.push_back("right action is not associative");
          y = H.n_arrows;
          break;
        }
      }
    }
  for (int x = 0; x < G.n_arrows; ++x)
    for (int y = 0; y < H.n_arrows; ++y)
      for (int q = 0; q < np; ++q) {
        if (G.src[x] != b.tmap[q] || b.smap[q] != H.tgt[y]) continue;
        if (b.right_act(b.left_act(x, q), y) != b.left_act(x, b.right_act(q, y))) {
          out.push_back("left and right actions do not commute");
          x = G.n_arrows;
          y = H.n_arrows;
          break;
        }
      }

  // regularity: left action free and transitive on each source-anchor fiber.
  // properness of the right action is automatic on a finite set.
  for (int u : H.units) {
    std::vector<int> fiber;
    for (int q = 0; q < np; ++q)
      if (b.smap[q] == u) fiber.push_back(q);
    for (int q : fiber)
      for (int r : fiber) {
        int hits = 0;
        for (int x = 0; x < G.n_arrows; ++x)
          if (G.src[x] == b.tmap[q] && b.left_act(x, q) == r) ++hits;
        if (hits != 1) {
          out.push_back("left action is not free and transitive on the fiber of unit " +
                        std::to_string(u) + " (" + std::to_string(hits) + " arrows " +
                        describe_point(q) + " -> " + describe_point(r) + ")");
          q = np;
          break;
        }
      }
  }
  return out;
}

FiniteBibundle column_bibundle(const FiniteGroupoid& pair_g, const FiniteGroupoid& point_h) {
  int m = 0;
  if (!is_pair_groupoid(pair_g, &m)) throw std::invalid_argument("column_bibundle: left must be a pair groupoid");
  if (point_h.units.size() != 1 || point_h.n_arrows != 1)
    throw std::invalid_argument("column_bibundle: right must be the one-point groupoid");
  FiniteBibundle b;
  b.left = &pair_g;
  b.right = &point_h;
  b.n_points = m;
  b.tmap.resize(m);
  b.smap.assign(m, point_h.units[0]);
  b.lact.assign(std::int64_t(pair_g.n_arrows) * m, -1);
  b.ract.assign(std::int64_t(m) * point_h.n_arrows, -1);
  for (int q = 0; q < m; ++q) {
    b.tmap[q] = pair_arrow(m, q, q);
    b.ract[q] = q;
  }
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c) b.lact[std::int64_t(pair_arrow(m, a, c)) * m + c] = a;
  return b;
}

FiniteBibundle algebra_bibundle(const FiniteGroupoid& pair_g) {
  int m = 0;
  if (!is_pair_groupoid(pair_g, &m)) throw std::invalid_argument("algebra_bibundle: needs a pair groupoid");
  FiniteBibundle b;
  b.left = &pair_g;
  b.right = &pair_g;
  b.n_points = m * m;  // point (a, c) = a*m + c
  b.tmap.resize(b.n_points);
  b.smap.resize(b.n_points);
  b.lact.assign(std::int64_t(pair_g.n_arrows) * b.n_points, -1);
  b.ract.assign(std::int64_t(b.n_points) * pair_g.n_arrows, -1);
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c) {
      b.tmap[a * m + c] = pair_arrow(m, a, a);
      b.smap[a * m + c] = pair_arrow(m, c, c);
    }
  for (int a = 0; a < m; ++a)
    for (int a2 = 0; a2 < m; ++a2)
      for (int c = 0; c < m; ++c) {
        b.lact[std::int64_t(pair_arrow(m, a, a2)) * b.n_points + (a2 * m + c)] = a * m + c;
        b.ract[std::int64_t(c * m + a) * pair_g.n_arrows + pair_arrow(m, a, a2)] = c * m + a2;
      }
  return b;
}

FiniteBibundle identity_bibundle(const FiniteGroupoid& h) {
  FiniteBibundle b;
  b.left = &h;
  b.right = &h;
  b.n_points = h.n_arrows;
  b.tmap = h.tgt;
  b.smap = h.src;
  b.lact.assign(std::int64_t(h.n_arrows) * h.n_arrows, -1);
  b.ract.assign(std::int64_t(h.n_arrows) * h.n_arrows, -1);
  for (int x = 0; x < h.n_arrows; ++x)
    for (int q = 0; q < h.n_arrows; ++q) {
      const int p = h.compose(x, q);
      if (p >= 0) b.lact[std::int64_t(x) * h.n_arrows + q] = p;
      const int r = h.compose(q, x);
      if (r >= 0) b.ract[std::int64_t(q) * h.n_arrows + x] = r;
    }
  return b;
}

FiniteBibundle bibundle_tensor(const FiniteBibundle& m, const FiniteBibundle& n,
                               std::vector<std::array<int, 2>>* reps_out) {
  if (m.right != n.left)
    throw std::invalid_argument("bibundle_tensor: middle groupoids do not match");
  const FiniteGroupoid& H = *m.right;
  const std::int64_t npairs = std::int64_t(m.n_points) * n.n_points;
  std::vector<int> parent(npairs, -1);
  auto idx = [&](int q, int r) { return std::int64_t(q) * n.n_points + r; };
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (int q = 0; q < m.n_points; ++q)
    for (int r = 0; r < n.n_points; ++r)
      if (m.smap[q] == n.tmap[r]) parent[idx(q, r)] = int(idx(q, r));
  for (int q = 0; q < m.n_points; ++q)
    for (int r = 0; r < n.n_points; ++r) {
      if (m.smap[q] != n.tmap[r]) continue;
      for (int y = 0; y < H.n_arrows; ++y) {
        if (H.tgt[y] != m.smap[q]) continue;
        const int q2 = m.right_act(q, y);
        const int r2 = n.left_act(H.inv[y], r);
        if (q2 < 0 || r2 < 0) continue;
        const int a = find(int(idx(q, r))), b = find(int(idx(q2, r2)));
        if (a != b) parent[a] = b;
      }
    }

  std::vector<int> label(npairs, -1);
  std::vector<std::array<int, 2>> reps;
  for (int q = 0; q < m.n_points; ++q)
    for (int r = 0; r < n.n_points; ++r) {
      const std::int64_t i = idx(q, r);
      if (parent[i] < 0) continue;
      const int root = find(int(i));
      if (label[root] < 0) {
        label[root] = int(reps.size());
        reps.push_back({q, r});
      }
      label[i] = label[root];
    }

  FiniteBibundle out;
  out.left = m.left;
  out.right = n.right;
  out.n_points = int(reps.size());
  out.degenerate = reps.empty();
  out.tmap.resize(out.n_points);
  out.smap.resize(out.n_points);
  const FiniteGroupoid& G = *m.left;
  const FiniteGroupoid& K = *n.right;
  out.lact.assign(std::int64_t(G.n_arrows) * out.n_points, -1);
  out.ract.assign(std::int64_t(out.n_points) * K.n_arrows, -1);
  for (int p = 0; p < out.n_points; ++p) {
    const auto [q, r] = reps[p];
    out.tmap[p] = m.tmap[q];
    out.smap[p] = n.smap[r];
    for (int x = 0; x < G.n_arrows; ++x) {
      const int q2 = m.left_act(x, q);
      if (q2 >= 0) out.lact[std::int64_t(x) * out.n_points + p] = label[idx(q2, r)];
    }
    for (int z = 0; z < K.n_arrows; ++z) {
      const int r2 = n.right_act(r, z);
      if (r2 >= 0) out.ract[std::int64_t(p) * K.n_arrows + z] = label[idx(q, r2)];
    }
  }
  if (reps_out) *reps_out = reps;
  return out;
}

ExactBimodule bimodule_from_bibundle(const FiniteBibundle& b) {
  const auto violations = validate_bibundle(b);
  if (!violations.empty())
    throw std::invalid_argument("bimodule_from_bibundle: " + violations.front());
  const FiniteGroupoid& G = *b.left;
  const FiniteGroupoid& H = *b.right;
  ExactBimodule e;
  e.alg_a = &G;
  e.alg_b = &H;
  e.dim = b.n_points;
  e.lact.assign(G.n_arrows, RatMat(e.dim, e.dim));
  e.ract.assign(H.n_arrows, RatMat(e.dim, e.dim));
  e.inner_y.assign(H.n_arrows, RatMat(e.dim, e.dim));
  for (int x = 0; x < G.n_arrows; ++x)
    for (int q = 0; q < b.n_points; ++q) {
      const int r = b.left_act(x, q);
      if (r >= 0) e.lact[x].at(r, q) += haar_rat(G, b.tmap[r]);
    }
  for (int y = 0; y < H.n_arrows; ++y)
    for (int q = 0; q < b.n_points; ++q) {
      // (phi . delta_y)(q) picks up phi at q . y^-1 with the fiber weight
      const int r = b.right_act(q, H.inv[y]);
      if (r >= 0) e.ract[y].at(q, r) += haar_rat(H, b.smap[q]);
    }
  // measure on each fiber pushed through the free transitive left action:
  // the point q weighs as much as the arrow fiber over its target anchor
  for (int y = 0; y < H.n_arrows; ++y)
    for (int q = 0; q < b.n_points; ++q) {
      if (b.smap[q] != H.tgt[y]) continue;
      const int qy = b.right_act(q, y);
      if (qy >= 0) e.inner_y[y].at(q, qy) += haar_rat(G, b.tmap[q]);
    }
  return e;
}

ExactBimodule bimodule_direct_sum(const ExactBimodule& e, const ExactBimodule& f) {
  if (e.alg_a != f.alg_a || e.alg_b != f.alg_b)
    throw std::invalid_argument("bimodule_direct_sum: algebra mismatch");
  ExactBimodule out;
  out.alg_a = e.alg_a;
  out.alg_b = e.alg_b;
  out.dim = e.dim + f.dim;
  auto blocks = [&](const RatMat& a, const RatMat& b) {
    RatMat m(out.dim, out.dim);
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) m.at(e.dim + i, e.dim + j) = b.at(i, j);
    return m;
  };
  for (size_t x = 0; x < e.lact.size(); ++x) out.lact.push_back(blocks(e.lact[x], f.lact[x]));
  for (size_t y = 0; y < e.ract.size(); ++y) out.ract.push_back(blocks(e.ract[y], f.ract[y]));
  for (size_t y = 0; y < e.inner_y.size(); ++y)
    out.inner_y.push_back(blocks(e.inner_y[y], f.inner_y[y]));
  return out;
}

namespace {

// Quotient of Q^p by the column space of `null`: proj (q x p) and sect
// (p x q) with proj*sect = id, classes of null's columns mapped to zero.
void quotient_maps(const RatMat& null, int p, RatMat& proj, RatMat& sect) {
  RatMat rt = rat_transpose(null);
  const std::vector<int> pivots = rat_rref(rt);
  std::vector<bool> is_pivot(p, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < p; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  const int q = int(free_cols.size());
  proj = RatMat(q, p);
  sect = RatMat(p, q);
  for (int k = 0; k < q; ++k) {
    proj.at(k, free_cols[k]) = 1;
    sect.at(free_cols[k], k) = 1;
  }
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int k = 0; k < q; ++k) proj.at(k, pivots[r]) = -rt.at(int(r), free_cols[k]);
}

}  // namespace

TensorResult interior_tensor(const ExactBimodule& e, const ExactBimodule& f) {
  if (e.alg_b != f.alg_a)
    throw std::invalid_argument("interior_tensor: middle algebras do not match");
  const int de = e.dim, df = f.dim;
  const int p = de * df;
  const int nb = int(e.inner_y.size());
  const int nc = int(f.inner_y.size());

  // algebra-valued form on the full tensor space, one block per arrow of the
  // right algebra of f:  <i1 (x) j1, i2 (x) j2>(z) = <j1, <i1,i2>_B . j2>(z)
  std::vector<RatMat> form_z(nc);
  for (int z = 0; z < nc; ++z) form_z[z] = RatMat(p, p);
  for (int y = 0; y < nb; ++y) {
    const RatMat& a_y = e.inner_y[y];
    bool zero = true;
    for (const auto& v : a_y.a)
      if (v != 0) {
        zero = false;
        break;
      }
    if (zero) continue;
    for (int z = 0; z < nc; ++z) {
      const RatMat c_zy = rat_mul(f.inner_y[z], f.lact[y]);
      form_z[z] = rat_add(form_z[z], rat_kron(a_y, c_zy));
    }
  }

  RatMat stacked(p * nc, p);
  for (int z = 0; z < nc; ++z)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) stacked.at(z * p + i, j) = form_z[z].at(i, j);
  const RatMat null = rat_nullspace(stacked);

  TensorResult out;
  quotient_maps(null, p, out.proj, out.sect);
  out.mod.alg_a = e.alg_a;
  out.mod.alg_b = f.alg_b;
  out.mod.dim = out.proj.rows;
  const RatMat ide = RatMat::identity(de), idf = RatMat::identity(df);
  for (const auto& lx : e.lact)
    out.mod.lact.push_back(rat_mul(out.proj, rat_mul(rat_kron(lx, idf), out.sect)));
  for (const auto& rz : f.ract)
    out.mod.ract.push_back(rat_mul(out.proj, rat_mul(rat_kron(ide, rz), out.sect)));
  for (int z = 0; z < nc; ++z)
    out.mod.inner_y.push_back(rat_mul(rat_transpose(out.sect), rat_mul(form_z[z], out.sect)));
  return out;
}

RatMat tensor_product_kernel(const ExactBimodule& e) {
  const int na = int(e.lact.size()), nb = int(e.ract.size());
  RatMat t(e.dim * e.dim, na * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      const RatMat m = rat_mul(e.lact[x], e.ract[y]);
      for (int i = 0; i < e.dim; ++i)
        for (int j = 0; j < e.dim; ++j) t.at(i * e.dim + j, x * nb + y) = m.at(i, j);
    }
  return rat_nullspace(t);
}

RatRep left_regular_rat(const FiniteGroupoid& g) {
  RatRep r;
  r.g = &g;
  r.dim = g.n_arrows;
  r.act.assign(g.n_arrows, RatMat(g.n_arrows, g.n_arrows));
  for (int y = 0; y < g.n_arrows; ++y)
    for (int x = 0; x < g.n_arrows; ++x) {
      const int yx = g.compose(y, x);
      if (yx >= 0) r.act[y].at(yx, x) += haar_rat(g, g.src[x]);
    }
  r.form = RatMat::identity(g.n_arrows);
  return r;
}

RatRep column_rep(const FiniteGroupoid& pair_g) {
  int m = 0;
  if (!is_pair_groupoid(pair_g, &m)) throw std::invalid_argument("column_rep: needs a pair groupoid");
  RatRep r;
  r.g = &pair_g;
  r.dim = m;
  r.act.assign(pair_g.n_arrows, RatMat(m, m));
  const Rat w = haar_rat(pair_g, pair_g.units[0]);
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c) r.act[pair_arrow(m, a, c)].at(a, c) = w;
  r.form = RatMat::identity(m);
  return r;
}

namespace {

// coefficients of the d-th cyclotomic polynomial (integer, small d only)
std::vector<long long> cyclotomic_coeffs(int d) {
  // build x^d - 1 and divide off the cyclotomics of the proper divisors
  std::vector<std::vector<long long>> polys;  // divisors in increasing order
  std::vector<int> divisors;
  for (int k = 1; k <= d; ++k)
    if (d % k == 0) divisors.push_back(k);
  for (int k : divisors) {
    std::vector<long long> num(k + 1, 0);
    num[0] = -1;
    num[k] = 1;
    for (size_t i = 0; i < polys.size(); ++i) {
      const int kd = divisors[i];
      if (k % kd != 0 || kd == k) continue;
      const auto& q = polys[i];
      // exact synthetic division num / q
      std::vector<long long> quo(num.size() - q.size() + 1, 0);
      std::vector<long long> rem = num;
      for (int deg = int(rem.size()) - 1; deg >= int(q.size()) - 1; --deg) {
        const long long c = rem[deg] / q.back();
        quo[deg - int(q.size()) + 1] = c;
        if (c != 0)
          for (size_t t = 0; t < q.size(); ++t) rem[deg - int(q.size()) + 1 + t] -= c * q[t];
      }
      num = quo;
    }
    polys.push_back(num);
  }
  return polys.back();
}

}  // namespace

RatRep cyclotomic_rep(const FiniteGroupoid& zm, int divisor) {
  const int m = zm.n_arrows;
  if (zm.units.size() != 1) throw std::invalid_argument("cyclotomic_rep: needs a group");
  if (divisor < 1 || m % divisor != 0)
    throw std::invalid_argument("cyclotomic_rep: divisor must divide the order");
  const auto phi = cyclotomic_coeffs(divisor);
  const int deg = int(phi.size()) - 1;
  RatMat comp(deg, deg);
  for (int i = 1; i < deg; ++i) comp.at(i, i - 1) = 1;
  for (int i = 0; i < deg; ++i) comp.at(i, deg - 1) = Rat(-phi[i], phi[deg]);
  RatRep r;
  r.g = &zm;
  r.dim = deg;
  const Rat w = haar_rat(zm, zm.units[0]);
  RatMat power = RatMat::identity(deg);
  for (int c = 0; c < m; ++c) {
    r.act.push_back(rat_scale(w, power));
    power = rat_mul(comp, power);
    if (c == m - 1 && !rat_eq(power, RatMat::identity(deg)))
      throw std::logic_error("cyclotomic_rep: companion order does not divide the group order");
  }
  // invariant form: average of C^k^T C^k makes the generator orthogonal-like
  RatMat form(deg, deg);
  RatMat pk = RatMat::identity(deg);
  for (int c = 0; c < m; ++c) {
    form = rat_add(form, rat_mul(rat_transpose(pk), pk));
    pk = rat_mul(comp, pk);
  }
  r.form = form;
  return r;
}

std::vector<std::string> validate_rat_rep(const RatRep& r) {
  std::vector<std::string> out;
  const FiniteGroupoid& g = *r.g;
  for (int y = 0; y < g.n_arrows; ++y)
    for (int y2 = 0; y2 < g.n_arrows; ++y2) {
      RatMat want(r.dim, r.dim);
      if (g.src[y] == g.tgt[y2]) {
        const Rat w = haar_rat(g, g.src[y2]);
        want = rat_scale(w, r.act[g.compose(y, y2)]);
      }
      if (!rat_eq(rat_mul(r.act[y], r.act[y2]), want)) {
        out.push_back("representation is not multiplicative at arrows " + std::to_string(y) +
                      ", " + std::to_string(y2));
        y = g.n_arrows;
        break;
      }
    }
  for (int y = 0; y < g.n_arrows; ++y) {
    const RatMat lhs = rat_mul(rat_transpose(r.act[y]), r.form);
    const RatMat rhs = rat_mul(r.form, r.act[g.inv[y]]);
    if (!rat_eq(lhs, rhs)) {
      out.push_back("representation is not adjoint-compatible at arrow " + std::to_string(y));
      break;
    }
  }
  return out;
}

InducedRep rieffel_induce(const ExactBimodule& e, const RatRep& rep) {
  if (rep.g != e.alg_b)
    throw std::invalid_argument("rieffel_induce: representation is of the wrong algebra");
  const int de = e.dim, dv = rep.dim, p = de * dv;
  RatMat gram(p, p);
  for (size_t y = 0; y < e.inner_y.size(); ++y) {
    const RatMat fy = rat_mul(rep.form, rep.act[y]);
    gram = rat_add(gram, rat_kron(e.inner_y[y], fy));
  }
  RatMat proj, sect;
  quotient_maps(rat_nullspace(gram), p, proj, sect);
  InducedRep out;
  out.dim = proj.rows;
  out.degenerate = (out.dim == 0);
  const RatMat idv = RatMat::identity(dv);
  for (const auto& lx : e.lact)
    out.act.push_back(rat_mul(proj, rat_mul(rat_kron(lx, idv), sect)));
  out.gram = rat_mul(rat_transpose(sect), rat_mul(gram, sect));
  return out;
}

RatMat induced_rep_kernel(const InducedRep& r, int n_arrows_a) {
  RatMat t(r.dim * r.dim, n_arrows_a);
  for (int x = 0; x < n_arrows_a; ++x)
    for (int i = 0; i < r.dim; ++i)
      for (int j = 0; j < r.dim; ++j) t.at(i * r.dim + j, x) = r.act[x].at(i, j);
  return rat_nullspace(t);
}

bool exact_positivity(const ExactBimodule& e, int* rank_out) {
  const RatRep reg = left_regular_rat(*e.alg_b);
  const int p = e.dim * reg.dim;
  RatMat gram(p, p);
  for (size_t y = 0; y < e.inner_y.size(); ++y)
    gram = rat_add(gram, rat_kron(e.inner_y[y], reg.act[y]));
  return rat_is_psd(gram, rank_out);
}

WitnessReport check_unitary_witness(const ExactBimodule& e1, const ExactBimodule& e2,
                                    const RatMat& w) {
  WitnessReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.failure = std::move(why);
    return rep;
  };
  if (e1.alg_a != e2.alg_a || e1.alg_b != e2.alg_b) return fail("algebra mismatch");
  if (w.rows != e2.dim || w.cols != e1.dim) return fail("witness shape mismatch");
  if (e1.dim != e2.dim) return fail("dimension obstruction");
  if (rat_rank(w) != e1.dim) return fail("witness is singular");
  for (size_t x = 0; x < e1.lact.size(); ++x)
    if (!rat_eq(rat_mul(w, e1.lact[x]), rat_mul(e2.lact[x], w)))
      return fail("left action not intertwined at arrow " + std::to_string(x));
  for (size_t y = 0; y < e1.ract.size(); ++y)
    if (!rat_eq(rat_mul(w, e1.ract[y]), rat_mul(e2.ract[y], w)))
      return fail("right action not intertwined at arrow " + std::to_string(y));
  const RatMat wt = rat_transpose(w);
  for (size_t y = 0; y < e1.inner_y.size(); ++y)
    if (!rat_eq(rat_mul(wt, rat_mul(e2.inner_y[y], w)), e1.inner_y[y]))
      return fail("inner product not preserved at arrow " + std::to_string(y));
  return rep;
}

RatMat right_unit_witness(const ExactBimodule& e, const TensorResult& e_tensor_id) {
  const int nb = int(e.ract.size());
  RatMat t(e.dim, e.dim * nb);
  for (int i = 0; i < e.dim; ++i)
    for (int y = 0; y < nb; ++y)
      for (int r = 0; r < e.dim; ++r) t.at(r, i * nb + y) = e.ract[y].at(r, i);
  return rat_mul(t, e_tensor_id.sect);
}

RatMat left_unit_witness(const ExactBimodule& e, const TensorResult& id_tensor_e) {
  const int na = int(e.lact.size());
  RatMat t(e.dim, na * e.dim);
  for (int x = 0; x < na; ++x)
    for (int j = 0; j < e.dim; ++j)
      for (int r = 0; r < e.dim; ++r) t.at(r, x * e.dim + j) = e.lact[x].at(r, j);
  return rat_mul(t, id_tensor_e.sect);
}

RatMat associativity_witness(const TensorResult& ef, const TensorResult& ef_k,
                             const TensorResult& fk, const TensorResult& e_fk, int dim_e,
                             int dim_k) {
  const RatMat ide = RatMat::identity(dim_e), idk = RatMat::identity(dim_k);
  // flat row-major indices associate on the nose, so the re-bracketing map is
  // the identity on the full triple tensor space
  const RatMat into_full = rat_mul(rat_kron(ef.sect, idk), ef_k.sect);
  const RatMat down = rat_mul(e_fk.proj, rat_kron(ide, fk.proj));
  return rat_mul(down, into_full);
}

RatMat composite_witness(const FiniteBibundle& m, const FiniteBibundle& n,
                         const FiniteBibundle& mn, const std::vector<std::array<int, 2>>& reps,
                         const TensorResult& tens) {
  const FiniteGroupoid& H = *m.right;
  // labels: recover the orbit id of each compatible pair by walking from the
  // representatives with the diagonal moves
  std::vector<int> label(std::int64_t(m.n_points) * n.n_points, -1);
  auto idx = [&](int q, int r) { return std::int64_t(q) * n.n_points + r; };
  std::vector<std::int64_t> queue;
  for (size_t p = 0; p < reps.size(); ++p) {
    label[idx(reps[p][0], reps[p][1])] = int(p);
    queue.push_back(idx(reps[p][0], reps[p][1]));
  }
  while (!queue.empty()) {
    const std::int64_t cur = queue.back();
    queue.pop_back();
    const int q = int(cur / n.n_points), r = int(cur % n.n_points);
    for (int y = 0; y < H.n_arrows; ++y) {
      if (H.tgt[y] != m.smap[q]) continue;
      const int q2 = m.right_act(q, y);
      const int r2 = n.left_act(H.inv[y], r);
      if (q2 < 0 || r2 < 0) continue;
      if (label[idx(q2, r2)] < 0) {
        label[idx(q2, r2)] = label[cur];
        queue.push_back(idx(q2, r2));
      }
    }
  }

  RatMat t(mn.n_points, m.n_points * n.n_points);
  for (int q = 0; q < m.n_points; ++q)
    for (int r = 0; r < n.n_points; ++r) {
      if (m.smap[q] != n.tmap[r]) continue;
      const int p = label[idx(q, r)];
      if (p < 0) throw std::logic_error("composite_witness: unlabeled compatible pair");
      // norm matching: |delta_q (x) delta_r|^2 carries mu_M(q) * w_H * mu_N(r)
      // while |delta_[q,r]|^2 carries the composite measure mu_M(q), so the
      // ratio collapses to the middle fiber weight squared
      t.at(p, int(idx(q, r))) = haar_rat(H, n.tmap[r]);
    }
  return rat_mul(t, tens.sect);
}

ExactBimodule conjugate_bimodule(const ExactBimodule& e, const RatMat& w) {
  const auto wi = rat_inverse(w);
  if (!wi) throw std::invalid_argument("conjugate_bimodule: witness not invertible");
  ExactBimodule out;
  out.alg_a = e.alg_a;
  out.alg_b = e.alg_b;
  out.dim = e.dim;
  const RatMat wit = rat_transpose(*wi);
  for (const auto& m : e.lact) out.lact.push_back(rat_mul(w, rat_mul(m, *wi)));
  for (const auto& m : e.ract) out.ract.push_back(rat_mul(w, rat_mul(m, *wi)));
  for (const auto& m : e.inner_y) out.inner_y.push_back(rat_mul(wit, rat_mul(m, *wi)));
  return out;
}

RatMat random_rational_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-4, 4);
  RatMat s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rat v(pick(rng), 4);
      s.at(i, j) = v;
      s.at(j, i) = -v;
    }
  const RatMat id = RatMat::identity(n);
  const auto inv = rat_inverse(rat_add(id, s));
  if (!inv) throw std::logic_error("random_rational_orthogonal: I + S must be invertible");
  return rat_mul(rat_sub(id, s), *inv);
}

namespace {

struct Block {
  int kind = 0;  // 0 = pair(n), 1 = cyclic(n)
  int n = 1;
  int arrow_off = 0;
};

struct BlockGroupoid {
  std::shared_ptr<FiniteGroupoid> g;
  std::vector<Block> blocks;
};

BlockGroupoid random_block_groupoid(std::mt19937_64& rng, int max_units) {
  std::uniform_int_distribution<int> coin(0, 1), pair_n(1, 3), cyc_n(2, 4);
  std::vector<Block> blocks;
  int units = 0, arrows = 0;
  do {
    Block b;
    b.kind = coin(rng);
    b.n = b.kind == 0 ? pair_n(rng) : cyc_n(rng);
    const int u = b.kind == 0 ? b.n : 1;
    if (units + u > max_units) break;
    b.arrow_off = arrows;
    arrows += b.kind == 0 ? b.n * b.n : b.n;
    units += u;
    blocks.push_back(b);
  } while (units < max_units && coin(rng) == 0);
  if (blocks.empty()) blocks.push_back({0, 1, 0});
  std::shared_ptr<FiniteGroupoid> g;
  for (const auto& b : blocks) {
    FiniteGroupoid piece = b.kind == 0 ? pair_groupoid(b.n) : cyclic_group_groupoid(b.n);
    g = g ? std::make_shared<FiniteGroupoid>(disjoint_union(*g, piece))
          : std::make_shared<FiniteGroupoid>(std::move(piece));
  }
  return {g, blocks};
}

// A functor from h to g, encoded as the image arrow of every h-arrow.
std::vector<int> random_functor(std::mt19937_64& rng, const BlockGroupoid& h,
                                const BlockGroupoid& g) {
  std::vector<int> gamma(h.g->n_arrows, -1);
  std::uniform_int_distribution<size_t> pick_block(0, g.blocks.size() - 1);
  for (const auto& hb : h.blocks) {
    const Block& gb = g.blocks[pick_block(rng)];
    if (hb.kind == 0) {
      // indiscrete component: any tuple of objects in one target component
      if (gb.kind == 0) {
        std::uniform_int_distribution<int> pu(0, gb.n - 1);
        std::vector<int> u(hb.n);
        for (auto& v : u) v = pu(rng);
        for (int i = 0; i < hb.n; ++i)
          for (int j = 0; j < hb.n; ++j)
            gamma[hb.arrow_off + pair_arrow(hb.n, i, j)] =
                gb.arrow_off + pair_arrow(gb.n, u[i], u[j]);
      } else {
        std::uniform_int_distribution<int> pc(0, gb.n - 1);
        std::vector<int> c(hb.n);
        for (auto& v : c) v = pc(rng);
        for (int i = 0; i < hb.n; ++i)
          for (int j = 0; j < hb.n; ++j)
            gamma[hb.arrow_off + pair_arrow(hb.n, i, j)] =
                gb.arrow_off + ((c[i] - c[j]) % gb.n + gb.n) % gb.n;
      }
    } else {
      if (gb.kind == 0) {
        std::uniform_int_distribution<int> pu(0, gb.n - 1);
        const int u = pu(rng);
        for (int c = 0; c < hb.n; ++c)
          gamma[hb.arrow_off + c] = gb.arrow_off + pair_arrow(gb.n, u, u);
      } else {
        const int g0 = std::gcd(hb.n, gb.n);
        std::uniform_int_distribution<int> ps(0, g0 - 1);
        const int t = (gb.n / g0) * ps(rng);
        for (int c = 0; c < hb.n; ++c)
          gamma[hb.arrow_off + c] = gb.arrow_off + (t * c) % gb.n;
      }
    }
  }
  return gamma;
}

// Middle space of the bibundle a functor h -> g induces: one point per
// (arrow of g, unit of h) with the arrow's source at the unit's image.
FiniteBibundle functor_bibundle(const FiniteGroupoid& g, const FiniteGroupoid& h,
                                const std::vector<int>& gamma) {
  FiniteBibundle b;
  b.left = &g;
  b.right = &h;
  std::vector<std::array<int, 2>> pts;
  for (int v : h.units)
    for (int x = 0; x < g.n_arrows; ++x)
      if (g.src[x] == gamma[v]) pts.push_back({x, v});
  b.n_points = int(pts.size());
  auto find_pt = [&](int x, int v) {
    for (size_t i = 0; i < pts.size(); ++i)
      if (pts[i][0] == x && pts[i][1] == v) return int(i);
    return -1;
  };
  b.tmap.resize(b.n_points);
  b.smap.resize(b.n_points);
  b.lact.assign(std::int64_t(g.n_arrows) * b.n_points, -1);
  b.ract.assign(std::int64_t(b.n_points) * h.n_arrows, -1);
  for (int q = 0; q < b.n_points; ++q) {
    const auto [x, v] = pts[q];
    b.tmap[q] = g.tgt[x];
    b.smap[q] = v;
    for (int z = 0; z < g.n_arrows; ++z) {
      const int zx = g.compose(z, x);
      if (zx >= 0) b.lact[std::int64_t(z) * b.n_points + q] = find_pt(zx, v);
    }
    for (int y = 0; y < h.n_arrows; ++y) {
      if (h.tgt[y] != v) continue;
      const int xy = g.compose(x, gamma[y]);
      if (xy >= 0) b.ract[std::int64_t(q) * h.n_arrows + y] = find_pt(xy, h.src[y]);
    }
  }
  return b;
}

}  // namespace

RandomBibundle random_regular_bibundle(std::uint64_t seed, int max_units) {
  std::mt19937_64 rng(seed);
  BlockGroupoid g = random_block_groupoid(rng, max_units);
  BlockGroupoid h = random_block_groupoid(rng, max_units);
  const auto gamma = random_functor(rng, h, g);
  RandomBibundle out;
  out.g = g.g;
  out.h = h.g;
  out.m = functor_bibundle(*g.g, *h.g, gamma);
  return out;
}

RandomBibundleChain random_bibundle_chain(std::uint64_t seed, int max_units) {
  std::mt19937_64 rng(seed);
  std::vector<BlockGroupoid> gs;
  for (int i = 0; i < 4; ++i) gs.push_back(random_block_groupoid(rng, max_units));
  RandomBibundleChain out;
  for (auto& bg : gs) out.gpds.push_back(bg.g);
  for (int i = 0; i < 3; ++i) {
    const auto gamma = random_functor(rng, gs[i + 1], gs[i]);
    out.links.push_back(functor_bibundle(*gs[i].g, *gs[i + 1].g, gamma));
  }
  return out;
}

std::string bibundle_to_json(const FiniteBibundle& b) {
  nlohmann::json j;
  j["left"] = nlohmann::json::parse(groupoid_to_json(*b.left));
  j["right"] = nlohmann::json::parse(groupoid_to_json(*b.right));
  j["n_points"] = b.n_points;
  j["tmap"] = b.tmap;
  j["smap"] = b.smap;
  j["lact"] = b.lact;
  j["ract"] = b.ract;
  j["degenerate"] = b.degenerate;
  return j.dump();
}

ParsedBibundle bibundle_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ParsedBibundle out;
  out.g = std::make_shared<FiniteGroupoid>(groupoid_from_json(j.at("left").dump()));
  out.h = std::make_shared<FiniteGroupoid>(groupoid_from_json(j.at("right").dump()));
  out.m.left = out.g.get();
  out.m.right = out.h.get();
  out.m.n_points = j.at("n_points").get<int>();
  out.m.tmap = j.at("tmap").get<std::vector<int>>();
  out.m.smap = j.at("smap").get<std::vector<int>>();
  out.m.lact = j.at("lact").get<std::vector<int>>();
  out.m.ract = j.at("ract").get<std::vector<int>>();
  out.m.degenerate = j.value("degenerate", false);
  return out;
}

namespace {

std::string rat_str(const Rat& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Rat rat_parse(const std::string& s) {
  const auto slash = s.find('/');
  using boost::multiprecision::cpp_int;
  if (slash == std::string::npos) return Rat(cpp_int(s));
  return Rat(cpp_int(s.substr(0, slash)), cpp_int(s.substr(slash + 1)));
}

}  // namespace

std::string kernel_basis_to_json(const RatMat& kernel) {
  nlohmann::json j;
  j["rows"] = kernel.rows;
  j["cols"] = kernel.cols;
  std::vector<std::string> entries;
  entries.reserve(kernel.a.size());
  for (const auto& v : kernel.a) entries.push_back(rat_str(v));
  j["entries"] = entries;
  return j.dump();
}

RatMat kernel_basis_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RatMat m(j.at("rows").get<int>(), j.at("cols").get<int>());
  const auto entries = j.at("entries").get<std::vector<std::string>>();
  if (entries.size() != m.a.size())
    throw std::invalid_argument("kernel_basis_from_json: entry count mismatch");
  for (size_t i = 0; i < entries.size(); ++i) m.a[i] = rat_parse(entries[i]);
  return m;
}

}  // namespace glab

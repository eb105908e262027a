#include "glab/finite_groupoid.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace glab {

namespace {
void push(std::vector<AxiomViolation>& out, std::string axiom, int a, int b, int c,
          std::string detail) {
  out.push_back({std::move(axiom), {a, b, c}, std::move(detail)});
}
}  // namespace

std::vector<AxiomViolation> validate_groupoid(const FiniteGroupoid& g, std::uint64_t seed) {
  std::vector<AxiomViolation> out;
  const int n = g.n_arrows;
  if (n == 0) throw std::invalid_argument("validate_groupoid: empty arrow set");
  if (int(g.src.size()) != n || int(g.tgt.size()) != n || int(g.inv.size()) != n ||
      std::int64_t(g.comp.size()) != std::int64_t(n) * n)
    throw std::invalid_argument("validate_groupoid: table sizes disagree with n_arrows");
  if (g.haar.size() != g.units.size())
    throw std::invalid_argument("validate_groupoid: haar table must match unit list");

  std::vector<char> unit_mark(n, 0);
  for (int u : g.units) {
    if (u < 0 || u >= n) throw std::invalid_argument("validate_groupoid: unit id out of range");
    unit_mark[u] = 1;
  }
  for (size_t k = 0; k < g.haar.size(); ++k) {
    RatWeight w = g.haar[k];
    if (w.den == 0 || w.value() <= 0)
      push(out, "haar_positive", g.units[k], -1, -1, "weight must be a positive rational");
  }
  for (int u : g.units)
    if (g.src[u] != u || g.tgt[u] != u)
      push(out, "unit_fixed", u, -1, -1, "declared unit is not fixed by src/tgt");
  for (int x = 0; x < n; ++x) {
    // convolution is associative only when the fiber weights are invariant
    // under translation, i.e. constant along each transitivity component
    if (unit_mark[g.src[x]] && unit_mark[g.tgt[x]] &&
        g.haar_at_unit(g.src[x]) != g.haar_at_unit(g.tgt[x]))
      push(out, "haar_invariant", x, -1, -1, "fiber weight differs between src and tgt");
  }
  for (int x = 0; x < n; ++x) {
    if (!unit_mark[g.src[x]]) push(out, "src_into_units", x, -1, -1, "src lands outside unit set");
    if (!unit_mark[g.tgt[x]]) push(out, "tgt_into_units", x, -1, -1, "tgt lands outside unit set");
  }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xy = g.compose(x, y);
      bool should = (g.src[x] == g.tgt[y]);
      if (should && xy < 0)
        push(out, "compose_defined", x, y, -1, "src(x)=tgt(y) but product missing");
      if (!should && xy >= 0)
        push(out, "compose_domain", x, y, -1, "product declared on non-composable pair");
      if (xy >= 0 && should) {
        if (g.tgt[xy] != g.tgt[x] || g.src[xy] != g.src[y])
          push(out, "compose_src_tgt", x, y, xy, "product has wrong source or target");
      }
    }

  for (int x = 0; x < n; ++x) {
    if (g.compose(x, g.src[x]) != x || g.compose(g.tgt[x], x) != x)
      push(out, "unit_identity", x, -1, -1, "unit does not act as identity");
    int xi = g.inv[x];
    if (xi < 0 || xi >= n) {
      push(out, "inverse_range", x, -1, -1, "inverse id out of range");
      continue;
    }
    if (g.src[xi] != g.tgt[x] || g.tgt[xi] != g.src[x])
      push(out, "inverse_src_tgt", x, xi, -1, "inverse has wrong source or target");
    if (g.compose(x, xi) != g.tgt[x])
      push(out, "inverse_right", x, xi, -1, "x * inv(x) is not the target unit");
    if (g.compose(xi, x) != g.src[x])
      push(out, "inverse_left", x, xi, -1, "inv(x) * x is not the source unit");
    if (g.inv[xi] != x)
      push(out, "inverse_involutive", x, xi, -1, "inv(inv(x)) != x");
  }

  auto check_assoc = [&](int x, int y, int z) {
    if (g.src[x] != g.tgt[y] || g.src[y] != g.tgt[z]) return;
    int xy = g.compose(x, y), yz = g.compose(y, z);
    if (xy < 0 || yz < 0) return;  // reported above
    if (g.compose(xy, z) != g.compose(x, yz))
      push(out, "associativity", x, y, z, "(x*y)*z != x*(y*z)");
  };
  if (n <= 200) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (g.src[x] != g.tgt[y]) continue;
        for (int z = 0; z < n; ++z) check_assoc(x, y, z);
      }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 200000; ++t) check_assoc(pick(rng), pick(rng), pick(rng));
  }
  return out;
}

FiniteGroupoid pair_groupoid(int m) {
  if (m <= 0) throw std::invalid_argument("pair_groupoid: need at least one point");
  FiniteGroupoid g;
  g.n_arrows = m * m;
  g.src.resize(g.n_arrows);
  g.tgt.resize(g.n_arrows);
  g.inv.resize(g.n_arrows);
  g.comp.assign(std::int64_t(g.n_arrows) * g.n_arrows, -1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int x = pair_arrow(m, a, b);
      g.src[x] = pair_arrow(m, b, b);
      g.tgt[x] = pair_arrow(m, a, a);
      g.inv[x] = pair_arrow(m, b, a);
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        g.comp[std::int64_t(pair_arrow(m, a, b)) * g.n_arrows + pair_arrow(m, b, c)] =
            pair_arrow(m, a, c);
  for (int a = 0; a < m; ++a) g.units.push_back(pair_arrow(m, a, a));
  std::sort(g.units.begin(), g.units.end());
  g.haar.assign(g.units.size(), RatWeight{});
  return g;
}

FiniteGroupoid cyclic_group_groupoid(int order) {
  if (order <= 0) throw std::invalid_argument("cyclic_group_groupoid: need positive order");
  FiniteGroupoid g;
  g.n_arrows = order;
  g.src.assign(order, 0);
  g.tgt.assign(order, 0);
  g.inv.resize(order);
  g.comp.assign(std::int64_t(order) * order, -1);
  for (int a = 0; a < order; ++a) {
    g.inv[a] = (order - a) % order;
    for (int b = 0; b < order; ++b) g.comp[std::int64_t(a) * order + b] = (a + b) % order;
  }
  g.units = {0};
  g.haar.assign(1, RatWeight{});
  return g;
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid g;
  const int na = a.n_arrows, nb = b.n_arrows;
  g.n_arrows = na + nb;
  g.src.resize(g.n_arrows);
  g.tgt.resize(g.n_arrows);
  g.inv.resize(g.n_arrows);
  g.comp.assign(std::int64_t(g.n_arrows) * g.n_arrows, -1);
  for (int x = 0; x < na; ++x) {
    g.src[x] = a.src[x];
    g.tgt[x] = a.tgt[x];
    g.inv[x] = a.inv[x];
    for (int y = 0; y < na; ++y) g.comp[std::int64_t(x) * g.n_arrows + y] = a.compose(x, y);
  }
  for (int x = 0; x < nb; ++x) {
    g.src[na + x] = na + b.src[x];
    g.tgt[na + x] = na + b.tgt[x];
    g.inv[na + x] = na + b.inv[x];
    for (int y = 0; y < nb; ++y) {
      int p = b.compose(x, y);
      g.comp[std::int64_t(na + x) * g.n_arrows + (na + y)] = p < 0 ? -1 : na + p;
    }
  }
  g.units = a.units;
  for (int u : b.units) g.units.push_back(na + u);
  g.haar = a.haar;
  g.haar.insert(g.haar.end(), b.haar.begin(), b.haar.end());
  return g;
}

int pair_arrow(int m, int a, int b) { return a * m + b; }
std::array<int, 2> pair_coords(int m, int arrow) { return {arrow / m, arrow % m}; }

std::vector<std::vector<int>> source_fibers(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> out(g.units.size());
  for (int x = 0; x < g.n_arrows; ++x) out[g.unit_slot(g.src[x])].push_back(x);
  return out;
}

std::vector<std::vector<int>> target_fibers(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> out(g.units.size());
  for (int x = 0; x < g.n_arrows; ++x) out[g.unit_slot(g.tgt[x])].push_back(x);
  return out;
}

bool is_pair_groupoid(const FiniteGroupoid& g, int* m_out) {
  int m = int(g.units.size());
  if (g.n_arrows != m * m) return false;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int x = pair_arrow(m, a, b);
      if (g.src[x] != pair_arrow(m, b, b) || g.tgt[x] != pair_arrow(m, a, a)) return false;
      if (g.inv[x] != pair_arrow(m, b, a)) return false;
    }
  if (m_out) *m_out = m;
  return true;
}

std::string groupoid_to_json(const FiniteGroupoid& g) {
  nlohmann::json j;
  j["n_arrows"] = g.n_arrows;
  j["src"] = g.src;
  j["tgt"] = g.tgt;
  j["inv"] = g.inv;
  j["units"] = g.units;
  std::vector<std::array<int, 3>> products;
  for (int x = 0; x < g.n_arrows; ++x)
    for (int y = 0; y < g.n_arrows; ++y) {
      int xy = g.compose(x, y);
      if (xy >= 0) products.push_back({x, y, xy});
    }
  j["compose"] = products;
  std::vector<std::array<long long, 2>> weights;
  for (const RatWeight& w : g.haar) weights.push_back({w.num, w.den});
  j["haar"] = weights;
  return j.dump(2);
}

FiniteGroupoid groupoid_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteGroupoid g;
  g.n_arrows = j.at("n_arrows").get<int>();
  g.src = j.at("src").get<std::vector<int>>();
  g.tgt = j.at("tgt").get<std::vector<int>>();
  g.inv = j.at("inv").get<std::vector<int>>();
  g.units = j.at("units").get<std::vector<int>>();
  g.comp.assign(std::int64_t(g.n_arrows) * g.n_arrows, -1);
  for (const auto& row : j.at("compose")) {
    int x = row.at(0).get<int>(), y = row.at(1).get<int>(), xy = row.at(2).get<int>();
    g.comp[std::int64_t(x) * g.n_arrows + y] = xy;
  }
  for (const auto& row : j.at("haar")) {
    RatWeight w{row.at(0).get<long long>(), row.at(1).get<long long>()};
    w.normalize();
    g.haar.push_back(w);
  }
  return g;
}

}  // namespace glab

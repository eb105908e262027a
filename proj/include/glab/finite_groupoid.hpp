#pragma once
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace glab {

// Positive rational Haar weight attached to a unit.
struct RatWeight {
  long long num = 1, den = 1;
  double value() const { return double(num) / double(den); }
  void normalize() {
    if (den == 0) throw std::invalid_argument("haar weight: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
};

// A finite groupoid given by explicit tables. Arrows are 0..n_arrows-1.
// Units are the arrows u with src(u) = tgt(u) = u; composition x*y is
// defined exactly when src(x) = tgt(y).
struct FiniteGroupoid {
  int n_arrows = 0;
  std::vector<int> src, tgt;      // arrow -> unit arrow
  std::vector<int> inv;           // arrow -> arrow
  std::vector<int> units;         // sorted list of unit arrows
  std::vector<int> comp;          // comp[x*n_arrows+y] = x*y, or -1 when undefined
  std::vector<RatWeight> haar;    // indexed by position in `units`

  int compose(int x, int y) const { return comp[std::int64_t(x) * n_arrows + y]; }
  bool is_unit(int x) const { return src[x] == x && tgt[x] == x; }
  int unit_slot(int u) const {
    for (size_t k = 0; k < units.size(); ++k)
      if (units[k] == u) return int(k);
    throw std::invalid_argument("not a unit arrow");
  }
  double haar_at_unit(int u) const { return haar[unit_slot(u)].value(); }
};

struct AxiomViolation {
  std::string axiom;            // which law failed
  std::array<int, 3> arrows;    // witnesses (unused slots = -1)
  std::string detail;
};

// Exhaustive axiom audit (associativity exhaustive for <= 200 arrows,
// seeded random triples beyond that). Returns structured violations.
std::vector<AxiomViolation> validate_groupoid(const FiniteGroupoid& g,
                                              std::uint64_t seed = 0x9e3779b97f4a7c15ull);

FiniteGroupoid pair_groupoid(int n_points);
FiniteGroupoid cyclic_group_groupoid(int order);      // one unit, Z/n arrows
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

// Pair-groupoid coordinates: arrow (a,b) with source unit (b,b), target (a,a).
int pair_arrow(int n_points, int a, int b);
std::array<int, 2> pair_coords(int n_points, int arrow);
bool is_pair_groupoid(const FiniteGroupoid& g, int* n_points_out = nullptr);

std::string groupoid_to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const std::string& text);

// Arrow lists grouped by source (resp. target) unit, in unit-slot order.
std::vector<std::vector<int>> source_fibers(const FiniteGroupoid& g);
std::vector<std::vector<int>> target_fibers(const FiniteGroupoid& g);

}  // namespace glab

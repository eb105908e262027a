#include "glab/smooth_family.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace glab {

using nlohmann::json;

std::string family_name(Family f) {
  switch (f) {
    case Family::PairGrid: return "pair_grid";
    case Family::ActionRonR: return "action_r_on_r";
    case Family::ActionSO2onR2: return "action_so2_on_r2";
    case Family::GaugeSO2Polar: return "gauge_so2_polar";
  }
  throw std::logic_error("family_name: bad enum");
}

Family family_from_name(const std::string& name) {
  if (name == "pair_grid") return Family::PairGrid;
  if (name == "action_r_on_r") return Family::ActionRonR;
  if (name == "action_so2_on_r2") return Family::ActionSO2onR2;
  if (name == "gauge_so2_polar") return Family::GaugeSO2Polar;
  throw std::invalid_argument("unknown groupoid family: " + name);
}

SmoothGroupoidDescriptor make_pair_grid(std::vector<Grid1D> axes) {
  SmoothGroupoidDescriptor d;
  d.family = Family::PairGrid;
  d.axes = std::move(axes);
  validate_descriptor(d);
  return d;
}

SmoothGroupoidDescriptor make_action_r_on_r(Grid1D line) {
  SmoothGroupoidDescriptor d;
  d.family = Family::ActionRonR;
  d.axes = {line};
  validate_descriptor(d);
  return d;
}

SmoothGroupoidDescriptor make_action_so2_on_r2(Grid1D radii, int base_angles, int n_angles) {
  SmoothGroupoidDescriptor d;
  d.family = Family::ActionSO2onR2;
  d.radii = radii;
  d.base_angles = base_angles;
  d.n_angles = n_angles;
  validate_descriptor(d);
  return d;
}

SmoothGroupoidDescriptor make_so2_group(int n_angles) {
  SmoothGroupoidDescriptor d;
  d.family = Family::ActionSO2onR2;
  d.radii = Grid1D{0.0, 1.0, 1};
  d.base_angles = 1;
  d.n_angles = n_angles;
  validate_descriptor(d);
  return d;
}

SmoothGroupoidDescriptor make_gauge_so2_polar(Grid1D radii, int n_angles) {
  SmoothGroupoidDescriptor d;
  d.family = Family::GaugeSO2Polar;
  d.radii = radii;
  d.n_angles = n_angles;
  validate_descriptor(d);
  return d;
}

static void check_axis(const Grid1D& g, const char* what) {
  if (g.n < 2) throw std::invalid_argument(std::string(what) + ": need at least 2 points");
  if (!(g.step > 0)) throw std::invalid_argument(std::string(what) + ": step must be positive");
}

void validate_descriptor(const SmoothGroupoidDescriptor& d) {
  switch (d.family) {
    case Family::PairGrid:
      if (d.axes.empty() || d.axes.size() > 2)
        throw std::invalid_argument("pair_grid: 1 or 2 axes");
      for (const auto& a : d.axes) check_axis(a, "pair_grid axis");
      return;
    case Family::ActionRonR:
      if (d.axes.size() != 1) throw std::invalid_argument("action_r_on_r: exactly 1 axis");
      check_axis(d.axes[0], "action_r_on_r axis");
      return;
    case Family::ActionSO2onR2:
      if (d.n_angles < 2 || d.n_angles % 2 != 0)
        throw std::invalid_argument("action_so2_on_r2: n_angles must be even, >= 2");
      if (d.so2_group_only()) return;
      if (d.base_angles != d.n_angles)
        throw std::invalid_argument(
            "action_so2_on_r2: base ring resolution must match n_angles "
            "(or use the one-point base at the origin)");
      if (d.radii.n < 1 || !(d.radii.lo > 0) || !(d.radii.step > 0))
        throw std::invalid_argument("action_so2_on_r2: radii must be positive");
      return;
    case Family::GaugeSO2Polar:
      if (d.n_angles < 2 || d.n_angles % 2 != 0)
        throw std::invalid_argument("gauge_so2_polar: n_angles must be even, >= 2");
      check_axis(d.radii, "gauge_so2_polar radii");
      if (!(d.radii.lo > 0))
        throw std::invalid_argument("gauge_so2_polar: radii must stay off the origin");
      return;
  }
  throw std::logic_error("validate_descriptor: bad enum");
}

static json grid_json(const Grid1D& g) {
  return json{{"lo", g.lo}, {"step", g.step}, {"n", g.n}};
}
static Grid1D grid_from(const json& j) {
  return Grid1D{j.at("lo").get<double>(), j.at("step").get<double>(), j.at("n").get<int>()};
}

std::string descriptor_to_json(const SmoothGroupoidDescriptor& d) {
  json j;
  j["family"] = family_name(d.family);
  switch (d.family) {
    case Family::PairGrid:
    case Family::ActionRonR: {
      json ax = json::array();
      for (const auto& a : d.axes) ax.push_back(grid_json(a));
      j["axes"] = ax;
      break;
    }
    case Family::ActionSO2onR2:
      j["radii"] = grid_json(d.radii);
      j["base_angles"] = d.base_angles;
      j["n_angles"] = d.n_angles;
      break;
    case Family::GaugeSO2Polar:
      j["radii"] = grid_json(d.radii);
      j["n_angles"] = d.n_angles;
      break;
  }
  return j.dump(2);
}

SmoothGroupoidDescriptor descriptor_from_json(const std::string& text) {
  json j = json::parse(text);
  SmoothGroupoidDescriptor d;
  d.family = family_from_name(j.at("family").get<std::string>());
  switch (d.family) {
    case Family::PairGrid:
    case Family::ActionRonR:
      for (const auto& a : j.at("axes")) d.axes.push_back(grid_from(a));
      break;
    case Family::ActionSO2onR2:
      d.radii = grid_from(j.at("radii"));
      d.base_angles = j.at("base_angles").get<int>();
      d.n_angles = j.at("n_angles").get<int>();
      break;
    case Family::GaugeSO2Polar:
      d.radii = grid_from(j.at("radii"));
      d.n_angles = j.at("n_angles").get<int>();
      break;
  }
  validate_descriptor(d);
  return d;
}

LieAlgebroidDual algebroid_dual(const SmoothGroupoidDescriptor& d) {
  validate_descriptor(d);
  LieAlgebroidDual a;
  a.family = d.family;
  a.desc = d;
  switch (d.family) {
    case Family::PairGrid:
      for (size_t k = 0; k < d.axes.size(); ++k) {
        a.base.push_back({d.axes[k], false, d.axes.size() == 1 ? "x" : "x" + std::to_string(k)});
      }
      for (size_t k = 0; k < d.axes.size(); ++k) {
        a.fiber.push_back(
            {Grid1D::nyquist_dual(d.axes[k]), false, d.axes.size() == 1 ? "p" : "p" + std::to_string(k)});
      }
      break;
    case Family::ActionRonR:
      a.base.push_back({d.axes[0], false, "x"});
      a.fiber.push_back({Grid1D::nyquist_dual(d.axes[0]), false, "p"});
      break;
    case Family::ActionSO2onR2:
      a.base.push_back({d.radii, false, "r"});
      a.base.push_back({Grid1D::circle(d.so2_group_only() ? 1 : d.base_angles),
                        !d.so2_group_only(), "alpha"});
      a.fiber.push_back({Grid1D::circle_dual(d.n_angles), false, "lambda"});
      break;
    case Family::GaugeSO2Polar:
      a.base.push_back({d.radii, false, "r"});
      a.fiber.push_back({Grid1D::nyquist_dual(d.radii), false, "p_r"});
      a.fiber.push_back({Grid1D::circle_dual(d.n_angles), false, "lambda"});
      break;
  }
  return a;
}

static std::vector<double> rotate2(double x, double y, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * x - s * y, s * x + c * y};
}

std::vector<double> weyl_exp(const SmoothGroupoidDescriptor& d,
                             const std::vector<double>& base,
                             const std::vector<double>& fiber) {
  switch (d.family) {
    case Family::PairGrid: {
      const size_t n = d.axes.size();
      if (base.size() != n || fiber.size() != n)
        throw std::invalid_argument("weyl_exp: pair_grid wants matching base/fiber dims");
      std::vector<double> arrow(2 * n);
      for (size_t k = 0; k < n; ++k) {
        arrow[k] = base[k] + 0.5 * fiber[k];      // target
        arrow[n + k] = base[k] - 0.5 * fiber[k];  // source
      }
      return arrow;
    }
    case Family::ActionRonR:
      if (base.size() != 1 || fiber.size() != 1)
        throw std::invalid_argument("weyl_exp: action_r_on_r is 1-dimensional");
      return {fiber[0], base[0] - 0.5 * fiber[0]};  // (shift, source)
    case Family::ActionSO2onR2: {
      if (base.size() != 2 || fiber.size() != 1)
        throw std::invalid_argument("weyl_exp: action_so2_on_r2 wants (x,y) base, 1-dim fiber");
      const double xi = fiber[0];
      auto src = rotate2(base[0], base[1], 0.5 * xi);
      return {-xi, src[0], src[1]};  // (rotation angle, source point)
    }
    case Family::GaugeSO2Polar:
      if (base.size() != 1 || fiber.size() != 2)
        throw std::invalid_argument("weyl_exp: gauge_so2_polar wants radius base, (Xr,xi) fiber");
      // (target radius, source radius, rotation)
      return {base[0] + 0.5 * fiber[0], base[0] - 0.5 * fiber[0], -fiber[1]};
  }
  throw std::logic_error("weyl_exp: bad enum");
}

std::vector<double> unit_arrow(const SmoothGroupoidDescriptor& d,
                               const std::vector<double>& base) {
  std::vector<double> zero;
  switch (d.family) {
    case Family::PairGrid: zero.assign(d.axes.size(), 0.0); break;
    case Family::ActionRonR: zero.assign(1, 0.0); break;
    case Family::ActionSO2onR2: zero.assign(1, 0.0); break;
    case Family::GaugeSO2Polar: zero.assign(2, 0.0); break;
  }
  return weyl_exp(d, base, zero);
}

std::vector<double> arrow_inverse(const SmoothGroupoidDescriptor& d,
                                  const std::vector<double>& arrow) {
  switch (d.family) {
    case Family::PairGrid: {
      const size_t n = d.axes.size();
      if (arrow.size() != 2 * n) throw std::invalid_argument("arrow_inverse: bad arrow");
      std::vector<double> out(2 * n);
      for (size_t k = 0; k < n; ++k) {
        out[k] = arrow[n + k];
        out[n + k] = arrow[k];
      }
      return out;
    }
    case Family::ActionRonR:
      if (arrow.size() != 2) throw std::invalid_argument("arrow_inverse: bad arrow");
      return {-arrow[0], arrow[1] + arrow[0]};
    case Family::ActionSO2onR2: {
      if (arrow.size() != 3) throw std::invalid_argument("arrow_inverse: bad arrow");
      auto tgt = rotate2(arrow[1], arrow[2], arrow[0]);
      return {-arrow[0], tgt[0], tgt[1]};
    }
    case Family::GaugeSO2Polar:
      if (arrow.size() != 3) throw std::invalid_argument("arrow_inverse: bad arrow");
      return {arrow[1], arrow[0], -arrow[2]};
  }
  throw std::logic_error("arrow_inverse: bad enum");
}

}  // namespace glab

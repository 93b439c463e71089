#pragma once

// JSON serialization of regions, grids and estimates, and the PhaseField CSV
// format (one-line header with dimension, counts and box corners, then cell
// values in row-major order).

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nlpt/functional.hpp"
#include "nlpt/geometry.hpp"
#include "nlpt/kernel_quad.hpp"

namespace nlpt {

using Json = nlohmann::json;

// Doubles are printed with max_digits10 so repeated runs emit identical bytes.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline Json vec_json(const Vec& v, int dim) {
  Json a = Json::array();
  for (int i = 0; i < dim; ++i) a.push_back(v[i]);
  return a;
}

inline Vec vec_from_json(const Json& a) {
  std::vector<double> xs = a.get<std::vector<double>>();
  return vec_from(xs);
}

}  // namespace detail

inline Json to_json(const Box& b) {
  return Json{{"type", "box"},
              {"lower", detail::vec_json(b.lo, b.dim)},
              {"upper", detail::vec_json(b.hi, b.dim)}};
}

inline Box box_from_json(const Json& j) {
  const auto lo = j.at("lower").get<std::vector<double>>();
  const auto hi = j.at("upper").get<std::vector<double>>();
  if (lo.size() != hi.size()) throw std::invalid_argument("box: corner dimension mismatch");
  return Box(static_cast<int>(lo.size()), vec_from(lo), vec_from(hi));
}

inline Json to_json(const Region& r) {
  return std::visit(
      [](const auto& g) -> Json {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Box>) {
          return to_json(g);
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return Json{{"type", "cylinder"},
                      {"base_lower", detail::vec_json(g.base.lo, g.base.dim)},
                      {"base_upper", detail::vec_json(g.base.hi, g.base.dim)},
                      {"axis_interval", Json::array({g.axis_lo, g.axis_hi})}};
        } else if constexpr (std::is_same_v<T, Slab>) {
          return Json{{"type", "slab"},
                      {"dim", g.dim},
                      {"axis_interval", Json::array({g.lo, g.hi})}};
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return Json{{"type", "halfspace"},
                      {"normal", detail::vec_json(g.normal, g.dim)},
                      {"offset", g.offset}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return Json{{"type", "ball"},
                      {"center", detail::vec_json(g.center, g.dim)},
                      {"radius", g.radius}};
        } else {
          Json boxes = Json::array();
          for (const Box& b : g.boxes)
            boxes.push_back(Json{{"lower", detail::vec_json(b.lo, b.dim)},
                                 {"upper", detail::vec_json(b.hi, b.dim)}});
          return Json{{"type", "union"}, {"dim", g.dim}, {"boxes", boxes}};
        }
      },
      r);
}

inline Region region_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "box") return box_from_json(j);
  if (type == "cylinder") {
    const auto lo = j.at("base_lower").get<std::vector<double>>();
    const auto hi = j.at("base_upper").get<std::vector<double>>();
    const auto iv = j.at("axis_interval").get<std::vector<double>>();
    if (iv.size() != 2) throw std::invalid_argument("cylinder: axis_interval must be [a,b]");
    return Cylinder(Box(static_cast<int>(lo.size()), vec_from(lo), vec_from(hi)), iv[0], iv[1]);
  }
  if (type == "slab") {
    const auto iv = j.at("axis_interval").get<std::vector<double>>();
    if (iv.size() != 2) throw std::invalid_argument("slab: axis_interval must be [a,b]");
    return Slab(j.at("dim").get<int>(), iv[0], iv[1]);
  }
  if (type == "halfspace") {
    const auto n = j.at("normal").get<std::vector<double>>();
    return HalfSpace(static_cast<int>(n.size()), vec_from(n), j.at("offset").get<double>());
  }
  if (type == "ball") {
    const auto c = j.at("center").get<std::vector<double>>();
    return Ball(static_cast<int>(c.size()), vec_from(c), j.at("radius").get<double>());
  }
  if (type == "union") {
    const int dim = j.at("dim").get<int>();
    std::vector<Box> boxes;
    for (const auto& jb : j.at("boxes")) {
      const auto lo = jb.at("lower").get<std::vector<double>>();
      const auto hi = jb.at("upper").get<std::vector<double>>();
      boxes.emplace_back(dim, vec_from(lo), vec_from(hi));
    }
    return BoxUnion(dim, std::move(boxes));
  }
  if (type == "gridset")
    throw std::invalid_argument("region_from_json: use gridset_from_json for grid sets");
  throw std::invalid_argument("region_from_json: unknown region type '" + type + "'");
}

inline Json to_json(const GridGeometry& g) {
  Json counts = Json::array();
  for (int i = 0; i < g.dim(); ++i) counts.push_back(g.counts[i]);
  return Json{{"box", to_json(g.box)}, {"counts", counts}};
}

inline GridGeometry grid_geometry_from_json(const Json& j) {
  const Box box = box_from_json(j.at("box"));
  const auto counts = j.at("counts").get<std::vector<long>>();
  if (static_cast<int>(counts.size()) != box.dim)
    throw std::invalid_argument("grid: counts dimension mismatch");
  std::array<long, kMaxDim> c{1, 1, 1};
  for (std::size_t i = 0; i < counts.size(); ++i) c[i] = counts[i];
  return GridGeometry(box, c);
}

inline Json to_json(const Grid& g) {
  Json j = to_json(g.geom);
  j["values"] = g.values;
  return j;
}

inline Grid grid_from_json(const Json& j) {
  return Grid(grid_geometry_from_json(j), j.at("values").get<std::vector<double>>());
}

inline Json to_json(const GridSet& g) {
  Json j = to_json(g.geom);
  j["type"] = "gridset";
  Json members = Json::array();
  for (auto m : g.member) members.push_back(static_cast<int>(m));
  j["members"] = members;
  return j;
}

inline GridSet gridset_from_json(const Json& j) {
  const auto ms = j.at("members").get<std::vector<int>>();
  std::vector<std::uint8_t> member(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) member[i] = ms[i] ? 1 : 0;
  return GridSet(grid_geometry_from_json(j), std::move(member));
}

inline Json to_json(const EnergyEstimate& e) {
  return Json{{"value", e.value},
              {"error", e.error},
              {"tail_bound", e.tail_bound},
              {"evals", e.evals},
              {"unreliable", e.unreliable}};
}

inline Json to_json(const EnergyBreakdown& e) {
  return Json{{"potential", e.potential},
              {"nonlocal", e.nonlocal},
              {"total", e.total},
              {"region_tag", e.region_tag}};
}

// ---------------------------------------------------------------------------
// PhaseField CSV: "dim,count_1..count_N,lower_1..lower_N,upper_1..upper_N"
// on the first line, then one cell value per line, row-major.

inline void write_field_csv(std::ostream& os, const PhaseField& field) {
  const int d = field.geom.dim();
  os << d;
  for (int i = 0; i < d; ++i) os << ',' << field.geom.counts[i];
  for (int i = 0; i < d; ++i) os << ',' << format_double(field.geom.box.lo[i]);
  for (int i = 0; i < d; ++i) os << ',' << format_double(field.geom.box.hi[i]);
  os << '\n';
  for (double v : field.values) os << format_double(v) << '\n';
}

inline void write_field_csv(const std::string& path, const PhaseField& field) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
  write_field_csv(os, field);
}

inline PhaseField read_field_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("read_field_csv: empty input");
  std::vector<double> nums;
  std::stringstream ss(header);
  std::string tok;
  while (std::getline(ss, tok, ',')) nums.push_back(std::stod(tok));
  if (nums.empty()) throw std::runtime_error("read_field_csv: malformed header");
  const int d = static_cast<int>(nums[0]);
  if (d < 1 || d > kMaxDim || static_cast<int>(nums.size()) != 1 + 3 * d)
    throw std::runtime_error("read_field_csv: malformed header");
  std::array<long, kMaxDim> counts{1, 1, 1};
  Vec lo{0, 0, 0}, hi{0, 0, 0};
  for (int i = 0; i < d; ++i) counts[i] = static_cast<long>(nums[1 + i]);
  for (int i = 0; i < d; ++i) lo[i] = nums[1 + d + i];
  for (int i = 0; i < d; ++i) hi[i] = nums[1 + 2 * d + i];
  GridGeometry geom(Box(d, lo, hi), counts);
  std::vector<double> values;
  values.reserve(geom.size());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    values.push_back(std::stod(line));
  }
  return PhaseField(geom, std::move(values));
}

inline PhaseField read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_field_csv: cannot open " + path);
  return read_field_csv(is);
}

}  // namespace nlpt

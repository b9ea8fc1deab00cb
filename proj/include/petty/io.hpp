#pragma once

// Set descriptions and reports. Requires nlohmann/json ("json.hpp").

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "petty/box_union.hpp"
#include "petty/error.hpp"
#include "petty/polygon.hpp"
#include "petty/projection.hpp"

namespace petty {

inline constexpr const char* kToolkitVersion = "1.0.0";

using AnySet = std::variant<PolygonSet, BoxUnion>;

inline int dim_of(const AnySet& s) {
  return std::holds_alternative<PolygonSet>(s) ? 2 : std::get<BoxUnion>(s).dim();
}

namespace detail {

using nlohmann::json;

inline double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) fail(ErrorKind::invalid_input, "field '" + field + "': expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ErrorKind::invalid_input, "field '" + field + "': non-finite number");
  return v;
}

inline std::vector<double> coords_at(const json& j, const std::string& field, std::size_t expect = 0) {
  if (!j.is_array()) fail(ErrorKind::invalid_input, "field '" + field + "': expected an array");
  if (expect && j.size() != expect)
    fail(ErrorKind::invalid_input,
         "field '" + field + "': expected " + std::to_string(expect) + " coordinates, got " + std::to_string(j.size()));
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_at(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parses {"polygon": [[x, y], ...]} or {"boxes": [{"lo": [...], "hi": [...]}, ...]}.
inline AnySet parse_set(const std::string& text, const std::string& source = "<input>") {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::invalid_input, source + ": malformed JSON at " + detail::position(text, e.byte));
  }
  if (!j.is_object()) fail(ErrorKind::invalid_input, source + ": top level must be an object");
  try {
    if (j.contains("polygon")) {
      const json& p = j["polygon"];
      if (!p.is_array()) fail(ErrorKind::invalid_input, "field 'polygon': expected an array of points");
      std::vector<Vec2> pts;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto c = detail::coords_at(p[i], "polygon[" + std::to_string(i) + "]", 2);
        pts.push_back({c[0], c[1]});
      }
      return PolygonSet::make(std::move(pts));
    }
    if (j.contains("boxes")) {
      const json& b = j["boxes"];
      if (!b.is_array() || b.empty()) fail(ErrorKind::invalid_input, "field 'boxes': expected a non-empty array");
      std::vector<Box> boxes;
      int dim = 0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string f = "boxes[" + std::to_string(i) + "]";
        if (!b[i].is_object() || !b[i].contains("lo") || !b[i].contains("hi"))
          fail(ErrorKind::invalid_input, "field '" + f + "': expected an object with 'lo' and 'hi'");
        const auto lo = detail::coords_at(b[i]["lo"], f + ".lo");
        const auto hi = detail::coords_at(b[i]["hi"], f + ".hi", lo.size());
        if (i == 0) dim = static_cast<int>(lo.size());
        if (static_cast<int>(lo.size()) != dim || (dim != 2 && dim != 3))
          fail(ErrorKind::invalid_input, "field '" + f + "': dimension must be 2 or 3 and match the first box");
        Box box;
        box.dim = dim;
        for (int k = 0; k < dim; ++k) {
          box.lo[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
          box.hi[static_cast<std::size_t>(k)] = hi[static_cast<std::size_t>(k)];
        }
        boxes.push_back(box);
      }
      return BoxUnion::make(dim, std::move(boxes));
    }
  } catch (const Error& e) {
    fail(e.kind(), source + ": " + e.message());
  }
  fail(ErrorKind::invalid_input, source + ": expected a 'polygon' or 'boxes' field");
}

inline AnySet load_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::invalid_input, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_set(ss.str(), path);
}

inline nlohmann::json to_json(const PolygonSet& p) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& v : p.vertices()) pts.push_back({v.x, v.y});
  return {{"polygon", pts}};
}

inline nlohmann::json to_json(const BoxUnion& e) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const auto& b : e.boxes()) {
    nlohmann::json lo = nlohmann::json::array(), hi = nlohmann::json::array();
    for (int k = 0; k < e.dim(); ++k) {
      lo.push_back(b.lo[static_cast<std::size_t>(k)]);
      hi.push_back(b.hi[static_cast<std::size_t>(k)]);
    }
    boxes.push_back({{"lo", lo}, {"hi", hi}});
  }
  return {{"boxes", boxes}};
}

inline nlohmann::json to_json(const PettyReport& r) {
  return {{"dim", r.dim},
          {"volume", r.volume},
          {"polar_projection_volume", r.polar_projection_volume},
          {"error_estimate", r.error_estimate},
          {"product", r.product},
          {"bound", r.bound},
          {"slack", r.slack}};
}

/// Everything that determines a run's output.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int dimension{2};
  int grid_n{kDefaultCircleNodes};
  std::string policy;
  std::optional<std::uint64_t> seed;
  int count{0};
  int trials{0};
  int candidates{0};
  double tol{0.0};
  int max_steps{0};
  double stop_tol{0.0};
  bool exploratory{false};
  std::string out;
};

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<std::pair<std::string, std::string>> config_fields(const RunConfig& c) {
  std::string inputs;
  for (std::size_t i = 0; i < c.inputs.size(); ++i) inputs += (i ? ";" : "") + c.inputs[i];
  return {{"version", kToolkitVersion},
          {"command", c.command},
          {"input", inputs},
          {"dimension", std::to_string(c.dimension)},
          {"grid_n", std::to_string(c.grid_n)},
          {"policy", c.policy},
          {"seed", c.seed ? std::to_string(*c.seed) : ""},
          {"count", std::to_string(c.count)},
          {"trials", std::to_string(c.trials)},
          {"candidates", std::to_string(c.candidates)},
          {"tol", format_double(c.tol)},
          {"max_steps", std::to_string(c.max_steps)},
          {"stop_tol", format_double(c.stop_tol)},
          {"exploratory", c.exploratory ? "true" : "false"},
          {"out", c.out}};
}

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : config_fields(c)) j[k] = v;
  return j;
}

/// CSV with the run configuration as leading '#' lines, then a header row.
/// Numbers are written with %.17g so output is byte-reproducible.
class CsvWriter {
 public:
  CsvWriter(const RunConfig& cfg, std::vector<std::string> columns) : ncols_(columns.size()) {
    for (const auto& [k, v] : config_fields(cfg)) out_ << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }

  class Row {
   public:
    explicit Row(CsvWriter& w) : w_(w) {}
    Row& operator<<(double v) { return field(format_double(v)); }
    Row& operator<<(int v) { return field(std::to_string(v)); }
    Row& operator<<(long v) { return field(std::to_string(v)); }
    Row& operator<<(long long v) { return field(std::to_string(v)); }
    Row& operator<<(std::size_t v) { return field(std::to_string(v)); }
    Row& operator<<(const std::string& v) { return field(v); }
    Row& operator<<(const char* v) { return field(v); }
    ~Row() { w_.out_ << '\n'; }

   private:
    Row& field(const std::string& s) {
      if (n_++) w_.out_ << ',';
      w_.out_ << s;
      return *this;
    }
    CsvWriter& w_;
    std::size_t n_{0};
  };

  Row row() { return Row(*this); }
  std::string str() const { return out_.str(); }
  std::size_t columns() const { return ncols_; }

 private:
  std::ostringstream out_;
  std::size_t ncols_;
};

}  // namespace petty

#include "wpl/weights.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wpl/checked.hpp"
#include <json.hpp>

namespace wpl {

WeightType WeightType::from_weights(std::vector<int> ws) {
  WeightType w;
  w.weights = std::move(ws);
  w.points.reserve(w.weights.size());
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    w.points.push_back("l" + std::to_string(i + 1));
  }
  w.validate();
  return w;
}

WeightType WeightType::parse(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad weight JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array()) {
      throw std::invalid_argument("weight JSON needs a \"weights\" array");
    }
    std::vector<int> ws;
    for (const auto& v : j["weights"]) {
      if (!v.is_number_integer()) throw std::invalid_argument("weights must be integers");
      ws.push_back(v.get<int>());
    }
    WeightType w = from_weights(std::move(ws));
    if (j.contains("points")) {
      if (!j["points"].is_array() || j["points"].size() != w.weights.size()) {
        throw std::invalid_argument("points must list one label per weight");
      }
      w.points.clear();
      for (const auto& v : j["points"]) {
        if (!v.is_string()) throw std::invalid_argument("point labels must be strings");
        w.points.push_back(v.get<std::string>());
      }
    }
    w.validate();
    return w;
  }

  std::vector<int> ws;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(token, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight entry '" + token + "'");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) throw std::invalid_argument("bad weight entry '" + token + "'");
    ws.push_back(value);
  }
  return from_weights(std::move(ws));
}

void WeightType::validate() const {
  if (points.size() != weights.size()) {
    throw std::invalid_argument("weight/point count mismatch");
  }
  for (int p : weights) {
    if (p < 1) throw std::invalid_argument("weights must be >= 1");
  }
  std::set<std::string> seen(points.begin(), points.end());
  if (seen.size() != points.size()) {
    throw std::invalid_argument("point labels must be pairwise distinct");
  }
}

std::string WeightType::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(weights[i]);
  }
  return out;
}

StarGraph::StarGraph(const WeightType& w) {
  w.validate();
  position_.emplace_back(0, 0);  // center
  arm_vertex_.resize(w.weights.size());
  for (int i = 0; i < w.branch_count(); ++i) {
    for (int j = 1; j <= w.weights[static_cast<std::size_t>(i)] - 1; ++j) {
      arm_vertex_[static_cast<std::size_t>(i)].push_back(vertex_count());
      position_.emplace_back(i + 1, j);
    }
  }
  neighbors_.resize(position_.size());
  for (const auto& arm : arm_vertex_) {
    for (std::size_t j = 0; j < arm.size(); ++j) {
      int v = arm[j];
      int prev = (j == 0) ? star_vertex : arm[j - 1];
      neighbors_[static_cast<std::size_t>(prev)].push_back(v);
      neighbors_[static_cast<std::size_t>(v)].push_back(prev);
    }
  }
}

std::pair<int, int> StarGraph::arm_position(int v) const {
  return position_.at(static_cast<std::size_t>(v));
}

std::optional<int> StarGraph::vertex_index(int branch, int arm) const {
  if (branch < 1 || branch > static_cast<int>(arm_vertex_.size())) return std::nullopt;
  const auto& vs = arm_vertex_[static_cast<std::size_t>(branch - 1)];
  if (arm < 1 || arm > static_cast<int>(vs.size())) return std::nullopt;
  return vs[static_cast<std::size_t>(arm - 1)];
}

std::string StarGraph::label(int v) const {
  if (v == star_vertex) return "*";
  auto [i, j] = arm_position(v);
  return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

std::optional<int> StarGraph::parse_label(const std::string& text) const {
  if (text == "*") return star_vertex;
  if (text.size() < 5 || text.front() != '[' || text.back() != ']') return std::nullopt;
  std::size_t comma = text.find(',');
  if (comma == std::string::npos) return std::nullopt;
  try {
    int i = std::stoi(text.substr(1, comma - 1));
    int j = std::stoi(text.substr(comma + 1, text.size() - comma - 2));
    return vertex_index(i, j);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

const std::vector<int>& StarGraph::neighbors(int v) const {
  return neighbors_.at(static_cast<std::size_t>(v));
}

bool StarGraph::adjacent(int v, int w) const {
  const auto& ns = neighbors(v);
  return std::find(ns.begin(), ns.end(), w) != ns.end();
}

std::int64_t StarGraph::cartan(int v, int w) const {
  if (v == w) return 2;
  return adjacent(v, w) ? -1 : 0;
}

std::vector<std::vector<std::int64_t>> StarGraph::cartan_matrix() const {
  int n = vertex_count();
  std::vector<std::vector<std::int64_t>> m(static_cast<std::size_t>(n),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int v = 0; v < n; ++v) {
    m[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 2;
    for (int u : neighbors(v)) m[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = -1;
  }
  return m;
}

namespace {

void require_branches(const WeightType& w) {
  if (w.branch_count() == 0) {
    throw std::invalid_argument(
        "branchless weight type: the grading group has no unit generators to reduce");
  }
}

void require_normal(const WeightType& w, const GradingElement& x) {
  if (x.arm.size() != w.weights.size()) {
    throw std::invalid_argument("grading element does not match the weight type");
  }
  for (std::size_t i = 0; i < x.arm.size(); ++i) {
    if (x.arm[i] < 0 || x.arm[i] >= w.weights[i]) {
      throw std::invalid_argument("grading element does not match the weight type");
    }
  }
}

}  // namespace

GradingElement lp_identity(const WeightType& w) {
  require_branches(w);
  GradingElement x;
  x.arm.assign(static_cast<std::size_t>(w.branch_count()), 0);
  return x;
}

GradingElement lp_normal_form(const WeightType& w, const std::vector<std::int64_t>& raw,
                              std::int64_t c_mult) {
  require_branches(w);
  if (raw.size() != w.weights.size()) {
    throw std::invalid_argument("raw coordinate count does not match the weight count");
  }
  GradingElement x;
  x.c_mult = c_mult;
  x.arm.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::int64_t p = w.weights[i];
    x.arm[i] = pos_mod(raw[i], p);
    x.c_mult = checked_add(x.c_mult, floor_div(raw[i], p));
  }
  return x;
}

GradingElement lp_add(const WeightType& w, const GradingElement& x, const GradingElement& y) {
  require_branches(w);
  require_normal(w, x);
  require_normal(w, y);
  std::vector<std::int64_t> raw(x.arm.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = checked_add(x.arm[i], y.arm[i]);
  return lp_normal_form(w, raw, checked_add(x.c_mult, y.c_mult));
}

GradingElement lp_negate(const WeightType& w, const GradingElement& x) {
  require_branches(w);
  require_normal(w, x);
  std::vector<std::int64_t> raw(x.arm.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = checked_neg(x.arm[i]);
  return lp_normal_form(w, raw, checked_neg(x.c_mult));
}

GradingElement lp_unit_step(const WeightType& w, const GradingElement& x, int branch) {
  require_branches(w);
  require_normal(w, x);
  if (branch < 1 || branch > w.branch_count()) {
    throw std::invalid_argument("branch index out of range");
  }
  std::vector<std::int64_t> raw = x.arm;
  raw[static_cast<std::size_t>(branch - 1)] =
      checked_add(raw[static_cast<std::size_t>(branch - 1)], 1);
  return lp_normal_form(w, raw, x.c_mult);
}

std::string lp_to_text(const GradingElement& x) {
  std::string out = "k=" + std::to_string(x.c_mult) + ";a=";
  for (std::size_t i = 0; i < x.arm.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x.arm[i]);
  }
  return out;
}

}  // namespace wpl

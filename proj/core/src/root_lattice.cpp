#include "wpl/root_lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "wpl/checked.hpp"
#include <json.hpp>

namespace wpl {

bool ClassVector::is_zero() const { return delta == 0 && finite_is_zero(); }

bool ClassVector::finite_is_zero() const {
  return std::all_of(finite.begin(), finite.end(), [](std::int64_t c) { return c == 0; });
}

RootLattice::RootLattice(WeightType w) : weights_(std::move(w)), graph_(weights_) {}

ClassVector RootLattice::zero() const {
  ClassVector x;
  x.finite.assign(static_cast<std::size_t>(rank()), 0);
  return x;
}

ClassVector RootLattice::simple_root(int v) const {
  if (v < 0 || v >= rank()) throw std::invalid_argument("unknown vertex");
  ClassVector x = zero();
  x.finite[static_cast<std::size_t>(v)] = 1;
  return x;
}

ClassVector RootLattice::delta_class(std::int64_t r) const {
  ClassVector x = zero();
  x.delta = r;
  return x;
}

void RootLattice::check_shape(const ClassVector& x) const {
  if (static_cast<int>(x.finite.size()) != rank()) {
    throw std::invalid_argument("class vector shape does not match the weight type");
  }
}

std::int64_t RootLattice::symmetric_form(const ClassVector& u, const ClassVector& v) const {
  check_shape(u);
  check_shape(v);
  std::int64_t total = 0;
  for (int a = 0; a < rank(); ++a) {
    std::int64_t row = checked_mul(2, v.finite[static_cast<std::size_t>(a)]);
    for (int b : graph_.neighbors(a)) {
      row = checked_sub(row, v.finite[static_cast<std::size_t>(b)]);
    }
    total = checked_add(total, checked_mul(u.finite[static_cast<std::size_t>(a)], row));
  }
  return total;
}

std::int64_t RootLattice::pairing_with_simple(std::span<const std::int64_t> finite, int v) const {
  std::int64_t r = checked_mul(2, finite[static_cast<std::size_t>(v)]);
  for (int b : graph_.neighbors(v)) r = checked_sub(r, finite[static_cast<std::size_t>(b)]);
  return r;
}

bool RootLattice::cone_contains(const ClassVector& x) const {
  check_shape(x);
  std::int64_t star = x.finite[0];
  if (star >= 1) return true;
  if (star <= -1) return false;
  std::int64_t need = 0;
  int v = 1;
  for (int i = 0; i < weights_.branch_count(); ++i) {
    int len = weights_.weights[static_cast<std::size_t>(i)] - 1;
    std::int64_t low = 0;
    for (int j = 0; j < len; ++j, ++v) {
      low = std::min(low, x.finite[static_cast<std::size_t>(v)]);
    }
    need = checked_add(need, -low);  // depth of this arm below zero
  }
  return x.delta >= need;
}

ClassVector RootLattice::encode_simple(int branch, int j) const {
  if (branch < 1 || branch > weights_.branch_count()) {
    throw std::invalid_argument("branch index out of range");
  }
  int p = weights_.weights[static_cast<std::size_t>(branch - 1)];
  if (j < 0 || j >= p) throw std::invalid_argument("simple index out of range");
  ClassVector x = zero();
  if (j >= 1) {
    x.finite[static_cast<std::size_t>(*graph_.vertex_index(branch, j))] = 1;
    return x;
  }
  x.delta = 1;
  for (int a = 1; a <= p - 1; ++a) {
    x.finite[static_cast<std::size_t>(*graph_.vertex_index(branch, a))] = -1;
  }
  return x;
}

ClassVector RootLattice::encode_tube_object(int branch, int j, std::int64_t len) const {
  if (len == 0) throw std::invalid_argument("tube objects have nonzero length");
  if (branch < 1 || branch > weights_.branch_count()) {
    throw std::invalid_argument("branch index out of range");
  }
  std::int64_t p = weights_.weights[static_cast<std::size_t>(branch - 1)];
  if (j < 0 || j >= p) throw std::invalid_argument("simple index out of range");

  // Composition factors step downward from the top for positive length;
  // negative length is the shift, encoded by negating the class of the
  // complementary stack that starts one step up.
  ClassVector x = zero();
  std::int64_t count = len > 0 ? len : checked_neg(len);
  std::int64_t sign = len > 0 ? 1 : -1;
  std::int64_t periods = count / p;
  std::int64_t rest = count % p;
  x.delta = checked_mul(sign, periods);
  std::int64_t at = len > 0 ? j : pos_mod(j + 1, p);
  std::int64_t step = len > 0 ? -1 : 1;
  for (std::int64_t t = 0; t < rest; ++t) {
    ClassVector s = encode_simple(branch, static_cast<int>(at));
    for (std::size_t a = 0; a < x.finite.size(); ++a) {
      x.finite[a] = checked_add(x.finite[a], checked_mul(sign, s.finite[a]));
    }
    x.delta = checked_add(x.delta, checked_mul(sign, s.delta));
    at = pos_mod(at + step, p);
  }
  return x;
}

ClassVector RootLattice::encode_line_bundle(const GradingElement& g) const {
  if (g.arm.size() != weights_.weights.size()) {
    throw std::invalid_argument("grading element does not match the weight type");
  }
  ClassVector x = zero();
  x.finite[0] = 1;
  x.delta = g.c_mult;
  for (int i = 0; i < weights_.branch_count(); ++i) {
    std::int64_t ai = g.arm[static_cast<std::size_t>(i)];
    std::int64_t p = weights_.weights[static_cast<std::size_t>(i)];
    if (ai < 0 || ai >= p) throw std::invalid_argument("grading element not in normal form");
    for (std::int64_t j = 1; j <= ai; ++j) {
      x.finite[static_cast<std::size_t>(*graph_.vertex_index(i + 1, static_cast<int>(j)))] += 1;
    }
  }
  return x;
}

ClassVector RootLattice::encode_generic_torsion(std::int64_t r) const {
  if (r < 1) throw std::invalid_argument("torsion length must be >= 1");
  return delta_class(r);
}

ClassVector RootLattice::reflect(int v, const ClassVector& x) const {
  if (v < 0 || v >= rank()) throw std::invalid_argument("unknown vertex");
  check_shape(x);
  ClassVector out = x;
  reflect_finite_in_place(v, out.finite);
  return out;
}

void RootLattice::reflect_finite_in_place(int v, std::span<std::int64_t> finite) const {
  std::int64_t pairing = pairing_with_simple(finite, v);
  finite[static_cast<std::size_t>(v)] = checked_sub(finite[static_cast<std::size_t>(v)], pairing);
}

std::string RootLattice::to_text(const ClassVector& x) const {
  check_shape(x);
  std::ostringstream out;
  bool any = false;
  auto emit = [&](const std::string& key, std::int64_t value) {
    if (value == 0) return;
    if (any) out << "; ";
    out << key << '=' << value;
    any = true;
  };
  emit("*", x.finite[0]);
  for (int v = 1; v < rank(); ++v) {
    emit(graph_.label(v), x.finite[static_cast<std::size_t>(v)]);
  }
  emit("d", x.delta);
  if (!any) return "0";
  return out.str();
}

std::string RootLattice::to_json(const ClassVector& x) const {
  check_shape(x);
  nlohmann::ordered_json j;
  j["star"] = x.finite[0];
  nlohmann::ordered_json branches = nlohmann::ordered_json::array();
  int v = 1;
  for (int i = 0; i < weights_.branch_count(); ++i) {
    nlohmann::ordered_json arm = nlohmann::ordered_json::array();
    for (int a = 1; a <= weights_.weights[static_cast<std::size_t>(i)] - 1; ++a, ++v) {
      arm.push_back(x.finite[static_cast<std::size_t>(v)]);
    }
    branches.push_back(arm);
  }
  j["branch"] = branches;
  j["delta"] = x.delta;
  return j.dump();
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + s + "' in class vector");
  }
  if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "' in class vector");
  return v;
}

}  // namespace

ClassVector RootLattice::parse_class_vector(const std::string& text) const {
  std::string body = strip(text);
  ClassVector x = zero();
  if (body.empty() || body == "0") return x;

  if (body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad class vector JSON: ") + e.what());
    }
    if (j.contains("star")) x.finite[0] = j["star"].get<std::int64_t>();
    if (j.contains("delta")) x.delta = j["delta"].get<std::int64_t>();
    if (j.contains("branch")) {
      const auto& branches = j["branch"];
      if (!branches.is_array() ||
          static_cast<int>(branches.size()) != weights_.branch_count()) {
        throw std::invalid_argument("class vector branch count does not match the weight type");
      }
      int v = 1;
      for (int i = 0; i < weights_.branch_count(); ++i) {
        const auto& arm = branches[static_cast<std::size_t>(i)];
        int want = weights_.weights[static_cast<std::size_t>(i)] - 1;
        if (!arm.is_array() || static_cast<int>(arm.size()) != want) {
          throw std::invalid_argument("class vector arm length does not match the weight type");
        }
        for (int a = 0; a < want; ++a, ++v) {
          x.finite[static_cast<std::size_t>(v)] = arm[static_cast<std::size_t>(a)].get<std::int64_t>();
        }
      }
    }
    return x;
  }

  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = strip(item);
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad class vector entry '" + item + "'");
    }
    std::string key = strip(item.substr(0, eq));
    std::int64_t value = parse_int(strip(item.substr(eq + 1)));
    if (key == "d") {
      x.delta = value;
    } else {
      auto v = graph_.parse_label(key);
      if (!v) throw std::invalid_argument("unknown vertex '" + key + "' in class vector");
      x.finite[static_cast<std::size_t>(*v)] = value;
    }
  }
  return x;
}

}  // namespace wpl

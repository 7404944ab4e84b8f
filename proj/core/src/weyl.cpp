#include "wpl/weyl.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "wpl/checked.hpp"
#include <json.hpp>

namespace wpl {

const char* to_string(RootVerdict v) {
  switch (v) {
    case RootVerdict::not_root: return "not_root";
    case RootVerdict::real: return "real";
    case RootVerdict::imaginary: return "imaginary";
  }
  return "?";
}

const char* to_string(TerminalCase t) {
  switch (t) {
    case TerminalCase::simple_root: return "simple_root";
    case TerminalCase::fundamental_region: return "fundamental_region";
    case TerminalCase::defect: return "defect";
  }
  return "?";
}

const char* to_string(IndecomposableCount c) {
  switch (c) {
    case IndecomposableCount::zero: return "zero";
    case IndecomposableCount::one: return "one";
    case IndecomposableCount::infinite: return "infinite";
  }
  return "?";
}

namespace detail {

RootVerdict classify_finite_core(const RootLattice& L, std::vector<std::int64_t>& beta,
                                 TerminalCase& terminal_case, std::vector<int>* word,
                                 int* sign_out) {
  const int n = L.rank();
  if (sign_out) *sign_out = 1;

  bool any_pos = false, any_neg = false;
  for (std::int64_t c : beta) {
    any_pos = any_pos || c > 0;
    any_neg = any_neg || c < 0;
  }
  if (any_pos == any_neg) {  // zero vector, or mixed signs
    terminal_case = TerminalCase::defect;
    return RootVerdict::not_root;
  }
  int sign = 1;
  if (any_neg) {
    sign = -1;
    for (std::int64_t& c : beta) c = checked_neg(c);
  }
  if (sign_out) *sign_out = sign;

  thread_local std::vector<int> stack;
  thread_local std::vector<char> seen;

  std::int64_t height = 0;
  for (std::int64_t c : beta) height = checked_add(height, c);

  for (;;) {
    int support = 0, last = -1;
    for (int v = 0; v < n; ++v) {
      if (beta[static_cast<std::size_t>(v)] != 0) {
        ++support;
        last = v;
      }
    }
    if (support == 1 && beta[static_cast<std::size_t>(last)] == 1) {
      terminal_case = TerminalCase::simple_root;
      return RootVerdict::real;
    }
    if (support > 1) {
      int first = -1;
      for (int v = 0; v < n && first < 0; ++v) {
        if (beta[static_cast<std::size_t>(v)] != 0) first = v;
      }
      seen.assign(static_cast<std::size_t>(n), 0);
      stack.clear();
      stack.push_back(first);
      seen[static_cast<std::size_t>(first)] = 1;
      int visited = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : L.graph().neighbors(v)) {
          if (beta[static_cast<std::size_t>(u)] != 0 && !seen[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = 1;
            ++visited;
            stack.push_back(u);
          }
        }
      }
      if (visited != support) {
        terminal_case = TerminalCase::defect;
        return RootVerdict::not_root;
      }
    }

    int pick = -1;
    std::int64_t pairing = 0;
    for (int v = 0; v < n; ++v) {
      std::int64_t p = L.pairing_with_simple(beta, v);
      if (p > 0) {
        pick = v;
        pairing = p;
        break;
      }
    }
    if (pick < 0) {
      terminal_case = TerminalCase::fundamental_region;
      return RootVerdict::imaginary;
    }
    beta[static_cast<std::size_t>(pick)] =
        checked_sub(beta[static_cast<std::size_t>(pick)], pairing);
    if (word) word->push_back(pick);
    if (beta[static_cast<std::size_t>(pick)] < 0) {
      // A positive root never leaves the positive cone during descent.
      terminal_case = TerminalCase::defect;
      return RootVerdict::not_root;
    }
    std::int64_t new_height = height - pairing;
    if (new_height >= height) {
      throw std::logic_error("reflection descent failed to decrease the height");
    }
    height = new_height;
  }
}

RootVerdict hat_verdict(RootVerdict finite_verdict, bool finite_zero, std::int64_t r) {
  if (finite_zero) return r != 0 ? RootVerdict::imaginary : RootVerdict::not_root;
  return finite_verdict;
}

}  // namespace detail

namespace {

IndecomposableCount count_rule(RootVerdict v, bool cone_positive) {
  if (!cone_positive) return IndecomposableCount::zero;
  switch (v) {
    case RootVerdict::real: return IndecomposableCount::one;
    case RootVerdict::imaginary: return IndecomposableCount::infinite;
    case RootVerdict::not_root: return IndecomposableCount::zero;
  }
  return IndecomposableCount::zero;
}

RootClassification classify_common(const RootLattice& L, const ClassVector& phi,
                                   bool require_delta_free) {
  L.check_shape(phi);
  if (require_delta_free && phi.delta != 0) {
    throw std::invalid_argument("finite-part classification needs a delta-free vector");
  }
  RootClassification out;
  out.cone_positive = L.cone_contains(phi);
  if (phi.finite_is_zero()) {
    out.verdict = detail::hat_verdict(RootVerdict::not_root, true, phi.delta);
    out.terminal_case = TerminalCase::defect;
    out.terminal = phi;
  } else {
    std::vector<std::int64_t> beta = phi.finite;
    int sign = 1;
    out.verdict = detail::classify_finite_core(L, beta, out.terminal_case, &out.word, &sign);
    out.terminal.finite.resize(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) {
      out.terminal.finite[i] = sign * beta[i];
    }
    out.terminal.delta = phi.delta;
  }
  out.count = count_rule(out.verdict, out.cone_positive);
  return out;
}

}  // namespace

RootClassification classify_finite_part(const RootLattice& L, const ClassVector& alpha) {
  return classify_common(L, alpha, true);
}

RootClassification classify_hat(const RootLattice& L, const ClassVector& phi) {
  return classify_common(L, phi, false);
}

IndecomposableCount indecomposable_count(const RootLattice& L, const ClassVector& phi) {
  L.check_shape(phi);
  if (!L.cone_contains(phi)) return IndecomposableCount::zero;
  RootVerdict v;
  if (phi.finite_is_zero()) {
    v = detail::hat_verdict(RootVerdict::not_root, true, phi.delta);
  } else {
    std::vector<std::int64_t> beta = phi.finite;
    TerminalCase tc;
    v = detail::classify_finite_core(L, beta, tc, nullptr, nullptr);
  }
  return count_rule(v, true);
}

Reduction reduce_to_case(const RootLattice& L, const ClassVector& phi) {
  RootClassification c = classify_hat(L, phi);
  return Reduction{c.terminal_case, std::move(c.word), std::move(c.terminal)};
}

std::string classification_json(const RootLattice& L, const RootClassification& c) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(c.verdict);
  j["cone_positive"] = c.cone_positive;
  j["count"] = to_string(c.count);
  nlohmann::ordered_json word = nlohmann::ordered_json::array();
  for (int v : c.word) word.push_back(L.graph().label(v));
  j["word"] = word;
  j["terminal"] = L.to_text(c.terminal);
  return j.dump();
}

std::size_t FiniteVectorHash::operator()(const std::vector<std::int64_t>& v) const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t c : v) {
    std::uint64_t x = static_cast<std::uint64_t>(c);
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

bool FiniteRootSet::contains(std::span<const std::int64_t> finite) const {
  return find(finite) != nullptr;
}

const RootVerdict* FiniteRootSet::find(std::span<const std::int64_t> finite) const {
  std::vector<std::int64_t> key(finite.begin(), finite.end());
  auto it = map_.find(key);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

std::int64_t height_of(const std::vector<std::int64_t>& v) {
  std::int64_t h = 0;
  for (std::int64_t c : v) h += c < 0 ? -c : c;
  return h;
}

}  // namespace

namespace {

// Walks every non-negative arm assignment pairing <= 0 with each simple
// root.  Such assignments never increase outward along an arm, so the
// search stays below the center value and the budget.
struct SeedEnumerator {
  struct Arm {
    int first_vertex;
    int length;
  };

  std::vector<Arm> arms;
  std::int64_t center = 0;
  std::vector<std::int64_t> coords;
  std::vector<std::vector<std::int64_t>> seeds;

  std::int64_t& value(const Arm& a, int j) {
    return coords[static_cast<std::size_t>(a.first_vertex + j - 1)];
  }

  void next_arm(std::size_t arm_idx, std::int64_t left, std::int64_t first_sum) {
    if (arm_idx == arms.size()) {
      if (2 * center <= first_sum) seeds.push_back(coords);
      return;
    }
    assign(arm_idx, 1, left, first_sum);
  }

  void assign(std::size_t arm_idx, int j, std::int64_t left, std::int64_t first_sum) {
    const Arm& arm = arms[arm_idx];
    std::int64_t prev = (j == 1) ? center : value(arm, j - 1);
    std::int64_t hi = std::min(prev, left);
    for (std::int64_t b = 0; b <= hi; ++b) {
      value(arm, j) = b;
      if (j >= 2) {
        // the pairing at position j-1 is determined once b_j is chosen
        std::int64_t before = (j == 2) ? center : value(arm, j - 2);
        if (2 * value(arm, j - 1) > before + b) continue;
      }
      if (j == arm.length) {
        if (2 * b <= prev) {
          next_arm(arm_idx + 1, left - b, first_sum + value(arm, 1));
        }
      } else {
        assign(arm_idx, j + 1, left - b, first_sum);
      }
    }
    value(arm, j) = 0;
  }
};

}  // namespace

std::vector<std::vector<std::int64_t>> fundamental_region_seeds(const RootLattice& L,
                                                                std::int64_t max_height) {
  const auto& weights = L.weight_type().weights;
  const StarGraph& g = L.graph();

  SeedEnumerator e;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    int len = weights[static_cast<std::size_t>(i)] - 1;
    if (len > 0) e.arms.push_back({*g.vertex_index(i + 1, 1), len});
  }

  for (std::int64_t t = 1; t <= max_height; ++t) {
    e.center = t;
    e.coords.assign(static_cast<std::size_t>(L.rank()), 0);
    e.coords[0] = t;
    e.next_arm(0, max_height - t, 0);
  }
  return std::move(e.seeds);
}

FiniteRootSet enumerate_finite_roots(const RootLattice& L, std::int64_t max_height,
                                     const EnumerationOptions& opts) {
  if (max_height < 1) throw std::invalid_argument("height bound must be >= 1");
  const int n = L.rank();
  FiniteRootSet out;
  auto& map = out.map_;

  std::deque<std::vector<std::int64_t>> work;
  auto push = [&](std::vector<std::int64_t> v, RootVerdict verdict) {
    if (height_of(v) > max_height) return;
    auto [it, fresh] = map.emplace(std::move(v), verdict);
    if (fresh) {
      if (map.size() > opts.max_roots) {
        throw ResourceLimitError("root enumeration exceeded the configured bound");
      }
      work.push_back(it->first);
    }
  };
  auto close_under_reflections = [&]() {
    while (!work.empty()) {
      std::vector<std::int64_t> v = std::move(work.front());
      work.pop_front();
      RootVerdict verdict = map.at(v);
      for (int u = 0; u < n; ++u) {
        std::int64_t pairing = L.pairing_with_simple(v, u);
        if (pairing == 0) continue;
        std::vector<std::int64_t> w = v;
        w[static_cast<std::size_t>(u)] = checked_sub(w[static_cast<std::size_t>(u)], pairing);
        push(std::move(w), verdict);
      }
    }
  };

  for (int v = 0; v < n; ++v) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(v)] = 1;
    push(e, RootVerdict::real);
    e[static_cast<std::size_t>(v)] = -1;
    push(e, RootVerdict::real);
  }
  close_under_reflections();

  for (auto& seed : fundamental_region_seeds(L, max_height)) {
    push(std::move(seed), RootVerdict::imaginary);
  }
  close_under_reflections();

  // reflection closure of the fundamental seeds stays positive; mirror it
  std::vector<std::vector<std::int64_t>> negatives;
  for (const auto& [vec, verdict] : map) {
    if (verdict == RootVerdict::imaginary) {
      std::vector<std::int64_t> neg(vec.size());
      for (std::size_t i = 0; i < vec.size(); ++i) neg[i] = -vec[i];
      negatives.push_back(std::move(neg));
    }
  }
  for (auto& neg : negatives) push(std::move(neg), RootVerdict::imaginary);
  close_under_reflections();

  return out;
}

std::vector<ClassVector> enumerate_roots(const RootLattice& L, std::int64_t max_height,
                                         std::int64_t delta_lo, std::int64_t delta_hi,
                                         const EnumerationOptions& opts) {
  if (delta_lo > delta_hi) throw std::invalid_argument("empty delta range");
  FiniteRootSet set = enumerate_finite_roots(L, max_height, opts);

  std::vector<std::vector<std::int64_t>> finite;
  finite.reserve(set.size());
  for (const auto& [vec, verdict] : set.map()) finite.push_back(vec);
  std::sort(finite.begin(), finite.end());

  const std::vector<std::int64_t> zero(static_cast<std::size_t>(L.rank()), 0);
  auto zero_at = std::lower_bound(finite.begin(), finite.end(), zero);

  std::vector<ClassVector> out;
  std::size_t window = static_cast<std::size_t>(delta_hi - delta_lo + 1);
  if ((set.size() + 1) * window > opts.max_roots) {
    throw ResourceLimitError("root window exceeded the configured bound");
  }
  out.reserve((set.size() + 1) * window);
  for (std::int64_t r = delta_lo; r <= delta_hi; ++r) {
    auto emit = [&](const std::vector<std::int64_t>& f) {
      ClassVector x;
      x.finite = f;
      x.delta = r;
      out.push_back(std::move(x));
    };
    for (auto it = finite.begin(); it != finite.end(); ++it) {
      if (r != 0 && it == zero_at) emit(zero);
      emit(*it);
    }
    if (r != 0 && zero_at == finite.end()) emit(zero);
  }
  return out;
}

}  // namespace wpl

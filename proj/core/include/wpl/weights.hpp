#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wpl {

/// Weight data for a weighted projective line: positive integer weights
/// p_1..p_n attached to pairwise distinct marked points of the line.
/// Weight-1 entries are legal; they keep their point but contribute no
/// graph vertices.  n = 0 (no marked points) is permitted.
struct WeightType {
  std::vector<int> weights;
  std::vector<std::string> points;

  /// Auto-generates distinct point labels l1, l2, ...
  static WeightType from_weights(std::vector<int> ws);

  /// Accepts the comma form "2,3,5" or a JSON object
  /// {"weights":[2,3,5],"points":["l1","l2","l3"]} (points optional).
  static WeightType parse(const std::string& text);

  void validate() const;  // throws std::invalid_argument

  int branch_count() const { return static_cast<int>(weights.size()); }
  bool same_shape(const WeightType& other) const { return weights == other.weights; }
  std::string to_text() const;
};

/// Star-shaped graph of a weight type: a central vertex plus one arm per
/// weight p_i >= 2 with vertices [i,1]..[i,p_i-1].  Canonical vertex order
/// is the center first, then branches in input order, arm position
/// ascending; all APIs index vertices in that order.
class StarGraph {
 public:
  static constexpr int star_vertex = 0;

  explicit StarGraph(const WeightType& w);

  int vertex_count() const { return static_cast<int>(position_.size()); }
  bool is_star(int v) const { return v == star_vertex; }

  /// (branch, arm) of a vertex; the center reports {0, 0}.
  std::pair<int, int> arm_position(int v) const;

  /// Vertex index of [branch, arm], if that vertex exists.
  std::optional<int> vertex_index(int branch, int arm) const;

  std::string label(int v) const;  // "*" or "[i,j]"
  std::optional<int> parse_label(const std::string& text) const;

  const std::vector<int>& neighbors(int v) const;
  bool adjacent(int v, int w) const;

  /// Cartan pairing of two vertices: 2 on the diagonal, -1 for adjacent
  /// pairs, 0 otherwise.
  std::int64_t cartan(int v, int w) const;
  std::vector<std::vector<std::int64_t>> cartan_matrix() const;

 private:
  std::vector<std::pair<int, int>> position_;      // vertex -> (branch, arm)
  std::vector<std::vector<int>> arm_vertex_;       // branch(0-based) -> arm vertices
  std::vector<std::vector<int>> neighbors_;
};

/// Element of the grading group of a weight type in normal form:
/// c_mult copies of the common period c plus arm coordinates a_i with
/// 0 <= a_i < p_i.  Every raw coordinate tuple reduces to exactly one
/// such pair, which makes equality structural.
struct GradingElement {
  std::int64_t c_mult = 0;
  std::vector<std::int64_t> arm;  // one entry per branch

  bool operator==(const GradingElement&) const = default;
};

GradingElement lp_identity(const WeightType& w);

/// Reduces raw coordinates (one unit-generator coefficient per branch,
/// plus a multiple of the period) to normal form.  Rejects branchless
/// weight types, which present no grading group to reduce in.
GradingElement lp_normal_form(const WeightType& w, const std::vector<std::int64_t>& raw,
                              std::int64_t c_mult);

GradingElement lp_add(const WeightType& w, const GradingElement& x, const GradingElement& y);
GradingElement lp_negate(const WeightType& w, const GradingElement& x);

/// x plus the unit generator of the given branch (1-based).
GradingElement lp_unit_step(const WeightType& w, const GradingElement& x, int branch);

std::string lp_to_text(const GradingElement& x);

}  // namespace wpl

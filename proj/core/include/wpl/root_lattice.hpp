#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpl/weights.hpp"

namespace wpl {

/// A class in the extended root lattice of a weight type: an integer
/// coefficient per finite vertex (center first, then arm vertices in
/// canonical order) plus a coefficient of the radical direction delta.
struct ClassVector {
  std::vector<std::int64_t> finite;
  std::int64_t delta = 0;

  bool operator==(const ClassVector&) const = default;
  bool is_zero() const;
  bool finite_is_zero() const;
};

/// The extended root lattice of a weight type, carrying the symmetric
/// bilinear form (the Cartan form of the star graph with delta radical),
/// the positive cone of sheaf classes, and the encodings of the standard
/// sheaf-theoretic objects as lattice classes.
///
/// All operations are pure and the object is immutable after
/// construction, so concurrent use needs no synchronization.
class RootLattice {
 public:
  explicit RootLattice(WeightType w);

  const WeightType& weight_type() const { return weights_; }
  const StarGraph& graph() const { return graph_; }
  int rank() const { return graph_.vertex_count(); }

  ClassVector zero() const;
  ClassVector simple_root(int v) const;           // alpha_v
  ClassVector delta_class(std::int64_t r) const;  // r * delta

  void check_shape(const ClassVector& x) const;

  /// Symmetric bilinear form.  Restricted to the finite part it is the
  /// Cartan form of the graph; delta pairs to zero with everything.
  std::int64_t symmetric_form(const ClassVector& u, const ClassVector& v) const;

  /// Pairing (x, alpha_v) evaluated on the finite coordinates.
  std::int64_t pairing_with_simple(std::span<const std::int64_t> finite, int v) const;

  /// Membership in the positive cone generated by the arm simples, the
  /// exceptional-point simples, the line-bundle classes and delta.
  /// Closed form: star >= 1 always lies in the cone; star = 0 requires
  /// delta >= the total depth Sum_i max(0, -min_j x_{i,j}); negative star
  /// never does.  The brute-force generator enumeration in the test suite
  /// gates this formula.
  bool cone_contains(const ClassVector& x) const;

  /// Class of the simple sheaf S_{i,j} at branch i (1-based), 0 <= j < p_i.
  /// Arm indices give the arm simple roots; j = 0 gives delta minus the
  /// whole arm (so plain delta on a weight-1 branch).
  ClassVector encode_simple(int branch, int j) const;

  /// Class of the length-|len| indecomposable in the tube at branch i with
  /// top S_{i,j} (len > 0), or of the shift of the unique such object
  /// extending S_{i,j} (len < 0, encoded by negation).  len = 0 rejected.
  ClassVector encode_tube_object(int branch, int j, std::int64_t len) const;

  /// Class of the line bundle of the given degree: the center simple root
  /// plus c_mult * delta plus the first arm[i] simples of each arm.
  /// Computed on the normal form, so unit-step paths are irrelevant.
  ClassVector encode_line_bundle(const GradingElement& x) const;

  /// Class of a torsion sheaf of length r >= 1 at an unmarked point.
  ClassVector encode_generic_torsion(std::int64_t r) const;

  /// Simple reflection at vertex v: x - (x, alpha_v) alpha_v.  Involution;
  /// fixes delta; preserves the form.
  ClassVector reflect(int v, const ClassVector& x) const;
  void reflect_finite_in_place(int v, std::span<std::int64_t> finite) const;

  // Text form "*=m; [i,j]=x; d=r" (zero entries omitted, zero vector "0")
  // and JSON form {"star":m,"branch":[[...],...],"delta":r}.  parse accepts
  // both; parse(to_text(x)) == x and parse(to_json(x)) == x hold
  // byte-exactly on the printed side.
  std::string to_text(const ClassVector& x) const;
  std::string to_json(const ClassVector& x) const;
  ClassVector parse_class_vector(const std::string& text) const;

 private:
  WeightType weights_;
  StarGraph graph_;
};

}  // namespace wpl

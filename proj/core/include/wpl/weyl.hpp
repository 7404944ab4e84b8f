#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wpl/root_lattice.hpp"

namespace wpl {

enum class RootVerdict { not_root, real, imaginary };
enum class TerminalCase { simple_root, fundamental_region, defect };
enum class IndecomposableCount { zero, one, infinite };

const char* to_string(RootVerdict v);
const char* to_string(TerminalCase t);
const char* to_string(IndecomposableCount c);

/// Result of classifying a class vector.  `word` lists the vertices of the
/// simple reflections that carry the input to `terminal`, applied left to
/// right.  For a real root the terminal finite part is plus or minus a
/// simple root; for an imaginary one it sits in the fundamental region;
/// a defect terminal has mixed signs, disconnected support, or zero
/// finite part.
struct RootClassification {
  RootVerdict verdict = RootVerdict::not_root;
  bool cone_positive = false;
  IndecomposableCount count = IndecomposableCount::zero;
  std::vector<int> word;
  TerminalCase terminal_case = TerminalCase::defect;
  ClassVector terminal;
};

struct Reduction {
  TerminalCase terminal_case = TerminalCase::defect;
  std::vector<int> word;
  ClassVector terminal;
};

/// Classifies a delta-free vector by reflection descent: a sign-homogeneous
/// connected vector is reflected at a positive-pairing vertex (smallest in
/// canonical order) until it becomes a simple root (real), lands in the
/// fundamental region, meaning every pairing is non-positive (imaginary),
/// or degenerates (not a root).  The coefficient-sum height strictly
/// decreases at each step, so the loop terminates.
RootClassification classify_finite_part(const RootLattice& L, const ClassVector& alpha);

/// Full classification of any vector: the finite part decides real versus
/// imaginary, pure multiples of delta are imaginary roots, and the zero
/// vector is no root.  cone_positive records positive-cone membership.
RootClassification classify_hat(const RootLattice& L, const ClassVector& phi);

/// zero / one / infinite indecomposable sheaves of the given class:
/// one for a cone-positive real root, infinite for a cone-positive
/// imaginary root, zero otherwise.
IndecomposableCount indecomposable_count(const RootLattice& L, const ClassVector& phi);

Reduction reduce_to_case(const RootLattice& L, const ClassVector& phi);

/// Fixed-key-order JSON {"verdict","cone_positive","count","word","terminal"}.
std::string classification_json(const RootLattice& L, const RootClassification& c);

struct EnumerationOptions {
  std::size_t max_roots = 8'000'000;  // explicit failure, never silent truncation
};

struct FiniteVectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const;
};

/// Finite-part roots up to a height bound, with their verdicts.  Real
/// roots are the reflection closure of the simple roots; imaginary ones
/// are the closure of the fundamental-region vectors; both closures prune
/// at the height bound, which is complete because descent paths never
/// climb.
class FiniteRootSet {
 public:
  using Map = std::unordered_map<std::vector<std::int64_t>, RootVerdict, FiniteVectorHash>;

  /// Hot loops should probe map() with a reused key vector; these helpers
  /// copy the span into a fresh key and stay safe under concurrency.
  const Map& map() const { return map_; }
  bool contains(std::span<const std::int64_t> finite) const;
  const RootVerdict* find(std::span<const std::int64_t> finite) const;
  std::size_t size() const { return map_.size(); }

 private:
  friend FiniteRootSet enumerate_finite_roots(const RootLattice&, std::int64_t,
                                              const EnumerationOptions&);
  Map map_;
};

FiniteRootSet enumerate_finite_roots(const RootLattice& L, std::int64_t max_height,
                                     const EnumerationOptions& opts = {});

/// Positive vectors pairing non-positively with every simple root, up to
/// the height bound.  Connectedness is automatic: arm coordinates of such
/// a vector never increase outward, so its support is a star around the
/// center.
std::vector<std::vector<std::int64_t>> fundamental_region_seeds(const RootLattice& L,
                                                                std::int64_t max_height);

/// All roots with finite-part height <= max_height and delta coefficient
/// in [delta_lo, delta_hi], sorted by (delta, finite coordinates).
/// Includes the pure delta multiples with nonzero coefficient.
std::vector<ClassVector> enumerate_roots(const RootLattice& L, std::int64_t max_height,
                                         std::int64_t delta_lo, std::int64_t delta_hi,
                                         const EnumerationOptions& opts = {});

/// Exceeding max_roots raises this instead of returning a partial answer.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Allocation-free descent core used by the box sweeps: classifies the
/// vector in `beta` (clobbered) and reports the terminal case.  `word`
/// may be null.  Returns the verdict of the finite part.
RootVerdict classify_finite_core(const RootLattice& L, std::vector<std::int64_t>& beta,
                                 TerminalCase& terminal_case, std::vector<int>* word,
                                 int* sign_out);

/// Verdict of phi = alpha + r*delta given the verdict of its finite part.
RootVerdict hat_verdict(RootVerdict finite_verdict, bool finite_zero, std::int64_t r);

}  // namespace detail

}  // namespace wpl

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wpl/root_lattice.hpp"

namespace wpl {

enum class GenKind { e, f, h, c };

/// Loop-algebra generator name: e/f/h carry a graph vertex and an integer
/// loop index; c stands alone.
struct GeneratorSymbol {
  GenKind kind = GenKind::c;
  int vertex = -1;
  std::int64_t index = 0;

  static GeneratorSymbol central() { return {GenKind::c, -1, 0}; }
};

enum class SymbolKind : std::uint8_t { tube, line, shifted_line, hline };

/// Basis symbol of the graded part of the model.  Each stands for a signed
/// characteristic function of one indecomposable family:
///   tube(i,j,m)     the length-m object in tube i with top S_{i,j}
///                   (m < 0: its shift), weighted by the sign of m;
///   line(k)         the line bundle of degree k*c, weighted by sign(k);
///   shifted_line(r) the shift of the line bundle of degree -r*c,
///                   weighted by sign(r); degree -alpha_* + r*delta;
///   hline(r)        the degree r*delta torsion family with no maps to
///                   arm simples, weighted by sign(r).
struct BasisSymbol {
  SymbolKind kind = SymbolKind::line;
  int branch = 0;          // tube only, 1-based
  int pos = 0;             // tube only, 0 <= pos < p_branch
  std::int64_t index = 0;  // tube length / line degree / loop index

  friend auto operator<=>(const BasisSymbol&, const BasisSymbol&) = default;
};

/// Integer combination of basis symbols plus a diagonal part.  The
/// diagonal part is a single lattice vector d standing for the Cartan
/// element of d; it is linear in d, so collecting it into one vector is
/// the canonical form.  Term coefficients are never zero.
class ModelElement {
 public:
  ModelElement() = default;
  explicit ModelElement(int lattice_rank);

  const std::map<BasisSymbol, std::int64_t>& terms() const { return terms_; }
  const ClassVector& cartan_part() const { return cartan_; }

  bool is_zero() const;
  bool has_cartan() const;

  ModelElement& add_term(const BasisSymbol& s, std::int64_t coeff);
  ModelElement& add_cartan(const ClassVector& d, std::int64_t coeff);
  ModelElement& add(const ModelElement& other, std::int64_t coeff);
  ModelElement& negate();

  friend ModelElement operator+(ModelElement a, const ModelElement& b);
  friend ModelElement operator-(ModelElement a, const ModelElement& b);
  friend ModelElement operator*(std::int64_t c, ModelElement a);
  bool operator==(const ModelElement&) const = default;

 private:
  std::map<BasisSymbol, std::int64_t> terms_;
  ClassVector cartan_;
};

struct RelationFailure {
  std::string relation;
  std::string computed;
  std::string expected;
};

struct SkippedFamily {
  std::string family;
  std::string reason;
  std::int64_t instances = 0;
};

/// Outcome of checking the loop-algebra relation list on the model
/// elements.  Every instance is verified exactly, failed, or skipped
/// because some needed bracket is outside the computed table; skipped
/// instances are aggregated into families.
struct RelationReport {
  std::int64_t verified = 0;
  std::vector<RelationFailure> failed;
  std::vector<SkippedFamily> not_derivable;

  std::string to_json() const;  // {"verified","failed","not_derivable"}
};

struct JacobiReport {
  std::int64_t triples = 0;
  std::int64_t pairs = 0;
  std::vector<std::string> failures;
};

/// Symbolic graded Lie-algebra model over a root lattice.  Brackets come
/// from a fixed table of computed cases:
///
///   (a) two tube symbols in one tube; distinct tubes bracket to zero;
///   (b) hline(r) with hline(-r), other hline pairs to zero;
///   (c) line(a) with shifted_line(b): hline(a+b), or the diagonal part
///       -(alpha_* + a delta) when b = -a;
///   (d) hline(r) with line(s): 2 line(r+s);
///   (e) a zero-sum combination of period-length tube symbols with
///       line(s); only the combination is defined, not its summands;
///   (f) the diagonal part acts on any graded symbol by minus its form
///       pairing with the symbol degree.
///
/// Everything else is reported "not derivable" rather than silently
/// zeroed, because the table does not decide it.
class LoopModel {
 public:
  explicit LoopModel(const RootLattice& lattice);

  const RootLattice& lattice() const { return *lattice_; }

  ModelElement zero() const;
  ModelElement tube(int branch, int pos, std::int64_t len) const;
  ModelElement line(std::int64_t k) const;
  ModelElement shifted_line(std::int64_t r) const;
  ModelElement hline(std::int64_t r) const;
  ModelElement cartan(const ClassVector& d) const;

  /// The element table: e at an arm vertex is a tube object of length
  /// r*p+1, f one of length r*p-1 over the previous position, h the
  /// difference of two period-length tube objects; at the center e/f are
  /// the plain and shifted line families and h the hline family; zero
  /// loop index h's and the central element are diagonal.
  ModelElement of_generator(const GeneratorSymbol& g) const;

  struct Degree {
    bool mixed = false;
    ClassVector value;
  };
  Degree degree(const ModelElement& x) const;
  ClassVector symbol_degree(const BasisSymbol& s) const;

  struct BracketResult {
    bool derivable = false;
    ModelElement value;
    std::string reason;  // set when not derivable
  };
  BracketResult bracket(const ModelElement& x, const ModelElement& y) const;

  /// Evaluates both sides of every loop-algebra relation instance with
  /// all loop indices bounded by the truncation (Serre inner indices
  /// included) through the element table and the bracket.
  RelationReport check_loop_relations(int truncation) const;

  /// Seeded sampling of Jacobi triples and antisymmetry pairs inside the
  /// tube-plus-diagonal family, which the table closes under bracket.
  JacobiReport check_jacobi(int samples, std::uint64_t seed,
                            std::int64_t max_len = 6) const;

  std::string to_string(const ModelElement& x) const;
  std::string generator_name(const GeneratorSymbol& g) const;

 private:
  const RootLattice* lattice_;
};

/// Euler measure of the hline family; enters rules (b) and (d) above.
inline constexpr std::int64_t kTorsionFamilyEuler = 2;

}  // namespace wpl

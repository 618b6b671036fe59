#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sml/catalog.hpp"
#include "sml/error.hpp"
#include "sml/geometry.hpp"
#include "sml/matrix.hpp"
#include "sml/morphism.hpp"
#include "sml/superop.hpp"

namespace sml {

class NotSmoothing : public Error {
 public:
  NotSmoothing(const std::string& op, SuperDistribution residue)
      : Error("annihilator " + op + " leaves singular residue " + residue.to_string()), residue_(std::move(residue)) {}
  const SuperDistribution& residue() const { return residue_; }

 private:
  SuperDistribution residue_;
};

/// base x (covectors \ 0) inside T*R^m.
struct Stratum {
  AffineSubspace base;
  LinearSubspace covectors;

  bool is_empty() const { return base.is_empty() || covectors.is_zero(); }
  /// Whether the two conic sets share a point.
  bool meets(const Stratum& o) const;
  Stratum intersect(const Stratum& o) const;
  bool contains(const Stratum& o) const;
  friend bool operator==(const Stratum&, const Stratum&) = default;
  std::string to_string() const;
};

struct WFSetDescriptor {
  std::vector<Stratum> strata;
  bool exact = true;

  bool is_empty() const { return strata.empty(); }
  std::string to_string() const;
};

WFSetDescriptor wavefront(const CatalogSum& u);
/// Nonzero components only.
std::map<MultiIndex, WFSetDescriptor> component_wf(const SuperDistribution& u);

enum class BoundKind { Exact, UpperBound, Image };
std::string to_string(BoundKind k);

/// Fiber over a stratum: {lambda in C^(2^n) : constraints(x,k) lambda = 0},
/// columns in multi-index order. The zero polarization always qualifies.
struct SWFPiece {
  Stratum stratum;
  Matrix<SymExpr> constraints;
};

struct SuperWFSet {
  unsigned m = 0;
  unsigned n = 0;
  std::vector<SWFPiece> pieces;
  BoundKind kind = BoundKind::UpperBound;

  friend bool operator==(const SuperWFSet& a, const SuperWFSet& b);
  std::string to_string() const;
};

/// Reduced row-echelon rows with zero rows dropped.
Matrix<SymExpr> canonical_constraints(const Matrix<SymExpr>& c, std::size_t columns);

SuperDistribution apply_op(const SuperOperator& a, const SuperDistribution& u);

/// Throws NotSmoothing when some annihilator leaves a singular residue.
SuperWFSet swf_upper_bound(const SuperDistribution& u, const std::vector<SuperOperator>& annihilators);
std::vector<SuperOperator> auto_annihilators(const SuperDistribution& u);

enum class Tri { Holds, Fails, Unknown };
std::string to_string(Tri t);

struct ProjectionReport {
  Tri status = Tri::Unknown;
  std::vector<Stratum> projected;
  std::vector<Stratum> components;
  std::string detail;
};
ProjectionReport projection_check(const SuperWFSet& swf, const SuperDistribution& u);

SuperWFSet push_through_symbol(const SuperWFSet& swf, const SuperSymbol& s, bool elliptic);
/// Every nonzero fiber of `small` lies in the fiber of a single piece of `big`.
bool swf_contains(const SuperWFSet& big, const SuperWFSet& small);

/// swf describes u on the target of chi; the result describes chi* u.
SuperWFSet transform(const SuperWFSet& swf, const SuperMorphism& chi);

enum class Admissibility { Admissible, NotGuaranteed, Unknown };
std::string to_string(Admissibility a);

struct PullbackWitness {
  MultiIndex component;
  RVector point;
  RVector covector;
};

struct PullbackVerdict {
  Admissibility verdict = Admissibility::Unknown;
  std::optional<PullbackWitness> witness;
  /// Components of D^chi u when all factorization coefficients are constant.
  std::optional<SuperDistribution> reduced;
  std::string reason;
};
PullbackVerdict pullback_check(const SuperMorphism& chi, const SuperDistribution& u);

struct MultiplyWitness {
  MultiIndex left;
  MultiIndex right;
  RVector point;
  RVector covector;
};

struct MultiplyVerdict {
  Admissibility verdict = Admissibility::Unknown;
  std::optional<MultiplyWitness> witness;
  std::optional<SuperDistribution> product;
  std::string reason;
};
MultiplyVerdict multiply_check(const SuperDistribution& u, const SuperDistribution& v);

}  // namespace sml

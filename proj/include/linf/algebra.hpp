#pragma once

// L∞ algebras truncated at arity N, stored as the coderivation components
// q_k : S^k(g[1]) -> g[1] of degree +1. dg Lie algebras are the case q_k = 0
// for k >= 3.

#include "linf/graded.hpp"
#include "linf/symmetric.hpp"

#include <string>
#include <utility>
#include <vector>

namespace linf {

struct LInftyAlgebra {
  std::string name;
  GradedSpace space;
  int truncation = 4;
  Cochain structure;

  Degrees shifted_degrees() const;
  bool is_dg_lie() const { return structure.max_arity() <= 2; }
  LInftyAlgebra with_truncation(int n) const;
};

// One multilinear operation value in antisymmetric (Λ) form:
// l_k(args...) = Σ coeff · result_label.
struct Operation {
  std::vector<std::string> args;
  std::vector<std::pair<std::string, Rational>> result;
};

// Sign relating Λ-form and S-form values on a word of basis indices:
// (-1)^{Σ_i (k-1-i)·|s x_i|}, indices 0-based.
int decalage_sign(std::span<const int> word, const Degrees& shifted);

// Accumulates a Λ-form value into an S-form cochain. Throws InvalidStructure
// when the word vanishes in S(g[1]) but the value does not.
void add_lambda_value(Cochain& c, const Degrees& shifted, std::vector<int> word, const SparseVector& value);
SparseVector lambda_value(const Cochain& c, const Degrees& shifted, std::vector<int> word);

// Builds an algebra from Λ-form operations (one argument: differential;
// two: bracket; more: higher brackets). Throws ShapeMismatch on a degree
// violation, InvalidStructure on an antisymmetry conflict.
LInftyAlgebra make_algebra(std::string name, GradedSpace space, int truncation,
                           const std::vector<Operation>& operations);
LInftyAlgebra zero_algebra(int truncation);

// l_1 as a shift +1 endomorphism.
GradedLinearMap differential_map(const LInftyAlgebra& g);

// Λ^k g in the fixed order: multisets over the (degree, label) basis order,
// odd shifted degrees not repeated.
std::vector<Monomial> exterior_basis(const GradedSpace& g, int k);

std::string monomial_label(const GradedSpace& g, const Monomial& m);

// Index of the first entry whose target degree differs from
// deg(monomial) + degree, if any.
struct DegreeViolation {
  Monomial monomial;
  int target_index;
};
std::optional<DegreeViolation> find_degree_violation(const Cochain& c, const Degrees& source,
                                                     const Degrees& target, int degree);

// The coderivation D(m) = Σ_{I} ε q(m_I)·m_J assembled from all q_k.
SymElement coderivation(const Cochain& q, const Monomial& m, const Degrees& shifted);

struct ChainCoalgebra {
  LInftyAlgebra base;
  std::vector<std::vector<Monomial>> basis;  // basis[k] = arity-k monomials, k = 1..N
  std::map<Monomial, SymElement> differential;

  const SymElement& d(const Monomial& m) const;
  std::vector<Monomial> all_monomials() const;
  std::vector<CoproductTerm> coproduct(const Monomial& m) const;
};

struct StructureReport {
  std::vector<Monomial> violations;  // monomials with D² ≠ 0
  bool valid() const { return violations.empty(); }
};

StructureReport check_structure(const LInftyAlgebra& g);
ChainCoalgebra chain_coalgebra(const LInftyAlgebra& g);
// Skips the D² check; for internal use on algebras known to be valid.
ChainCoalgebra chain_coalgebra_unchecked(const LInftyAlgebra& g);

struct LInftyMorphism {
  LInftyAlgebra source;
  LInftyAlgebra target;
  Cochain components;  // f_k of shifted degree 0

  int truncation() const { return source.truncation; }
};

LInftyMorphism identity_morphism(const LInftyAlgebra& g);
LInftyMorphism zero_morphism(const LInftyAlgebra& source, const LInftyAlgebra& target);
// Strict morphism with f_1 = matrix (target.dim() x source.dim()).
LInftyMorphism strict_morphism(const LInftyAlgebra& source, const LInftyAlgebra& target, const QMatrix& matrix);
Cochain linear_cochain(const QMatrix& matrix);
QMatrix linear_part(const LInftyMorphism& f);

// (e^f)(m): the coalgebra map with corestriction f, keeping only terms built
// from at least min_blocks factors.
SymElement coalgebra_map(const Cochain& f, const Monomial& m, const Degrees& source, const Degrees& target,
                         int min_blocks = 1);

// q ∘ e^f − f ∘ D on every source monomial; zero iff f is a morphism.
Cochain morphism_curvature(const ChainCoalgebra& source, const LInftyAlgebra& target, const Cochain& f);

struct MorphismReport {
  std::vector<Monomial> violations;
  bool valid() const { return violations.empty(); }
};
MorphismReport check_morphism(const LInftyMorphism& f);

// G ∘ F for F: g1 -> g2 and G: g2 -> g3.
LInftyMorphism compose_morphisms(const LInftyMorphism& f, const LInftyMorphism& g);

struct CoalgebraMatrix {
  std::vector<Monomial> source_basis;  // all arities, arity-major
  std::vector<Monomial> target_basis;
  QMatrix matrix;
  // Rank of the columns of each source arity, index k.
  std::vector<Eigen::Index> column_ranks;
  std::vector<Eigen::Index> column_counts;
  bool injective() const;
};
CoalgebraMatrix induced_coalgebra_map(const LInftyMorphism& f);

}  // namespace linf

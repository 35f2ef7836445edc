#pragma once

// Truncated Quillen functors between dg Lie algebras and counital
// cocommutative dg coalgebras. Free Lie algebras live inside the tensor
// algebra: a Lie element is a combination of words in the generators, and
// the super-Lyndon elements give a basis.

#include "linf/algebra.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace linf {

struct CounitalCoalgebra {
  std::string name;
  GradedSpace space;
  std::vector<int> weight;  // per basis index, 0 only for the unit
  int unit = 0;
  // Reduced coproduct on ker ε: x -> Σ c·(i ⊗ j), i, j ≠ unit.
  std::map<int, std::vector<std::tuple<int, int, Rational>>> reduced;
  QMatrix differential;
  int truncation = 1;
  // Filled for C(Y): the S(Y[1]) monomial behind each basis index.
  std::vector<Monomial> monomial;
};

// Throws InvalidCoalgebra on failure of coassociativity, cocommutativity,
// conilpotency (Δ̄ must split the weight, which lies in 1..N off the unit),
// the coderivation rule, d² = 0, or ε∘d = 0.
void validate_coalgebra(const CounitalCoalgebra& x);

CounitalCoalgebra trivial_coalgebra(int truncation);
// ⟨1, x⟩ with x primitive and d = 0.
CounitalCoalgebra primitive_coalgebra(const std::string& label, int degree, int truncation);
// C(Y) = ℚ·1 ⊕ S^{1..N}(Y[1]) with the Chevalley–Eilenberg differential.
// Throws InvalidStructure if Y fails check_structure.
CounitalCoalgebra functor_C(const LInftyAlgebra& y);

using Word = std::vector<int>;
using LieElement = std::map<Word, Rational>;

struct LieBasis {
  std::vector<LieElement> elements;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<int> lengths;
};

class FreeLieAlgebra {
 public:
  FreeLieAlgebra(std::vector<std::string> labels, std::vector<int> degrees, int truncation);

  size_t generator_count() const { return labels_.size(); }
  const std::string& generator_label(size_t g) const { return labels_[g]; }
  int generator_degree(size_t g) const { return degrees_[g]; }
  int truncation() const { return truncation_; }
  int word_degree(const Word& w) const;

  LieElement generator(int g) const;
  // Graded commutator, words longer than the truncation dropped.
  LieElement bracket(const LieElement& a, const LieElement& b) const;
  // Derivation extending the generator differential.
  LieElement d(const LieElement& a) const;
  void set_generator_differential(std::vector<LieElement> dg) { d_ = std::move(dg); }
  const std::vector<LieElement>& generator_differential() const { return d_; }

  // Lyndon words with standard bracketing, plus [w,w] for odd w.
  const LieBasis& basis() const;
  // Coordinates in basis(); throws InvalidStructure if a is not a Lie element.
  SparseVector coordinates(const LieElement& a) const;
  // The truncated dg Lie algebra on basis(); meant for small cases.
  LInftyAlgebra as_algebra(const std::string& name) const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  int truncation_;
  std::vector<LieElement> d_;
  struct NormalForm {
    std::vector<size_t> columns;  // basis indices of this length
    std::map<Word, Eigen::Index> rows;
    std::vector<Word> chosen;     // words giving an invertible square block
    QMatrix inverse;
    QMatrix full;
  };
  mutable std::shared_ptr<const LieBasis> basis_;
  mutable std::map<int, NormalForm> forms_;
  const NormalForm& form(int length) const;
};


// Generators ↓x for x ≠ unit, of degree |x| + 1; d↓x = ↓dx - ½ Σ (-1)^{|x'|} [↓x', ↓x''], the sign that makes ψ dg exactly when F is MC.
struct CobarData {
  FreeLieAlgebra lie;
  std::vector<int> generator_of;        // coalgebra index per generator
  std::map<int, int> generator_index;   // coalgebra index -> generator
};
CobarData functor_L(const CounitalCoalgebra& x);

// Image of a Lie element under the Lie map with the given generator images,
// by the Dynkin operator: a length-n Lie element P equals ρ(P)/n.
LieElement map_lie(const FreeLieAlgebra& source, const LieElement& a, const std::vector<LieElement>& images,
                   const FreeLieAlgebra& target);
SparseVector evaluate_lie(const LieElement& a, const std::vector<SparseVector>& images, const LInftyAlgebra& y);

struct AdjunctionUnit {
  CobarData lx;                  // L(X)
  LInftyAlgebra lx_algebra;      // L(X) on its basis
  std::vector<SymElement> unit;  // X -> C(L(X)), per X basis index, over S(L(X)[1])
};
AdjunctionUnit adjunction_unit(const CounitalCoalgebra& x);

struct AdjunctionCounit {
  CounitalCoalgebra cy;
  CobarData lcy;                                // L(C(Y))
  std::vector<SparseVector> counit_generators;  // ε on generators: ↓y -> y, longer monomials -> 0
};
// Throws UnsupportedStructure unless Y is dg Lie.
AdjunctionCounit adjunction_counit(const LInftyAlgebra& y);
// Counit value on any Lie element of L(C(Y)).
SparseVector counit_value(const AdjunctionCounit& a, const LInftyAlgebra& y, const LieElement& e);

struct AdjunctionMaps {
  AdjunctionUnit unit;
  AdjunctionCounit counit;
};
// Throws TruncationMismatch if X and Y disagree on N.
AdjunctionMaps adjunction_maps(const CounitalCoalgebra& x, const LInftyAlgebra& y);

// Hom_Lie(L(C(g1)), g2) ⟷ Hom_Coalg(C(g1), C(g2)): a cochain f on S^+(g1[1])
// corresponds to the Lie map ↓m -> f(m).
std::vector<SparseVector> adjoint_lie_map(const CobarData& l, const CounitalCoalgebra& x, const Cochain& f);
Cochain adjoint_coalgebra_map(const CobarData& l, const CounitalCoalgebra& x, const std::vector<SparseVector>& images);
// ψ∘d = d∘ψ on generators (the bracket is respected by construction).
bool lie_map_is_dg(const CobarData& l, const std::vector<SparseVector>& images, const LInftyAlgebra& y);

// Q(M) = L(e^M): L(C(a1)) -> L(C(a2)) on generators.
struct QMap {
  CounitalCoalgebra source_coalgebra, target_coalgebra;
  CobarData source, target;
  std::vector<LieElement> generator_images;
  bool is_dg() const;
  LieElement apply(const LieElement& a) const;
};
// Length-1 part of d on the generators (square, column = source generator).
QMatrix generator_differential_matrix(const CobarData& l);
// Q(M) on generators; images of generators are single words.
QMatrix generator_matrix(const QMap& q);
// Q(M) is an embedding / quasi-isomorphism. Both are decided on the
// generator complexes: the length filtration is finite, so the linear part
// decides (the cone of the linear part must be acyclic).
bool q_is_embedding(const QMap& q);
bool q_is_quasi_isomorphism(const QMap& q);

// Throws UnsupportedStructure unless the target of M is dg Lie.
QMap q_forward(const LInftyMorphism& m);
// Q⁻¹: M(m) = ε'(Φ(↓m)).
LInftyMorphism q_backward(const QMap& q, const LInftyAlgebra& a1, const LInftyAlgebra& a2);

}  // namespace linf

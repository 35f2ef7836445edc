#pragma once

// Finite-dimensional commutative dg algebras used as coefficients: g ⊗ A is a
// dg Lie algebra for any dg Lie g.

#include "linf/algebra.hpp"

#include <map>
#include <utility>

namespace linf {

struct Cdga {
  std::string name;
  GradedSpace space;
  int unit = 0;                                 // basis index of 1
  std::map<std::pair<int, int>, SparseVector> product;  // nonzero products e_a·e_b, all ordered pairs
  QMatrix differential;                         // shift +1

  SparseVector multiply(int a, int b) const;
};

// Product table filled from one entry per unordered pair via graded
// commutativity. Throws InvalidStructure if associativity, commutativity,
// Leibniz or d² = 0 fails.
Cdga make_cdga(std::string name, GradedSpace space, int unit,
               const std::vector<std::tuple<int, int, SparseVector>>& products, QMatrix differential);
void validate_cdga(const Cdga& a);

Cdga ground_cdga();
// ⟨1, e⟩, |e| = 1, e² = 0, d = 0.
Cdga exterior_cdga();
// ⟨1, u, du⟩, |u| = 0, u² = 0, u·du = 0.
Cdga dual_numbers_cdga();
// ℚ[t]/(t^{D+1}) ⊕ ℚ[t]/(t^D) dt with the de Rham differential.
Cdga interval_cdga(int D);

// Labels "x⊗ω"; degrees add. d(x⊗ω) = dx⊗ω + (-1)^{|x|} x⊗dω and
// [x⊗ω, y⊗η] = (-1)^{|ω||y|} [x,y]⊗ωη. Throws UnsupportedStructure when g
// has higher brackets.
LInftyAlgebra tensor_with_cdga(const LInftyAlgebra& g, const Cdga& a);

}  // namespace linf

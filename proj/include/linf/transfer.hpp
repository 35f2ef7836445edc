#pragma once

// Homotopy transfer of an L∞ structure onto cohomology along a contraction.

#include "linf/algebra.hpp"
#include "linf/graded.hpp"

namespace linf {

struct TransferResult {
  ContractionData contraction;
  LInftyAlgebra transferred;
  LInftyMorphism embedding;   // M: H -> g, M_1 = i
  LInftyMorphism projection;  // P: g -> H, P_1 = p, P∘M = id
};

// Arity by arity: with R_n the arity-n curvature of (M_{<n}, l'_{<n}),
// l'_n = p R_n and M_n = -h R_n. This is the rooted-tree sum written
// recursively. P_n solves the linear MC equation together with (P∘M)_n = 0.
// Throws InvalidContraction when the contraction does not fit g.
TransferResult transfer(const LInftyAlgebra& g, const ContractionData& contraction);
TransferResult transfer(const LInftyAlgebra& g);

}  // namespace linf

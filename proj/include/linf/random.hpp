#pragma once

// Seeded generators for the randomized property suites.

#include "linf/algebra.hpp"
#include "linf/convolution.hpp"
#include "linf/cdga.hpp"

#include <random>

namespace linf::random {

using Rng = std::mt19937_64;

// Uniform over {-2..2}/{1,2}.
Rational small_rational(Rng& rng);
// Degree-preserving invertible matrix, identity plus small entries.
QMatrix automorphism(const GradedSpace& space, Rng& rng);

// Cochain of the given shifted degree; each degree-correct slot is filled
// with probability density.
Cochain cochain(const ConvolutionAlgebra& conv, int shifted_degree, Rng& rng, double density = 0.5,
                int max_arity = -1);

// Valid dg Lie algebra with at most 6 basis elements: a small Lie algebra
// (sl2, the 2-dimensional non-abelian one, FIX-B, FIX-D or FIX-A) tensored
// with a small cdga, then moved by a random automorphism.
LInftyAlgebra dg_lie(Rng& rng, int truncation = 3);

// Embedding g0 -> g with acyclic cokernel and at most 8 basis elements:
// g0 ⊕ FIX-A or g0 ⊗ ⟨1, u, du⟩, moved by a random automorphism of g.
LInftyMorphism acyclic_extension(Rng& rng, int truncation = 3);
}  // namespace linf::random

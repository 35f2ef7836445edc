#pragma once

#include "linf/algebra.hpp"

#include <optional>
#include <string_view>

namespace linf::fixtures {

// x(0), y(1); dx = y.
LInftyAlgebra fix_a(int truncation = 4);
// z(0), a(1), b(1); [z,a] = b.
LInftyAlgebra fix_b(int truncation = 4);
// fix_b ⊕ fix_a.
LInftyAlgebra fix_c(int truncation = 4);
// a, b, h (1), c, w (2); dh = c, [a,b] = c, [a,h] = w.
LInftyAlgebra fix_d(int truncation = 4);

// Looks up "FIX-A".."FIX-D" (case-insensitive).
std::optional<LInftyAlgebra> by_name(std::string_view name, int truncation);

// Direct sum of two algebras (labels must be distinct).
LInftyAlgebra direct_sum(const LInftyAlgebra& a, const LInftyAlgebra& b, std::string name);

// Strict morphisms between the fixtures: identities, scalings, inclusions,
// projections and zero maps, all valid at the given truncation.
std::vector<LInftyMorphism> fixture_morphisms(int truncation);

// Structure transported along a degree-preserving automorphism phi:
// q' = phi ∘ q ∘ e^{phi^-1}.
LInftyAlgebra transport(const LInftyAlgebra& g, const QMatrix& phi);

}  // namespace linf::fixtures

#pragma once

// Homotopy inverses: the gauge iteration for quasi-isomorphic embeddings,
// formal inversion, and the transfer-based pipeline.

#include "linf/algebra.hpp"
#include "linf/convolution.hpp"
#include "linf/transfer.hpp"

namespace linf {

// g = i(g0) ⊕ L with L an acyclic subcomplex; h vanishes on i(g0),
// dh + hd = 1 - i∘r, h² = 0.
struct EmbeddingContraction {
  QMatrix h;  // g -> g
  QMatrix r;  // g -> g0, r∘i = id
};

// Builds a contraction of the above shape for a strict injective
// quasi-isomorphism. Throws NotAnEmbedding / NotQuasiIso.
EmbeddingContraction embedding_contraction(const LInftyMorphism& i);

struct InversionTrace {
  std::vector<LInftyMorphism> iterates;  // F^0 = id_g, ..., F^N, all g -> g
  std::vector<Cochain> gauges;           // X_k = h∘F^k
  LInftyMorphism result;                 // F^N as a morphism g -> g0
  HomotopyCertificate embedding_side;    // id_g ~ i∘F^∞
  HomotopyCertificate source_side;       // id_{g0} ~ F^∞∘i, zero gauge
};

// F^{k+1} = gauge_action(F^k, h∘F^k), N steps; (F^1)_1 = p. Throws NotAnEmbedding,
// NotQuasiIso, BadContraction (h∘i != 0 or the contraction identities fail).
InversionTrace embedding_inverse(const LInftyMorphism& i, const EmbeddingContraction& c);
InversionTrace embedding_inverse(const LInftyMorphism& i);

// G with G∘F = F∘G = id, solved arity by arity. Throws SingularLinearPart.
LInftyMorphism formal_inverse(const LInftyMorphism& f);

struct HomotopyInverse {
  LInftyMorphism inverse;
  HomotopyCertificate source_side;  // G∘F ~ id_{g1}
  HomotopyCertificate target_side;  // F∘G ~ id_{g2}
};

// G = M1 ∘ (P2∘F∘M1)^{-1} ∘ P2 with M, P from transfer. Throws NotQuasiIso,
// CertificateNotFound (message names the arity).
HomotopyInverse homotopy_inverse(const LInftyMorphism& f);

// Matrix of F_1 on cohomology, in the contraction bases.
QMatrix cohomology_map(const LInftyMorphism& f);

}  // namespace linf

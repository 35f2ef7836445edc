#pragma once

// The convolution L∞ algebra Hom(C₊(g1), g2), its Maurer–Cartan elements
// (the L∞ morphisms), and the gauge action that defines homotopy.
//
// Elements are cochains S^+(g1[1]) -> g2[1]. A degree-d element in the
// unshifted convolution algebra has shifted degree d - 1: morphisms are 0,
// gauge elements -1.

#include "linf/algebra.hpp"

#include <optional>

namespace linf {

struct ConvolutionAlgebra {
  ChainCoalgebra source;
  LInftyAlgebra target;
  Degrees source_degrees;
  Degrees target_degrees;
  std::vector<Monomial> monomials;  // all source monomials, arity-major

  int truncation() const { return target.truncation; }
  bool is_dg_lie() const { return target.is_dg_lie(); }
};

ConvolutionAlgebra build_convolution(const LInftyAlgebra& g1, const LInftyAlgebra& g2);

struct ConvolutionElement {
  int degree = 0;  // unshifted: 1 for morphism candidates, 0 for gauge elements
  Cochain components;
};

// L_1(ψ) = q_1∘ψ − (−1)^{|ψ|} ψ∘D, |ψ| the shifted degree.
Cochain convolution_differential(const ConvolutionAlgebra& conv, const Cochain& psi, int shifted_degree);
// L_k(ψ_1..ψ_k) = q_k ∘ (ψ_1⊗..⊗ψ_k) ∘ Δ^{k-1}, k >= 2.
Cochain convolution_product(const ConvolutionAlgebra& conv, std::span<const Cochain* const> inputs,
                            std::span<const int> shifted_degrees);
ConvolutionElement convolution_operation(const ConvolutionAlgebra& conv,
                                         std::span<const ConvolutionElement> inputs);

// Σ_k 1/k! L_k(φ,..,φ) for φ of degree 1.
Cochain mc_curvature(const ConvolutionAlgebra& conv, const Cochain& phi);
ConvolutionElement mc_curvature(const ConvolutionAlgebra& conv, const ConvolutionElement& phi);

// Gauge field V_x(α) = −Σ_k 1/k! L_{k+1}(x, α,..,α), evaluated on the
// source monomials of one arity.
Cochain gauge_field(const ConvolutionAlgebra& conv, const Cochain& x, const Cochain& alpha, int arity);

// Time-1 flow of the gauge field, integrated exactly arity by arity as a
// polynomial in t. Only arities <= max_arity are produced.
Cochain gauge_flow(const ConvolutionAlgebra& conv, const Cochain& alpha, const Cochain& x, int max_arity);
// Closed form for dg Lie targets: Σ ad^n(α)/n! − Σ ad^n(L_1 x)/(n+1)!,
// ad(y) = −L_2(x, y).
Cochain gauge_closed_form(const ConvolutionAlgebra& conv, const Cochain& alpha, const Cochain& x, int max_arity);
// Dispatches to the closed form when the target is dg Lie.
Cochain gauge_transform(const ConvolutionAlgebra& conv, const Cochain& alpha, const Cochain& x, int max_arity);

// F_H; throws NotAMorphism if F is not a morphism, DegreeMismatch if H has
// components of the wrong degree.
LInftyMorphism gauge_action(const LInftyMorphism& f, const Cochain& h);

// Lie bracket on gauge elements: [x1, x2] = −L_2(x1, x2).
Cochain gauge_bracket(const ConvolutionAlgebra& conv, const Cochain& x1, const Cochain& x2);
// log(e^{h1} e^{h2}) truncated by arity; gauge_action(F, bch_compose(h2, h1))
// equals gauge_action(gauge_action(F, h1), h2).
Cochain bch_compose(const ConvolutionAlgebra& conv, const Cochain& h1, const Cochain& h2);

struct HomotopyCertificate {
  LInftyMorphism from;
  LInftyMorphism to;
  Cochain gauge;

  bool verify() const;
};

struct HomotopySearch {
  std::optional<HomotopyCertificate> certificate;
  int failed_arity = 0;  // set when no certificate was found
};

HomotopySearch find_homotopy(const LInftyMorphism& f1, const LInftyMorphism& f2);

// Degree-correct entries (monomial, target index) of a cochain of the given
// shifted degree, in canonical order.
std::vector<std::pair<Monomial, int>> cochain_slots(const ConvolutionAlgebra& conv, int shifted_degree,
                                                    int arity);

// Maurer–Cartan elements of a single algebra (γ ∈ g of degree 1).
SparseVector mc_curvature(const LInftyAlgebra& g, const SparseVector& gamma);
// Gauge action on an MC element by x ∈ g of degree 0, by exact Picard
// iteration of the flow; throws NonNilpotent if it does not stabilize within
// max_iterations.
SparseVector mc_gauge(const LInftyAlgebra& g, const SparseVector& gamma, const SparseVector& x,
                      int max_iterations = 16);

struct Pushforward {
  SparseVector gamma;
  SparseVector x;
};
// U_*(γ) = Σ_{n=1}^{M} u_n(γ^n)/n!, U_*(x) = Σ_{n=0}^{M-1} u_{n+1}(x·γ^n)/n!.
Pushforward pushforward(const LInftyMorphism& u, const SparseVector& gamma, const SparseVector& x, int bound);

// n-th power of a vector in S(V), divided by n!.
SymElement divided_power(const SparseVector& v, int n, const Degrees& degrees);

}  // namespace linf

#pragma once

// Cyl(g) = g ⊗ (ℚ[t]/t^{D+1} ⊕ ℚ[t]/t^D dt) and the path morphism built from
// a gauge.

#include "linf/algebra.hpp"
#include "linf/cdga.hpp"
#include "linf/convolution.hpp"

namespace linf {

struct CylinderAlgebra {
  LInftyAlgebra base;
  int D = 1;
  LInftyAlgebra algebra;
  // Per basis index of algebra: base index, power of t, whether it carries dt.
  std::vector<int> base_index;
  std::vector<int> t_degree;
  std::vector<bool> form;

  int index(int g, int j, bool dt) const;
};

// Throws InvalidStructure unless g is a valid dg Lie algebra,
// TDegreeTooSmall if D < 1.
CylinderAlgebra build_cylinder(const LInftyAlgebra& g, int D);

// p_s: t -> s, dt -> 0. Strict morphism Cyl(g) -> g.
LInftyMorphism evaluate_at(const CylinderAlgebra& c, const Rational& s);
// σ: x -> x⊗1.
LInftyMorphism section(const CylinderAlgebra& c);

// Pairs (x, y) with deg_t x + deg_t y <= D where p_s fails to respect the
// bracket, and basis elements where it fails to respect d. Products of higher
// t-degree are cut off in Cyl(g) but not in g, so p_s with s != 0 is a dg
// Lie map only within this window; p_0 is exact.
struct WindowReport {
  std::vector<int> differential;
  std::vector<std::pair<int, int>> bracket;
  bool valid() const { return differential.empty() && bracket.empty(); }
};
WindowReport evaluation_window_check(const CylinderAlgebra& c, const Rational& s);

// U_Cyl = (F(t), -dt·H) with F(t) = gauge_action(U0, tH); the dt sign matches
// the orientation of the gauge flow. Throws
// TDegreeTooSmall if D < N, NotAMorphism if U0 is not one.
LInftyMorphism cylinder_morphism(const LInftyMorphism& u0, const Cochain& h, const CylinderAlgebra& c);

// Coefficients of F(t) = gauge_transform(U0, tH) as a polynomial in t.
std::vector<Cochain> gauge_path(const LInftyMorphism& u0, const Cochain& h);

}  // namespace linf

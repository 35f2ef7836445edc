#include "linf/cylinder.hpp"

#include "linf/error.hpp"
#include "linf/linalg.hpp"

namespace linf {

int CylinderAlgebra::index(int g, int j, bool dt) const {
  for (size_t i = 0; i < base_index.size(); ++i)
    if (base_index[i] == g && t_degree[i] == j && form[i] == dt) return static_cast<int>(i);
  throw Error(ErrorKind::ShapeMismatch, "no such cylinder basis element");
}

CylinderAlgebra build_cylinder(const LInftyAlgebra& g, int D) {
  if (!g.is_dg_lie() || !check_structure(g).valid())
    throw Error(ErrorKind::InvalidStructure, "cylinder needs a valid dg Lie algebra");
  const Cdga interval = interval_cdga(D);
  CylinderAlgebra c{g, D, tensor_with_cdga(g, interval), {}, {}, {}};
  c.algebra.name = "Cyl(" + g.name + ")";
  const auto n = c.algebra.space.dim();
  c.base_index.assign(n, -1);
  c.t_degree.assign(n, 0);
  c.form.assign(n, false);
  for (size_t i = 0; i < g.space.dim(); ++i)
    for (size_t e = 0; e < interval.space.dim(); ++e) {
      const auto k = *c.algebra.space.index_of(g.space.label(i) + "⊗" + interval.space.label(e));
      const std::string& l = interval.space.label(e);
      const bool dt = l.size() >= 2 && l.substr(l.size() - 2) == "dt";
      const std::string poly = dt ? l.substr(0, l.size() - 2) : l;
      c.base_index[k] = static_cast<int>(i);
      c.form[k] = dt;
      c.t_degree[k] = poly.empty() || poly == "1" ? 0 : poly == "t" ? 1 : std::stoi(poly.substr(2));
    }
  return c;
}

LInftyMorphism evaluate_at(const CylinderAlgebra& c, const Rational& s) {
  QMatrix m = QMatrix::Zero(static_cast<Eigen::Index>(c.base.space.dim()), static_cast<Eigen::Index>(c.algebra.space.dim()));
  for (size_t k = 0; k < c.base_index.size(); ++k) {
    if (c.form[k]) continue;
    Rational v = 1;
    for (int j = 0; j < c.t_degree[k]; ++j) v *= s;
    m(c.base_index[k], static_cast<Eigen::Index>(k)) = v;
  }
  return strict_morphism(c.algebra, c.base, m);
}

LInftyMorphism section(const CylinderAlgebra& c) {
  QMatrix m = QMatrix::Zero(static_cast<Eigen::Index>(c.algebra.space.dim()), static_cast<Eigen::Index>(c.base.space.dim()));
  for (size_t i = 0; i < c.base.space.dim(); ++i) m(c.index(static_cast<int>(i), 0, false), static_cast<Eigen::Index>(i)) = 1;
  return strict_morphism(c.base, c.algebra, m);
}

WindowReport evaluation_window_check(const CylinderAlgebra& c, const Rational& s) {
  const QMatrix p = linear_part(evaluate_at(c, s));
  const Degrees sc = c.algebra.shifted_degrees(), sg = c.base.shifted_degrees();
  const int n = static_cast<int>(c.algebra.space.dim());
  WindowReport report;
  auto unit = [](int i) { return SparseVector{{i, Rational(1)}}; };
  for (int x = 0; x < n; ++x) {
    const SparseVector lhs = apply_matrix(p, lambda_value(c.algebra.structure, sc, {x}));
    SymElement px;
    for (const auto& [i, v] : apply_matrix(p, unit(x))) add_to(px, {i}, v);
    const SparseVector rhs = c.base.structure.apply(px);
    if (!(lhs == rhs)) report.differential.push_back(x);
  }
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      if (c.t_degree[static_cast<size_t>(x)] + c.t_degree[static_cast<size_t>(y)] +
              (c.form[static_cast<size_t>(x)] || c.form[static_cast<size_t>(y)] ? 1 : 0) >
          c.D)
        continue;
      const SparseVector lhs = apply_matrix(p, lambda_value(c.algebra.structure, sc, {x, y}));
      const SparseVector px = apply_matrix(p, unit(x)), py = apply_matrix(p, unit(y));
      SparseVector rhs;
      for (const auto& [i, a] : px)
        for (const auto& [j, b] : py) axpy(rhs, a * b, lambda_value(c.base.structure, sg, {i, j}));
      if (!(lhs == rhs)) report.bracket.emplace_back(x, y);
    }
  return report;
}

std::vector<Cochain> gauge_path(const LInftyMorphism& u0, const Cochain& h) {
  const auto conv = build_convolution(u0.source, u0.target);
  const int n = conv.truncation();
  // Arity-k output has t-degree <= k, so n + 1 samples determine F(t).
  const int samples = n + 1;
  std::vector<Cochain> values;
  QMatrix vander(samples, samples);
  for (int p = 0; p < samples; ++p) {
    values.push_back(gauge_action(u0, Rational(p) * h).components);
    Rational pw = 1;
    for (int j = 0; j < samples; ++j) {
      vander(p, j) = pw;
      pw *= p;
    }
  }
  const QMatrix inv = *inverse(vander);
  std::vector<Cochain> coeff;
  for (int j = 0; j < samples; ++j) {
    Cochain cj;
    for (int p = 0; p < samples; ++p) cj += inv(j, p) * values[static_cast<size_t>(p)];
    coeff.push_back(cj);
  }
  return coeff;
}

LInftyMorphism cylinder_morphism(const LInftyMorphism& u0, const Cochain& h, const CylinderAlgebra& c) {
  if (!(u0.target.space == c.base.space)) throw Error(ErrorKind::ShapeMismatch, "cylinder over a different algebra");
  if (c.D < u0.truncation()) throw Error(ErrorKind::TDegreeTooSmall, "t-degree bound below the truncation");
  const auto path = gauge_path(u0, h);
  LInftyMorphism out{u0.source, c.algebra, Cochain{}};
  for (size_t j = 0; j < path.size(); ++j)
    for (const auto& [m, v] : path[j].values())
      for (const auto& [t, coeff] : v) out.components.add(m, c.index(t, static_cast<int>(j), false), coeff);
  // dt written on the left: -dt·H(m) = (-1)^{|sH(m)|} H(m)⊗dt.
  const Degrees st = u0.target.shifted_degrees();
  for (const auto& [m, v] : h.values())
    for (const auto& [t, coeff] : v)
      out.components.add(m, c.index(t, 0, true), st[static_cast<size_t>(t)] % 2 ? -coeff : coeff);
  return out;
}

}  // namespace linf

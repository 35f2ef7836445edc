#include "linf/transfer.hpp"

#include "linf/error.hpp"
#include "linf/linalg.hpp"

namespace linf {

namespace {

using Slot = std::pair<Monomial, int>;

std::vector<Slot> slots(const std::vector<Monomial>& monomials, const Degrees& source, const Degrees& target) {
  std::vector<Slot> out;
  for (const auto& m : monomials) {
    const int want = monomial_degree(m, source);
    for (size_t t = 0; t < target.size(); ++t)
      if (target[t] == want) out.emplace_back(m, static_cast<int>(t));
  }
  return out;
}

// Projection: P_n is fixed by linear equations once P_{<n} is known.
Cochain projection_components(const LInftyAlgebra& g, const LInftyAlgebra& h, const Cochain& m, const QMatrix& p) {
  const int n = g.truncation;
  const Degrees sg = g.shifted_degrees(), sh = h.shifted_degrees();
  const auto coalg = chain_coalgebra_unchecked(g);
  Cochain proj = linear_cochain(p);
  for (int k = 2; k <= n; ++k) {
    const auto& gk = coalg.basis[static_cast<size_t>(k)];
    const auto unknowns = slots(gk, sg, sh);
    std::map<Slot, Eigen::Index> column;
    for (size_t u = 0; u < unknowns.size(); ++u) column[unknowns[u]] = static_cast<Eigen::Index>(u);
    // Each equation: Σ_u a_u P_k[u] = rhs at one target index.
    std::vector<std::map<Eigen::Index, Rational>> lhs;
    std::vector<Rational> rhs;
    auto add_equations = [&](const SymElement& arg, const SparseVector& known) {
      // P_k applied to the arity-k part of arg, plus known, must vanish.
      std::map<int, std::map<Eigen::Index, Rational>> by_target;
      for (const auto& [mono, c] : arg) {
        if (static_cast<int>(mono.size()) != k) continue;
        for (size_t t = 0; t < sh.size(); ++t) {
          auto it = column.find(Slot{mono, static_cast<int>(t)});
          if (it != column.end()) by_target[static_cast<int>(t)][it->second] += c;
        }
      }
      for (size_t t = 0; t < sh.size(); ++t) {
        auto kn = known.find(static_cast<int>(t));
        auto bt = by_target.find(static_cast<int>(t));
        if (bt == by_target.end() && kn == known.end()) continue;
        lhs.push_back(bt == by_target.end() ? std::map<Eigen::Index, Rational>{} : bt->second);
        rhs.push_back(kn == known.end() ? Rational(0) : Rational(-kn->second));
      }
    };
    // MC: l'(e^P(x)) - P(D x) = 0 on arity-k monomials x.
    for (const auto& x : gk) {
      SparseVector known = h.structure.apply(coalgebra_map(proj, x, sg, sh));
      SymElement dx = coalg.d(x);
      SymElement lower;
      for (const auto& [mono, c] : dx)
        if (static_cast<int>(mono.size()) < k) add_to(lower, mono, c);
      axpy(known, Rational(-1), proj.apply(lower));
      SymElement top;
      for (const auto& [mono, c] : dx)
        if (static_cast<int>(mono.size()) == k) add_to(top, mono, -c);
      add_equations(top, known);
    }
    // (P∘M)_k = 0 on arity-k monomials of H.
    for (const auto& u : symmetric_basis(sh, k)) {
      const SymElement image = coalgebra_map(m, u, sh, sg);
      SymElement lower;
      for (const auto& [mono, c] : image)
        if (static_cast<int>(mono.size()) < k) add_to(lower, mono, c);
      add_equations(image, proj.apply(lower));
    }
    QMatrix a = QMatrix::Zero(static_cast<Eigen::Index>(lhs.size()), static_cast<Eigen::Index>(unknowns.size()));
    QVector b(static_cast<Eigen::Index>(rhs.size()));
    for (size_t r = 0; r < lhs.size(); ++r) {
      for (const auto& [col, c] : lhs[r]) a(static_cast<Eigen::Index>(r), col) = c;
      b(static_cast<Eigen::Index>(r)) = rhs[r];
    }
    const auto z = solve(a, b);
    if (!z) throw Error(ErrorKind::InvalidContraction, "no projection at arity " + std::to_string(k));
    for (size_t u = 0; u < unknowns.size(); ++u)
      proj.add(unknowns[u].first, unknowns[u].second, (*z)(static_cast<Eigen::Index>(u)));
  }
  return proj;
}

}  // namespace

TransferResult transfer(const LInftyAlgebra& g, const ContractionData& contraction) {
  const GradedLinearMap d = differential_map(g);
  if (!(contraction.ambient == g.space) || !(contraction.d == d) || !contraction_violations(contraction).empty())
    throw Error(ErrorKind::InvalidContraction, "contraction does not match the algebra");
  const int n = g.truncation;
  const Degrees sg = g.shifted_degrees();
  LInftyAlgebra h{g.name.empty() ? std::string("H") : "H(" + g.name + ")", contraction.cohomology, n, Cochain{}};
  const Degrees sh = h.shifted_degrees();
  const QMatrix& p = contraction.p.matrix;
  const QMatrix& hm = contraction.h.matrix;
  Cochain m = linear_cochain(contraction.i.matrix);
  for (int k = 2; k <= n; ++k) {
    for (const auto& u : symmetric_basis(sh, k)) {
      SparseVector r = g.structure.apply(coalgebra_map(m, u, sh, sg));
      axpy(r, Rational(-1), m.apply(coderivation(h.structure, u, sh)));
      const SparseVector top = apply_matrix(p, r);
      const SparseVector lift = apply_matrix(hm, r);
      if (!top.empty()) h.structure.set(u, top);
      if (!lift.empty()) {
        SparseVector neg;
        axpy(neg, Rational(-1), lift);
        m.set(u, neg);
      }
    }
  }
  LInftyMorphism embedding{h, g, m};
  LInftyMorphism projection{g, h, projection_components(g, h, m, p)};
  return TransferResult{contraction, h, embedding, projection};
}

TransferResult transfer(const LInftyAlgebra& g) {
  const GradedLinearMap d = differential_map(g);
  return transfer(g, cohomology_contraction(g.space, d));
}

}  // namespace linf

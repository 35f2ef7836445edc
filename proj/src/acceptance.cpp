#include "linf/acceptance.hpp"

#include "linf/convolution.hpp"
#include "linf/cylinder.hpp"
#include "linf/error.hpp"
#include "linf/fixtures.hpp"
#include "linf/inversion.hpp"
#include "linf/linalg.hpp"
#include "linf/quillen.hpp"
#include "linf/random.hpp"
#include "linf/transfer.hpp"

#include <chrono>
#include <sstream>

namespace linf::acceptance {

namespace {

using random::Rng;

// Collects what a criterion saw; failures keep the first few messages.
struct Check {
  int cases = 0;
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
};

// Valid morphisms with injective linear part seen anywhere, for the last
// criterion.
struct Collected {
  std::vector<LInftyMorphism> morphisms;
  void add(const LInftyMorphism& f) {
    const QMatrix m = linear_part(f);
    if (m.cols() > 0 && rank(m) == m.cols()) morphisms.push_back(f);
  }
};

bool same_algebra(const LInftyAlgebra& a, const LInftyAlgebra& b) {
  return a.space == b.space && a.structure == b.structure && a.truncation == b.truncation;
}

std::vector<LInftyMorphism> pair_morphisms(int n) {
  auto out = fixtures::fixture_morphisms(n);
  const std::vector<LInftyAlgebra> all{fixtures::fix_a(n), fixtures::fix_b(n), fixtures::fix_c(n), fixtures::fix_d(n)};
  for (const auto& s : all)
    for (const auto& t : all) out.push_back(zero_morphism(s, t));
  return out;
}

Cochain gauge(const LInftyMorphism& f, Rng& rng) {
  return random::cochain(build_convolution(f.source, f.target), -1, rng, 0.4);
}

std::string name(const LInftyMorphism& f) { return f.source.name + "->" + f.target.name; }

void criterion1(Check& c, Rng& rng, Collected& seen) {
  const auto base = pair_morphisms(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& f = base[static_cast<size_t>(trial) % base.size()];
    const auto fh = gauge_action(f, gauge(f, rng));
    c.expect(mc_curvature(build_convolution(f.source, f.target), fh.components).empty(), "MC fails for " + name(f));
    if (trial % 10 == 0) seen.add(fh);
  }
}

// RK4 at step 1/1024 on the flattened gauge field; the field is affine when
// the target is dg Lie.
double rk4_error(const LInftyMorphism& f, const Cochain& h) {
  const auto conv = build_convolution(f.source, f.target);
  const int n = f.truncation();
  std::vector<std::pair<Monomial, int>> slots;
  for (int k = 1; k <= n; ++k)
    for (const auto& s : cochain_slots(conv, 0, k)) slots.push_back(s);
  auto field = [&](const Cochain& alpha) {
    Cochain v;
    for (int k = 1; k <= n; ++k) v += gauge_field(conv, h, alpha, k);
    return v;
  };
  auto flat = [&](const Cochain& x) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(slots.size()));
    for (size_t i = 0; i < slots.size(); ++i)
      if (const auto* v = x.find(slots[i].first)) {
        auto it = v->find(slots[i].second);
        if (it != v->end()) out(static_cast<Eigen::Index>(i)) = it->second.convert_to<double>();
      }
    return out;
  };
  const auto dim = static_cast<Eigen::Index>(slots.size());
  const Eigen::VectorXd b = flat(field(Cochain{}));
  Eigen::MatrixXd a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    Cochain e;
    e.add(slots[static_cast<size_t>(j)].first, slots[static_cast<size_t>(j)].second, Rational(1));
    a.col(j) = flat(field(e)) - b;
  }
  Eigen::VectorXd y = flat(f.components);
  const double step = 1.0 / 1024;
  auto rhs = [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(a * v + b); };
  for (int i = 0; i < 1024; ++i) {
    const Eigen::VectorXd k1 = rhs(y), k2 = rhs(y + 0.5 * step * k1), k3 = rhs(y + 0.5 * step * k2), k4 = rhs(y + step * k3);
    y += step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return dim == 0 ? 0.0 : (y - flat(gauge_action(f, h).components)).cwiseAbs().maxCoeff();
}

void criterion2(Check& c, Rng& rng) {
  for (const auto& f : fixtures::fixture_morphisms(3)) {
    const auto conv = build_convolution(f.source, f.target);
    for (int trial = 0; trial < 2; ++trial) {
      const auto h = gauge(f, rng);
      c.expect(gauge_flow(conv, f.components, h, 3) == gauge_action(f, h).components, "Picard flow differs on " + name(f));
      const double err = rk4_error(f, h);
      c.expect(err < 1e-9, "RK4 error " + std::to_string(err) + " on " + name(f));
    }
  }
}

void criterion3(Check& c, Rng& rng, Collected& seen) {
  const auto base = pair_morphisms(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& f = base[static_cast<size_t>(trial) % base.size()];
    const auto conv = build_convolution(f.source, f.target);
    c.expect(gauge_action(f, Cochain{}).components == f.components, "H = 0 moves " + name(f));
    const auto h = gauge(f, rng), k = gauge(f, rng);
    const auto fh = gauge_action(f, h);
    const auto back = find_homotopy(fh, f);
    c.expect(back.certificate && back.certificate->verify(), "no reverse certificate for " + name(f));
    c.expect(gauge_action(fh, k).components == gauge_action(f, bch_compose(conv, k, h)).components,
             "(F_H)_K != F_bch(K,H) on " + name(f));
    if (trial % 10 == 0) seen.add(fh);
  }
}

void criterion4(Check& c, Rng& rng, Collected& seen) {
  const auto base = fixtures::fixture_morphisms(3);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = 0; j < base.size(); ++j)
      if (same_algebra(base[i].target, base[j].source)) pairs.emplace_back(i, j);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [i, j] = pairs[static_cast<size_t>(trial) % pairs.size()];
    const auto &f = base[i], &g = base[j];
    const auto fh = gauge_action(f, gauge(f, rng));
    const auto gu = gauge_action(g, gauge(g, rng));
    const auto lhs = compose_morphisms(fh, gu);
    const auto found = find_homotopy(lhs, compose_morphisms(f, g));
    c.expect(found.certificate && found.certificate->verify(), "no certificate for " + name(f) + " then " + name(g));
    if (trial % 5 == 0) seen.add(lhs);
  }
}

void check_inversion(Check& c, const LInftyMorphism& i, Collected& seen) {
  const auto t = embedding_inverse(i);
  const auto ctr = embedding_contraction(i);
  const QMatrix p = linear_part(i) * ctr.r;
  const int n = i.truncation();
  for (int k = 0; k < n; ++k) {
    const auto& fk = t.iterates[static_cast<size_t>(k)].components;
    const auto& fk1 = t.iterates[static_cast<size_t>(k + 1)].components;
    c.expect(fk.arities(1, k) == fk1.arities(1, k), "F^k and F^(k+1) differ below arity " + std::to_string(k + 1));
    c.expect(postcompose(p, fk1.arities(1, k + 1)) == fk1.arities(1, k + 1), "values leave g0 at k = " + std::to_string(k));
  }
  c.expect(compose_morphisms(i, t.result).components == identity_morphism(i.source).components, "F∘i != id");
  c.expect(t.embedding_side.verify(), "i∘F ~ id certificate fails");
  seen.add(i);
}

void criterion5(Check& c, Rng& rng, Collected& seen) {
  check_inversion(c, fixtures::fixture_morphisms(3)[6], seen);
  for (int trial = 0; trial < 20; ++trial) check_inversion(c, random::acyclic_extension(rng, 3), seen);
}

void criterion6(Check& c, Rng& rng, Collected& seen) {
  const auto b = fixtures::fix_b(3);
  const QMatrix phi = random::automorphism(b.space, rng);
  const std::vector<LInftyMorphism> cases{fixtures::fixture_morphisms(3)[6],
                                          strict_morphism(b, fixtures::transport(b, phi), phi),
                                          transfer(fixtures::fix_d(3)).embedding};
  for (const auto& f : cases) {
    try {
      const auto inv = homotopy_inverse(f);
      c.expect(check_morphism(inv.inverse).valid(), "inverse of " + name(f) + " is not a morphism");
      c.expect(inv.source_side.verify() && inv.target_side.verify(), "certificates for " + name(f) + " fail");
      seen.add(f);
    } catch (const Error& e) {
      c.expect(false, name(f) + ": " + e.what());
    }
  }
}

void transfer_invariants(Check& c, const LInftyAlgebra& g, Collected& seen) {
  const auto t = transfer(g);
  c.expect(check_structure(t.transferred).valid(), "transferred structure invalid for " + g.name);
  c.expect(check_morphism(t.embedding).valid() && check_morphism(t.projection).valid(), "M or P invalid for " + g.name);
  c.expect(linear_part(t.embedding) == t.contraction.i.matrix && linear_part(t.projection) == t.contraction.p.matrix,
           "linear parts differ from the contraction for " + g.name);
  c.expect(compose_morphisms(t.embedding, t.projection).components == identity_morphism(t.transferred).components,
           "P∘M != id for " + g.name);
  const QMatrix h = cohomology_map(t.embedding);
  c.expect(h.rows() == h.cols() && rank(h) == h.rows(), "M is not a quasi-isomorphism for " + g.name);
  seen.add(t.embedding);
}

void criterion7(Check& c, Rng& rng, Collected& seen) {
  for (const auto& g : {fixtures::fix_a(3), fixtures::fix_b(3), fixtures::fix_d(3)}) transfer_invariants(c, g, seen);
  for (int trial = 0; trial < 20; ++trial) transfer_invariants(c, random::dg_lie(rng, 3), seen);
  const auto h = transfer(fixtures::fix_d(3)).transferred;
  const Degrees s = h.shifted_degrees();
  const int a = static_cast<int>(*h.space.index_of("[a]")), b = static_cast<int>(*h.space.index_of("[b]")),
            w = static_cast<int>(*h.space.index_of("[w]"));
  c.expect(h.structure.arities(2, 2).empty(), "transferred l2 on FIX-D is nonzero");
  c.expect(lambda_value(h.structure, s, {a, a, b}) == SparseVector{{w, Rational(-2)}}, "l3(a,a,b) != -2[w]");
}

void criterion8(Check& c, Rng& rng, Collected& seen) {
  const auto base = fixtures::fixture_morphisms(3);
  std::map<std::string, CylinderAlgebra> cylinders;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& u0 = base[static_cast<size_t>(trial) % base.size()];
    auto it = cylinders.find(u0.target.name);
    if (it == cylinders.end()) it = cylinders.emplace(u0.target.name, build_cylinder(u0.target, 4)).first;
    const auto& cyl = it->second;
    const auto h = gauge(u0, rng);
    const auto u = cylinder_morphism(u0, h, cyl);
    c.expect(mc_curvature(build_convolution(u.source, u.target), u.components).empty(), "U_Cyl not MC for " + name(u0));
    c.expect(compose_morphisms(u, evaluate_at(cyl, 0)).components == u0.components, "p0∘U != U0 for " + name(u0));
    c.expect(compose_morphisms(u, evaluate_at(cyl, 1)).components == gauge_action(u0, h).components,
             "p1∘U != U0_H for " + name(u0));
    if (trial % 10 == 0) seen.add(u);
  }
  for (const auto& [label, cyl] : cylinders)
    for (const Rational& s : {Rational(0), Rational(1, 3), Rational(1)})
      c.expect(compose_morphisms(section(cyl), evaluate_at(cyl, s)).components == identity_morphism(cyl.base).components,
               "p_s∘σ != id on " + label);
}

void criterion9(Check& c, Rng& rng, Collected& seen) {
  const auto base = fixtures::fixture_morphisms(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& f = base[static_cast<size_t>(trial) % base.size()];
    const auto m = gauge_action(f, gauge(f, rng));
    const auto q = q_forward(m);
    c.expect(q.is_dg(), "Q(M) not dg for " + name(f));
    c.expect(q_backward(q, m.source, m.target).components == m.components, "Q⁻¹Q(M) != M for " + name(f));
    if (trial % 10 == 0) seen.add(m);
  }
  // Element-wise bijection: ψ_F is dg exactly when F is a morphism, and
  // F -> ψ_F -> F is the identity.
  for (const auto& f : base) {
    const auto x = functor_C(f.source);
    const auto l = functor_L(x);
    const auto conv = build_convolution(f.source, f.target);
    std::vector<Cochain> candidates{f.components, gauge_action(f, gauge(f, rng)).components};
    for (int k = 0; k < 3; ++k) candidates.push_back(random::cochain(conv, 0, rng));
    for (const auto& cand : candidates) {
      const auto images = adjoint_lie_map(l, x, cand);
      const bool mc = check_morphism(LInftyMorphism{f.source, f.target, cand}).valid();
      c.expect(adjoint_coalgebra_map(l, x, images) == cand, "adjoint round trip fails on " + name(f));
      c.expect(lie_map_is_dg(l, images, f.target) == mc, "ψ dg != MC on " + name(f));
    }
  }
}

void criterion10(Check& c, const Collected& seen) {
  for (const auto& f : seen.morphisms) {
    const auto m = induced_coalgebra_map(f);
    c.expect(m.injective(), "induced coalgebra map not injective for " + name(f));
  }
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::function<void(const CriterionResult&)>& on_result) {
  Collected seen;
  const std::vector<std::pair<std::string, std::function<void(Check&, Rng&)>>> criteria{
      {"MC preservation under gauge action, 200 cases at N = 4", [&](Check& c, Rng& r) { criterion1(c, r, seen); }},
      {"closed form equals exact flow and RK4 oracle at N = 3", [&](Check& c, Rng& r) { criterion2(c, r); }},
      {"homotopy is an equivalence relation, 100 cases", [&](Check& c, Rng& r) { criterion3(c, r, seen); }},
      {"composition respects homotopy, 50 cases", [&](Check& c, Rng& r) { criterion4(c, r, seen); }},
      {"embedding inverse stabilizes on FIX-C and 20 acyclic extensions", [&](Check& c, Rng& r) { criterion5(c, r, seen); }},
      {"homotopy inverse with certificates", [&](Check& c, Rng& r) { criterion6(c, r, seen); }},
      {"homotopy transfer invariants and FIX-D l3", [&](Check& c, Rng& r) { criterion7(c, r, seen); }},
      {"cylinder path morphism, 50 cases at D = 4", [&](Check& c, Rng& r) { criterion8(c, r, seen); }},
      {"Quillen correspondence and adjunction bijection", [&](Check& c, Rng& r) { criterion9(c, r, seen); }},
      {"induced coalgebra maps of embeddings are injective", [&](Check& c, Rng&) { criterion10(c, seen); }},
  };
  std::vector<CriterionResult> out;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Rng rng(seed + i);
    Check check;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r{static_cast<int>(i + 1), criteria[i].first, false, "", 0};
    try {
      criteria[i].second(check, rng);
      r.passed = check.failures == 0 && check.cases > 0;
      std::ostringstream d;
      d << check.cases - check.failures << "/" << check.cases << " checks";
      for (const auto& n : check.notes) d << "; " << n;
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace linf::acceptance

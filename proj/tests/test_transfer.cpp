#include "linf/cdga.hpp"
#include "linf/convolution.hpp"
#include "linf/error.hpp"
#include "linf/fixtures.hpp"
#include "linf/linalg.hpp"
#include "linf/random.hpp"
#include "linf/transfer.hpp"

#include <gtest/gtest.h>

using namespace linf;

namespace {

void expect_transfer_invariants(const LInftyAlgebra& g, const TransferResult& t) {
  EXPECT_TRUE(check_structure(t.transferred).valid()) << g.name;
  EXPECT_TRUE(check_morphism(t.embedding).valid()) << g.name;
  EXPECT_TRUE(check_morphism(t.projection).valid()) << g.name;
  EXPECT_EQ(linear_part(t.embedding), t.contraction.i.matrix);
  EXPECT_EQ(linear_part(t.projection), t.contraction.p.matrix);
  EXPECT_EQ(compose_morphisms(t.embedding, t.projection).components, identity_morphism(t.transferred).components)
      << g.name;
}

}  // namespace

TEST(Cdga, Examples) {
  for (int d = 1; d <= 4; ++d) EXPECT_NO_THROW(validate_cdga(interval_cdga(d)));
  EXPECT_NO_THROW(validate_cdga(exterior_cdga()));
  EXPECT_NO_THROW(validate_cdga(dual_numbers_cdga()));
  // u·u = du is not degree-correct.
  const GradedSpace s({{"1", 0}, {"u", 0}, {"du", 1}});
  EXPECT_THROW(make_cdga("bad", s, 0, {{1, 1, SparseVector{{2, 1}}}}, QMatrix::Zero(3, 3)), Error);
}

TEST(Cdga, TensorIsDgLie) {
  for (const auto& g : {fixtures::fix_a(3), fixtures::fix_b(3), fixtures::fix_d(3)})
    for (const auto& a : {ground_cdga(), exterior_cdga(), dual_numbers_cdga(), interval_cdga(2)}) {
      const auto t = tensor_with_cdga(g, a);
      EXPECT_TRUE(check_structure(t).valid()) << t.name;
      EXPECT_EQ(t.space.dim(), g.space.dim() * a.space.dim());
    }
  // Tensoring with the ground field changes nothing but labels.
  const auto b = fixtures::fix_b(3);
  const auto t = tensor_with_cdga(b, ground_cdga());
  EXPECT_EQ(t.structure, b.structure);
}

TEST(RandomDgLie, Valid) {
  random::Rng rng(20);
  for (int i = 0; i < 40; ++i) {
    const auto g = random::dg_lie(rng);
    EXPECT_LE(g.space.dim(), 6u);
    EXPECT_TRUE(check_structure(g).valid()) << g.name;
  }
}

TEST(Transfer, AcyclicGivesZero) {
  const auto a = fixtures::fix_a(3);
  const auto t = transfer(a);
  EXPECT_EQ(t.transferred.space.dim(), 0u);
  EXPECT_TRUE(t.embedding.components.empty());
  EXPECT_TRUE(t.projection.components.empty());
}

TEST(Transfer, ZeroDifferentialIsIdentity) {
  const auto b = fixtures::fix_b(4);
  const auto t = transfer(b);
  EXPECT_EQ(t.transferred.structure, b.structure);
  EXPECT_EQ(t.embedding.components, identity_morphism(b).components);
  EXPECT_EQ(t.projection.components, identity_morphism(b).components);
}

TEST(Transfer, FixDHasTernaryBracket) {
  const auto d = fixtures::fix_d(3);
  const auto t = transfer(d);
  expect_transfer_invariants(d, t);
  const auto& h = t.transferred;
  ASSERT_EQ(h.space.dim(), 3u);
  const Degrees s = h.shifted_degrees();
  // Cohomology classes are labelled by their pivot representatives.
  const auto ia = h.space.index_of("[a]"), ib = h.space.index_of("[b]"), iw = h.space.index_of("[w]");
  ASSERT_TRUE(ia && ib && iw);
  for (const auto& m : symmetric_basis(s, 2)) EXPECT_EQ(h.structure.find(m), nullptr);
  const SparseVector l3 = lambda_value(h.structure, s, {static_cast<int>(*ia), static_cast<int>(*ia), static_cast<int>(*ib)});
  ASSERT_EQ(l3.size(), 1u);
  EXPECT_EQ(l3.begin()->first, static_cast<int>(*iw));
  // Oracle: l3(x,y,z) = Σ over the three splittings ±p[h[x,y],z]; here only
  // the terms through [a,b] = c survive, each giving p[h(c), a] = p[h,a] = [w]
  // up to sign. Two such terms, so |coefficient| ∈ {0, 2}; nonzero means 2.
  EXPECT_EQ(abs(l3.begin()->second), Rational(2));
  EXPECT_EQ(l3.begin()->second, Rational(-2));
}

TEST(Transfer, FixDTreeOracle) {
  // Brute-force tree sum in the shifted picture, all ternary trees spelled
  // out: q'_3(xyz) = Σ over (2,1) splits of p q_2((-h q_2(ix·iy))·iz).
  const auto g = fixtures::fix_d(3);
  const auto t = transfer(g);
  const auto& h = t.transferred;
  const Degrees sg = g.shifted_degrees(), sh = h.shifted_degrees();
  const auto q2 = g.structure.arities(2, 2);
  auto embed = [&](int x) {
    SparseVector v;
    for (Eigen::Index r = 0; r < t.contraction.i.matrix.rows(); ++r)
      if (!is_zero(t.contraction.i.matrix(r, x))) v[static_cast<int>(r)] = t.contraction.i.matrix(r, x);
    return v;
  };
  auto bracket = [&](const SparseVector& u, const SparseVector& v) {
    const SparseVector* f[] = {&u, &v};
    return q2.apply(vector_product(f, sg));
  };
  for (const auto& m : symmetric_basis(sh, 3)) {
    SparseVector oracle;
    for (const auto& term : reduced_coproduct(m, sh)) {
      if (term.left.size() != 2) continue;
      const SparseVector m2 = apply_matrix(QMatrix(-t.contraction.h.matrix), bracket(embed(term.left[0]), embed(term.left[1])));
      axpy(oracle, term.coeff, apply_matrix(t.contraction.p.matrix, bracket(m2, embed(term.right[0]))));
    }
    const auto* got = h.structure.find(m);
    EXPECT_EQ(got ? *got : SparseVector{}, oracle) << monomial_label(h.space, m);
  }
}

TEST(Transfer, RandomDgLie) {
  random::Rng rng(21);
  for (int i = 0; i < 25; ++i) {
    const auto g = random::dg_lie(rng, 3);
    const auto t = transfer(g);
    expect_transfer_invariants(g, t);
    EXPECT_EQ(cohomology_ranks(g.space, differential_map(g)),
              cohomology_ranks(t.transferred.space, differential_map(t.transferred)));
  }
}

TEST(Transfer, FixtureInvariantsAndMPHomotopicToIdentity) {
  for (const auto& g : {fixtures::fix_a(3), fixtures::fix_b(3), fixtures::fix_c(3), fixtures::fix_d(3)}) {
    const auto t = transfer(g);
    expect_transfer_invariants(g, t);
    const auto mp = compose_morphisms(t.projection, t.embedding);
    const auto found = find_homotopy(mp, identity_morphism(g));
    EXPECT_TRUE(found.certificate) << g.name << " fails at arity " << found.failed_arity;
  }
}

TEST(Transfer, RejectsForeignContraction) {
  const auto b = fixtures::fix_b(3);
  const auto c = cohomology_contraction(fixtures::fix_a().space, differential_map(fixtures::fix_a()));
  EXPECT_THROW(transfer(b, c), Error);
}

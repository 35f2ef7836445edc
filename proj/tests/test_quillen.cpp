#include "linf/convolution.hpp"
#include "linf/error.hpp"
#include "linf/fixtures.hpp"
#include "linf/inversion.hpp"
#include "linf/linalg.hpp"
#include "linf/quillen.hpp"
#include "linf/random.hpp"
#include "linf/transfer.hpp"

#include <gtest/gtest.h>

using namespace linf;

namespace {

int generator_of_monomial(const CobarData& l, const CounitalCoalgebra& x, const Monomial& m) {
  for (size_t g = 0; g < l.generator_of.size(); ++g)
    if (x.monomial[static_cast<size_t>(l.generator_of[g])] == m) return static_cast<int>(g);
  return -1;
}

// Every length-n left-normed bracket of generators; their span is the
// length-n part of the free Lie algebra.
Eigen::Index left_normed_rank(const FreeLieAlgebra& f, int n) {
  const int k = f.generator_count();
  std::vector<LieElement> all;
  std::vector<int> w(static_cast<size_t>(n), 0);
  while (true) {
    LieElement e = f.generator(w[0]);
    for (int i = 1; i < n; ++i) e = f.bracket(f.generator(w[static_cast<size_t>(i)]), e);
    all.push_back(e);
    int i = n - 1;
    while (i >= 0 && w[static_cast<size_t>(i)] == k - 1) w[static_cast<size_t>(i--)] = 0;
    if (i < 0) break;
    ++w[static_cast<size_t>(i)];
  }
  std::map<Word, Eigen::Index> rows;
  for (const auto& e : all)
    for (const auto& [word, c] : e) rows.emplace(word, static_cast<Eigen::Index>(rows.size()));
  QMatrix m = QMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(all.size()));
  for (size_t j = 0; j < all.size(); ++j)
    for (const auto& [word, c] : all[j]) m(rows.at(word), static_cast<Eigen::Index>(j)) = c;
  return rank(m);
}

LInftyMorphism gauged(const LInftyMorphism& f, random::Rng& rng) {
  const auto conv = build_convolution(f.source, f.target);
  return gauge_action(f, random::cochain(conv, -1, rng, 0.4));
}

}  // namespace

TEST(Coalgebra, Examples) {
  const auto t = trivial_coalgebra(3);
  EXPECT_TRUE(functor_L(t).lie.basis().elements.empty());
  const auto odd = functor_L(primitive_coalgebra("x", 0, 3));
  ASSERT_EQ(odd.lie.basis().elements.size(), 2u);
  EXPECT_EQ(odd.lie.basis().degrees[1], 2);
  EXPECT_EQ(functor_L(primitive_coalgebra("x", 1, 3)).lie.basis().elements.size(), 1u);
  EXPECT_TRUE(functor_L(primitive_coalgebra("x", 0, 1)).lie.basis().elements.size() == 1u);

  const auto z = functor_C(zero_algebra(3));
  EXPECT_EQ(z.space.dim(), 1u);

  const auto a = fixtures::fix_a(3);
  const auto ca = functor_C(a);
  const auto n = static_cast<Eigen::Index>(ca.space.dim());
  EXPECT_EQ(n - 2 * rank(ca.differential), 1);
  std::vector<Eigen::Index> w1;
  for (Eigen::Index i = 0; i < n; ++i)
    if (ca.weight[static_cast<size_t>(i)] == 1) w1.push_back(i);
  ASSERT_EQ(w1.size(), 2u);
  EXPECT_EQ(rank(QMatrix(ca.differential(w1, w1))), 1);

  auto broken = primitive_coalgebra("x", 0, 3);
  broken.reduced[1 - broken.unit] = {{1 - broken.unit, 1 - broken.unit, Rational(1)}};
  EXPECT_THROW(validate_coalgebra(broken), Error);
}

TEST(Coalgebra, CobarOfFixB) {
  const auto b = fixtures::fix_b(2);
  const auto x = functor_C(b);
  const auto l = functor_L(x);
  const int z = static_cast<int>(*b.space.index_of("z")), a = static_cast<int>(*b.space.index_of("a")),
            bb = static_cast<int>(*b.space.index_of("b"));
  const int gza = generator_of_monomial(l, x, Monomial{z, a});
  const int gb = generator_of_monomial(l, x, Monomial{bb});
  ASSERT_GE(gza, 0);
  ASSERT_GE(gb, 0);
  const auto d = l.lie.d(l.lie.generator(gza));
  ASSERT_TRUE(d.count(Word{gb}));
  EXPECT_FALSE(is_zero(d.at(Word{gb})));
  EXPECT_TRUE(d.count(Word{generator_of_monomial(l, x, Monomial{z}), generator_of_monomial(l, x, Monomial{a})}));
}

TEST(FreeLie, BasisMatchesLeftNormedSpan) {
  for (const auto& degrees : std::vector<std::vector<int>>{{0}, {1}, {0, 1}, {1, 1}, {0, 0, 1}, {2, 1, 0}, {1, 1, 1}}) {
    std::vector<std::string> labels;
    for (size_t i = 0; i < degrees.size(); ++i) labels.push_back("g" + std::to_string(i));
    const FreeLieAlgebra f(labels, degrees, 4);
    const auto& basis = f.basis();
    for (int n = 1; n <= 4; ++n) {
      const auto count = std::count(basis.lengths.begin(), basis.lengths.end(), n);
      EXPECT_EQ(count, left_normed_rank(f, n)) << "length " << n << ", " << degrees.size() << " generators";
    }
    // Brackets of basis elements stay in the span; antisymmetry and Jacobi.
    for (size_t i = 0; i < basis.elements.size(); ++i)
      for (size_t j = 0; j < basis.elements.size(); ++j) {
        const auto& x = basis.elements[i];
        const auto& y = basis.elements[j];
        const auto xy = f.bracket(x, y);
        EXPECT_NO_THROW(f.coordinates(xy));
        auto sum = f.bracket(y, x);
        axpy(sum, (basis.degrees[i] * basis.degrees[j]) % 2 ? Rational(-1) : Rational(1), xy);
        EXPECT_TRUE(sum.empty());
        for (size_t k = 0; k < basis.elements.size() && basis.lengths[i] + basis.lengths[j] + basis.lengths[k] <= 4; ++k) {
          const auto& w = basis.elements[k];
          const int p = basis.degrees[i], q = basis.degrees[j];
          auto jac = f.bracket(x, f.bracket(y, w));
          axpy(jac, Rational(-1), f.bracket(xy, w));
          axpy(jac, (p * q) % 2 ? Rational(1) : Rational(-1), f.bracket(y, f.bracket(x, w)));
          EXPECT_TRUE(jac.empty());
        }
      }
  }
}

TEST(FreeLie, CobarDifferentialSquaresToZero) {
  for (const auto& g : {fixtures::fix_a(3), fixtures::fix_b(3), fixtures::fix_d(2)}) {
    const auto l = functor_L(functor_C(g));
    for (const auto& e : l.lie.basis().elements) EXPECT_TRUE(l.lie.d(l.lie.d(e)).empty()) << g.name;
  }
  const auto lb = functor_L(functor_C(fixtures::fix_b(2)));
  EXPECT_TRUE(check_structure(lb.lie.as_algebra("L")).valid());
}

TEST(Adjunction, LieMapIsDgIffMorphism) {
  random::Rng rng(41);
  int morphisms = 0, others = 0;
  for (const auto& f : fixtures::fixture_morphisms(3)) {
    const auto x = functor_C(f.source);
    const auto l = functor_L(x);
    for (const auto& candidate : {f, gauged(f, rng)}) {
      const auto images = adjoint_lie_map(l, x, candidate.components);
      EXPECT_EQ(adjoint_coalgebra_map(l, x, images), candidate.components);
      EXPECT_TRUE(lie_map_is_dg(l, images, candidate.target)) << f.source.name << " -> " << f.target.name;
      ++morphisms;
    }
    const auto conv = build_convolution(f.source, f.target);
    for (int trial = 0; trial < 3; ++trial) {
      LInftyMorphism g{f.source, f.target, random::cochain(conv, 0, rng)};
      const bool mc = check_morphism(g).valid();
      EXPECT_EQ(lie_map_is_dg(l, adjoint_lie_map(l, x, g.components), g.target), mc);
      others += mc ? 0 : 1;
    }
  }
  EXPECT_GT(morphisms, 10);
  EXPECT_GT(others, 5);
}

TEST(Adjunction, CounitIsDgAndNatural) {
  const auto line = make_algebra("line", GradedSpace({{"v", 0}}), 3, {});
  const auto a = adjunction_counit(line);
  ASSERT_EQ(a.counit_generators.size(), 1u);
  EXPECT_EQ(counit_value(a, line, a.lcy.lie.generator(0)), (SparseVector{{0, 1}}));

  for (const auto& f : fixtures::fixture_morphisms(2)) {
    const auto a1 = adjunction_counit(f.source);
    const auto a2 = adjunction_counit(f.target);
    EXPECT_TRUE(lie_map_is_dg(a1.lcy, a1.counit_generators, f.source));
    const auto q = q_forward(f);
    const QMatrix phi = linear_part(f);
    for (const auto& e : q.source.lie.basis().elements)
      EXPECT_EQ(counit_value(a2, f.target, q.apply(e)), apply_matrix(phi, counit_value(a1, f.source, e)));
  }
}

TEST(Adjunction, UnitIsAChainMap) {
  for (const auto& x : {primitive_coalgebra("x", 0, 2), primitive_coalgebra("x", 1, 3), functor_C(fixtures::fix_a(2))}) {
    const auto a = adjunction_unit(x);
    const Degrees s = a.lx_algebra.shifted_degrees();
    for (size_t e = 0; e < x.space.dim(); ++e) {
      SymElement lhs;
      for (size_t j = 0; j < x.space.dim(); ++j)
        if (!is_zero(x.differential(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(e))))
          axpy(lhs, x.differential(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(e)), a.unit[j]);
      SymElement rhs;
      for (const auto& [m, c] : a.unit[e])
        if (!m.empty()) axpy(rhs, c, coderivation(a.lx_algebra.structure, m, s));
      EXPECT_EQ(lhs, rhs) << x.name << " " << x.space.label(e);
    }
  }
}

TEST(Quillen, BijectionOnMorphisms) {
  random::Rng rng(7);
  const auto fixed = fixtures::fixture_morphisms(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = gauged(fixed[static_cast<size_t>(trial) % fixed.size()], rng);
    ASSERT_TRUE(check_morphism(m).valid());
    const auto q = q_forward(m);
    EXPECT_TRUE(q.is_dg()) << trial;
    EXPECT_EQ(q_backward(q, m.source, m.target).components, m.components) << trial;
  }
  const auto z = zero_algebra(3);
  const auto q0 = q_forward(identity_morphism(z));
  EXPECT_TRUE(q0.generator_images.empty());
  EXPECT_TRUE(q_backward(q0, z, z).components.empty());
}

TEST(Quillen, PreservesEmbeddings) {
  random::Rng rng(3);
  for (const auto& f : fixtures::fixture_morphisms(3)) {
    const auto m = gauged(f, rng);
    EXPECT_EQ(q_is_embedding(q_forward(m)), induced_coalgebra_map(m).injective()) << f.source.name << " -> " << f.target.name;
    EXPECT_EQ(q_is_embedding(q_forward(m)), rank(linear_part(m)) == linear_part(m).cols());
  }
}

TEST(Quillen, PreservesQuasiIsomorphisms) {
  random::Rng rng(5);
  const auto b = fixtures::fix_b(3);
  for (const auto& f : fixtures::fixture_morphisms(3)) {
    const auto m = gauged(f, rng);
    const QMatrix h = cohomology_map(m);
    const bool quasi = h.rows() == h.cols() && rank(h) == h.rows();
    const auto q = q_forward(m);
    EXPECT_TRUE(q.is_dg());
    EXPECT_EQ(q_is_quasi_isomorphism(q), quasi) << f.source.name << " -> " << f.target.name;
  }
  const auto i = fixtures::fixture_morphisms(3)[6];
  EXPECT_TRUE(q_is_quasi_isomorphism(q_forward(i)));
  EXPECT_TRUE(q_is_quasi_isomorphism(q_forward(gauged(i, rng))));
  const auto d = fixtures::fix_d(3);
  EXPECT_TRUE(q_is_quasi_isomorphism(q_forward(transfer(d).embedding)));
  EXPECT_FALSE(q_is_quasi_isomorphism(q_forward(zero_morphism(b, b))));
  EXPECT_TRUE(q_is_quasi_isomorphism(q_forward(identity_morphism(b))));
}

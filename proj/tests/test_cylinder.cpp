#include "linf/cylinder.hpp"
#include "linf/error.hpp"
#include "linf/fixtures.hpp"
#include "linf/linalg.hpp"
#include "linf/random.hpp"

#include <gtest/gtest.h>

using namespace linf;

namespace {

int total_rank(const std::map<int, Eigen::Index>& r) {
  int s = 0;
  for (const auto& [d, k] : r) s += static_cast<int>(k);
  return s;
}

std::map<int, Eigen::Index> ranks(const LInftyAlgebra& g) { return cohomology_ranks(g.space, differential_map(g)); }

std::map<int, Eigen::Index> nonzero(std::map<int, Eigen::Index> r) {
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

}  // namespace

TEST(Cylinder, Examples) {
  const auto z = build_cylinder(zero_algebra(3), 2);
  EXPECT_EQ(z.algebra.space.dim(), 0u);
  const auto line = make_algebra("line", GradedSpace({{"v", 0}}), 3, {});
  const auto c = build_cylinder(line, 2);
  EXPECT_EQ(c.algebra.space.dim(), 5u);
  const auto r = nonzero(ranks(c.algebra));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.begin()->first, 0);
  EXPECT_EQ(r.begin()->second, 1);
  const auto b = fixtures::fix_b(3);
  const auto cb = build_cylinder(b, 3);
  EXPECT_TRUE(check_structure(cb.algebra).valid());
  EXPECT_EQ(nonzero(ranks(cb.algebra)), nonzero(ranks(b)));
  EXPECT_THROW(build_cylinder(b, 0), Error);
}

TEST(Cylinder, StructureOnFixtures) {
  for (const auto& g : {fixtures::fix_a(3), fixtures::fix_b(3), fixtures::fix_d(3)})
    for (int d = 1; d <= 3; ++d) {
      const auto c = build_cylinder(g, d);
      EXPECT_TRUE(check_structure(c.algebra).valid()) << g.name << " D=" << d;
      EXPECT_EQ(nonzero(ranks(c.algebra)), nonzero(ranks(g)));
    }
}

TEST(Cylinder, EvaluationExamples) {
  const auto b = fixtures::fix_b(3);
  const auto c = build_cylinder(b, 3);
  const int a = static_cast<int>(*b.space.index_of("a"));
  const QMatrix p0 = linear_part(evaluate_at(c, 0)), p1 = linear_part(evaluate_at(c, 1));
  const SparseVector constant{{c.index(a, 0, false), 1}}, linear{{c.index(a, 1, false), 1}};
  const SparseVector one{{a, 1}};
  EXPECT_EQ(apply_matrix(p0, constant), one);
  EXPECT_EQ(apply_matrix(p1, constant), one);
  EXPECT_EQ(apply_matrix(p1, linear), one);
  EXPECT_TRUE(apply_matrix(p0, linear).empty());
  EXPECT_TRUE(apply_matrix(p1, SparseVector{{c.index(a, 0, true), 1}}).empty());
  const SparseVector quadratic{{c.index(a, 2, false), 1}};
  EXPECT_EQ(apply_matrix(linear_part(evaluate_at(c, Rational(1, 3))), quadratic), (SparseVector{{a, Rational(1, 9)}}));
}

TEST(Cylinder, SectionAndEvaluation) {
  for (const auto& g : {fixtures::fix_b(3), fixtures::fix_d(3)}) {
    const auto c = build_cylinder(g, 3);
    const auto sigma = section(c);
    EXPECT_TRUE(check_morphism(sigma).valid());
    EXPECT_TRUE(check_morphism(evaluate_at(c, 0)).valid());
    for (const Rational s : {Rational(0), Rational(1, 3), Rational(1)}) {
      EXPECT_EQ(compose_morphisms(sigma, evaluate_at(c, s)).components, identity_morphism(g).components);
      EXPECT_TRUE(evaluation_window_check(c, s).valid()) << g.name << " s=" << s;
    }
    // σ is a quasi-isomorphism: it is injective and ranks agree, and its
    // cohomology map has full rank.
    const QMatrix hs = cohomology_contraction(c.algebra.space, differential_map(c.algebra)).p.matrix *
                       linear_part(sigma) *
                       cohomology_contraction(g.space, differential_map(g)).i.matrix;
    EXPECT_EQ(rank(hs), total_rank(ranks(g)));
    EXPECT_EQ(hs.rows(), hs.cols());
  }
}

TEST(Cylinder, EvaluationAwayFromZeroLeavesWindow) {
  // Outside the window the cut-off products break p_s for s != 0.
  const auto b = fixtures::fix_b(3);
  const auto c = build_cylinder(b, 1);
  const auto morphism_report = check_morphism(evaluate_at(c, 1));
  EXPECT_FALSE(morphism_report.valid());
  EXPECT_TRUE(evaluation_window_check(c, 1).valid());
}

TEST(Cylinder, BracketSignWithDt) {
  // [z·dt, a] = (-1)^{|dt||a|} [z,a]·dt = -b·dt.
  const auto b = fixtures::fix_b(3);
  const auto c = build_cylinder(b, 3);
  const int z = static_cast<int>(*b.space.index_of("z")), a = static_cast<int>(*b.space.index_of("a")),
            bb = static_cast<int>(*b.space.index_of("b"));
  const auto v = lambda_value(c.algebra.structure, c.algebra.shifted_degrees(), {c.index(z, 0, true), c.index(a, 0, false)});
  EXPECT_EQ(v, (SparseVector{{c.index(bb, 0, true), -1}}));
}

TEST(CylinderMorphism, ZeroGaugeIsConstant) {
  for (const auto& u : fixtures::fixture_morphisms(3)) {
    const auto c = build_cylinder(u.target, 3);
    const auto cyl = cylinder_morphism(u, Cochain{}, c);
    EXPECT_TRUE(check_morphism(cyl).valid());
    for (const Rational s : {Rational(0), Rational(1, 2), Rational(1)})
      EXPECT_EQ(compose_morphisms(cyl, evaluate_at(c, s)).components, u.components);
  }
}

TEST(CylinderMorphism, AbelianTargetIsLinearInT) {
  random::Rng rng(40);
  const auto ab = make_algebra("ab", GradedSpace({{"p", 0}, {"q", 1}, {"r", 2}}), 3, {{{"p"}, {{"q", 1}}}});
  const auto src = fixtures::fix_d(3);
  const auto u = zero_morphism(src, ab);
  const auto conv = build_convolution(src, ab);
  const auto h = random::cochain(conv, -1, rng);
  const auto path = gauge_path(u, h);
  EXPECT_EQ(path[0], u.components);
  EXPECT_EQ(path[1], Rational(-1) * convolution_differential(conv, h, -1));
  for (size_t j = 2; j < path.size(); ++j) EXPECT_TRUE(path[j].empty());
  // ODE oracle: dF/dt is constant, so F(1/2) is the midpoint.
  EXPECT_EQ(gauge_action(u, Rational(1, 2) * h).components, Rational(1, 2) * (path[0] + gauge_action(u, h).components));
}

TEST(CylinderMorphism, MCAndEndpoints) {
  random::Rng rng(41);
  for (const auto& u : fixtures::fixture_morphisms(3)) {
    const auto conv = build_convolution(u.source, u.target);
    const auto c = build_cylinder(u.target, 3);
    for (int trial = 0; trial < 3; ++trial) {
      const auto h = random::cochain(conv, -1, rng, 0.5);
      const auto cyl = cylinder_morphism(u, h, c);
      EXPECT_TRUE(check_morphism(cyl).valid()) << u.source.name << "->" << u.target.name;
      EXPECT_EQ(compose_morphisms(cyl, evaluate_at(c, 0)).components, u.components);
      EXPECT_EQ(compose_morphisms(cyl, evaluate_at(c, 1)).components, gauge_action(u, h).components);
    }
  }
  const auto u = fixtures::fixture_morphisms(3)[1];
  EXPECT_THROW(cylinder_morphism(u, Cochain{}, build_cylinder(u.target, 2)), Error);
}

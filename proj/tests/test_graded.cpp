#include "linf/error.hpp"
#include "linf/fixtures.hpp"
#include "linf/graded.hpp"
#include "linf/linalg.hpp"
#include "linf/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace linf;

namespace {

// Sign by bubble-sorting the target order back, one adjacent swap at a time.
int bubble_sign(std::vector<int> perm, const std::vector<int>& degrees) {
  int sign = 1;
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t a = 0; a + 1 < perm.size(); ++a) {
      if (perm[a] > perm[a + 1]) {
        if ((degrees[static_cast<size_t>(perm[a])] * degrees[static_cast<size_t>(perm[a + 1])]) % 2) sign = -sign;
        std::swap(perm[a], perm[a + 1]);
        moved = true;
      }
    }
  }
  return sign;
}

GradedLinearMap map_from(const GradedSpace& s, int shift, std::initializer_list<std::tuple<const char*, const char*, int>> entries) {
  GradedLinearMap d(s, s, shift);
  for (auto [src, dst, c] : entries) d.matrix(*s.index_of(dst), *s.index_of(src)) = c;
  return d;
}

}  // namespace

TEST(Koszul, Examples) {
  const std::vector<int> swap{1, 0}, odd2{1, 1};
  EXPECT_EQ(koszul_sign(swap, odd2), -1);
  const std::vector<int> cycle{1, 2, 0}, odd3{1, 1, 1};
  EXPECT_EQ(koszul_sign(cycle, odd3), 1);
  const std::vector<int> id{0, 1, 2}, mixed{3, 1, 2};
  EXPECT_EQ(koszul_sign(id, mixed), 1);
}

TEST(Koszul, Malformed) {
  const std::vector<int> bad{0, 0}, deg{1, 1};
  EXPECT_THROW(koszul_sign(bad, deg), Error);
  const std::vector<int> out_of_range{0, 2};
  EXPECT_THROW(koszul_sign(out_of_range, deg), Error);
}

TEST(Koszul, MultiplicativeExhaustive) {
  for (int k = 1; k <= 5; ++k) {
    std::vector<int> degrees(static_cast<size_t>(k), 0);
    int combos = 1;
    for (int i = 0; i < k; ++i) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      int c = code;
      for (int i = 0; i < k; ++i) {
        degrees[static_cast<size_t>(i)] = c % 3;
        c /= 3;
      }
      std::vector<int> sigma(static_cast<size_t>(k));
      std::iota(sigma.begin(), sigma.end(), 0);
      do {
        ASSERT_EQ(koszul_sign(sigma, degrees), bubble_sign(sigma, degrees));
        std::vector<int> permuted(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) permuted[static_cast<size_t>(j)] = degrees[static_cast<size_t>(sigma[static_cast<size_t>(j)])];
        std::vector<int> tau(static_cast<size_t>(k));
        std::iota(tau.begin(), tau.end(), 0);
        do {
          std::vector<int> both(static_cast<size_t>(k));
          for (int j = 0; j < k; ++j) both[static_cast<size_t>(j)] = sigma[static_cast<size_t>(tau[static_cast<size_t>(j)])];
          ASSERT_EQ(koszul_sign(both, degrees), koszul_sign(sigma, degrees) * koszul_sign(tau, permuted));
        } while (std::next_permutation(tau.begin(), tau.end()));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
}

TEST(Rational, ParseCanonical) {
  EXPECT_EQ(format_rational(parse_rational("3/6")), "1/2");
  EXPECT_EQ(format_rational(parse_rational("-4/2")), "-2");
  EXPECT_THROW(parse_rational("2/-4"), Error);
  EXPECT_EQ(format_rational(parse_rational("0/5")), "0");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
}

TEST(GradedSpace, SortedAndUnique) {
  GradedSpace s({{"y", 1}, {"x", 0}, {"b", 1}});
  EXPECT_EQ(s.label(0), "x");
  EXPECT_EQ(s.label(1), "b");
  EXPECT_EQ(s.label(2), "y");
  EXPECT_THROW(GradedSpace({{"x", 0}, {"x", 1}}), Error);
}

TEST(CheckComplex, Examples) {
  const auto a = fixtures::fix_a();
  EXPECT_TRUE(check_complex(a.space, differential_map(a)).empty());
  GradedSpace any({{"p", 0}, {"q", 2}});
  EXPECT_TRUE(check_complex(any, GradedLinearMap(any, any, 1)).empty());
  GradedSpace chain({{"u", 0}, {"v", 1}, {"w", 2}});
  const auto d = map_from(chain, 1, {{"u", "v", 1}, {"v", "w", 1}});
  const auto bad = check_complex(chain, d);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(chain.label(bad[0]), "u");
  EXPECT_THROW(check_complex(chain, GradedLinearMap(chain, chain, 0)), Error);
}

TEST(Contraction, FixA) {
  const auto a = fixtures::fix_a();
  const auto c = cohomology_contraction(a.space, differential_map(a));
  EXPECT_TRUE(contraction_violations(c).empty());
  EXPECT_EQ(c.cohomology.dim(), 0u);
  EXPECT_EQ(c.h.matrix(*a.space.index_of("x"), *a.space.index_of("y")), Rational(1));
  EXPECT_EQ(c.h.matrix(*a.space.index_of("y"), *a.space.index_of("x")), Rational(0));
}

TEST(Contraction, ZeroDifferential) {
  const auto b = fixtures::fix_b();
  const auto c = cohomology_contraction(b.space, differential_map(b));
  EXPECT_TRUE(contraction_violations(c).empty());
  const auto n = static_cast<Eigen::Index>(b.space.dim());
  EXPECT_EQ(c.i.matrix, QMatrix(QMatrix::Identity(n, n)));
  EXPECT_EQ(c.p.matrix, QMatrix(QMatrix::Identity(n, n)));
  EXPECT_TRUE(is_zero_matrix(c.h.matrix));
}

TEST(Contraction, FixD) {
  const auto g = fixtures::fix_d();
  const auto c = cohomology_contraction(g.space, differential_map(g));
  EXPECT_TRUE(contraction_violations(c).empty());
  ASSERT_EQ(c.cohomology.dim(), 3u);
  EXPECT_TRUE(c.cohomology.index_of("[a]").has_value());
  EXPECT_TRUE(c.cohomology.index_of("[b]").has_value());
  EXPECT_TRUE(c.cohomology.index_of("[w]").has_value());
  const QMatrix& h = c.h.matrix;
  const auto ci = *g.space.index_of("c");
  for (size_t r = 0; r < g.space.dim(); ++r)
    EXPECT_EQ(h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(ci)),
              Rational(g.space.label(r) == "h" ? 1 : 0));
}

TEST(Contraction, RandomComplexes) {
  random::Rng rng(7);
  std::uniform_int_distribution<int> size(1, 8), deg(0, 2), coin(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = size(rng);
    std::vector<BasisElement> elems;
    for (int i = 0; i < n; ++i) elems.push_back({"e" + std::to_string(i), deg(rng)});
    GradedSpace s(elems);
    // Pair up basis vectors e -> e' of consecutive degrees, then conjugate.
    GradedLinearMap d0(s, s, 1);
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<size_t>(i)] || !coin(rng)) continue;
      for (int j = 0; j < n; ++j) {
        if (!used[static_cast<size_t>(j)] && j != i && s.degree(static_cast<size_t>(j)) == s.degree(static_cast<size_t>(i)) + 1) {
          d0.matrix(j, i) = 1;
          used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = true;
          break;
        }
      }
    }
    const QMatrix phi = random::automorphism(s, rng);
    GradedLinearMap d(s, s, 1, phi * d0.matrix * *inverse(phi));
    ASSERT_TRUE(check_complex(s, d).empty());
    const auto c1 = cohomology_contraction(s, d);
    EXPECT_TRUE(contraction_violations(c1).empty()) << "trial " << trial;
    const auto c2 = cohomology_contraction(s, d);
    EXPECT_EQ(c1.p.matrix, c2.p.matrix);
    EXPECT_EQ(c1.h.matrix, c2.h.matrix);
    Eigen::Index total = 0;
    for (auto [k, b] : cohomology_ranks(s, d)) total += b;
    EXPECT_EQ(static_cast<Eigen::Index>(c1.cohomology.dim()), total);
  }
}

TEST(LinearAlgebra, SolveAndNullspace) {
  QMatrix a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  const QMatrix k = nullspace(a);
  EXPECT_EQ(k.cols(), 2);
  EXPECT_TRUE(is_zero_matrix(a * k));
  QVector b(2);
  b << 1, 2;
  auto x = solve(a, b);
  ASSERT_TRUE(x);
  EXPECT_EQ(QVector(a * *x), b);
  b << 1, 3;
  EXPECT_FALSE(solve(a, b));
}

#include "linf/random.hpp"

#include "linf/fixtures.hpp"
#include "linf/linalg.hpp"

namespace linf::random {

Rational small_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> den(1, 2);
  const int p = num(rng);
  const int q = den(rng);
  return Rational(p) / Rational(q);
}

QMatrix automorphism(const GradedSpace& space, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  for (;;) {
    QMatrix m = QMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        if (space.degree(static_cast<size_t>(r)) == space.degree(static_cast<size_t>(c)))
          m(r, c) = (r == c ? Rational(1) : Rational(0)) + small_rational(rng);
    if (inverse(m)) return m;
  }
}

Cochain cochain(const ConvolutionAlgebra& conv, int shifted_degree, Rng& rng, double density, int max_arity) {
  if (max_arity < 0) max_arity = conv.truncation();
  std::bernoulli_distribution fill(density);
  Cochain out;
  for (int k = 1; k <= max_arity; ++k)
    for (const auto& [m, t] : cochain_slots(conv, shifted_degree, k))
      if (fill(rng)) out.add(m, t, small_rational(rng));
  return out;
}

LInftyAlgebra dg_lie(Rng& rng, int truncation) {
  const LInftyAlgebra sl2 = make_algebra("sl2", GradedSpace({{"e", 0}, {"f", 0}, {"h", 0}}), truncation,
                                         {{{"h", "e"}, {{"e", 2}}}, {{"h", "f"}, {{"f", -2}}}, {{"e", "f"}, {{"h", 1}}}});
  const LInftyAlgebra aff = make_algebra("aff", GradedSpace({{"x", 0}, {"y", 0}}), truncation, {{{"x", "y"}, {{"y", 1}}}});
  const std::vector<LInftyAlgebra> lies{sl2, aff, fixtures::fix_b(truncation), fixtures::fix_a(truncation),
                                        fixtures::fix_d(truncation)};
  const std::vector<Cdga> cdgas{ground_cdga(), exterior_cdga(), dual_numbers_cdga()};
  std::vector<LInftyAlgebra> options;
  for (const auto& l : lies)
    for (const auto& a : cdgas)
      if (l.space.dim() * a.space.dim() <= 6) options.push_back(tensor_with_cdga(l, a));
  std::uniform_int_distribution<size_t> pick(0, options.size() - 1);
  const LInftyAlgebra g = options[pick(rng)];
  return fixtures::transport(g, automorphism(g.space, rng));
}

LInftyMorphism acyclic_extension(Rng& rng, int truncation) {
  const LInftyAlgebra line = make_algebra("line", GradedSpace({{"v", 0}}), truncation, {});
  const LInftyAlgebra aff = make_algebra("aff", GradedSpace({{"p", 0}, {"q", 0}}), truncation, {{{"p", "q"}, {{"q", 1}}}});
  const LInftyAlgebra odd = make_algebra("odd", GradedSpace({{"s", 1}}), truncation, {});
  const std::vector<LInftyAlgebra> bases{line, aff, odd, fixtures::fix_b(truncation)};
  std::uniform_int_distribution<size_t> pick_base(0, bases.size() - 1);
  std::bernoulli_distribution by_tensor(0.5);
  for (;;) {
    const LInftyAlgebra& g0 = bases[pick_base(rng)];
    LInftyAlgebra g;
    std::vector<std::string> image;
    if (by_tensor(rng)) {
      if (g0.space.dim() * 3 > 8) continue;
      g = tensor_with_cdga(g0, dual_numbers_cdga());
      for (size_t i = 0; i < g0.space.dim(); ++i) image.push_back(g0.space.label(i) + "⊗1");
    } else {
      g = fixtures::direct_sum(g0, fixtures::fix_a(truncation), g0.name + "+FIX-A");
      for (size_t i = 0; i < g0.space.dim(); ++i) image.push_back(g0.space.label(i));
    }
    QMatrix inc = QMatrix::Zero(static_cast<Eigen::Index>(g.space.dim()), static_cast<Eigen::Index>(g0.space.dim()));
    for (size_t i = 0; i < image.size(); ++i) inc(static_cast<Eigen::Index>(*g.space.index_of(image[i])), static_cast<Eigen::Index>(i)) = 1;
    const QMatrix phi = automorphism(g.space, rng);
    return strict_morphism(g0, fixtures::transport(g, phi), QMatrix(phi * inc));
  }
}

}  // namespace linf::random

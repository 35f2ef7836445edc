#include "linf/fixtures.hpp"

#include "linf/error.hpp"
#include "linf/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace linf::fixtures {

LInftyAlgebra fix_a(int truncation) {
  return make_algebra("FIX-A", GradedSpace({{"x", 0}, {"y", 1}}), truncation, {{{"x"}, {{"y", 1}}}});
}

LInftyAlgebra fix_b(int truncation) {
  return make_algebra("FIX-B", GradedSpace({{"z", 0}, {"a", 1}, {"b", 1}}), truncation,
                      {{{"z", "a"}, {{"b", 1}}}});
}

LInftyAlgebra fix_c(int truncation) { return direct_sum(fix_b(truncation), fix_a(truncation), "FIX-C"); }

LInftyAlgebra fix_d(int truncation) {
  return make_algebra("FIX-D", GradedSpace({{"a", 1}, {"b", 1}, {"h", 1}, {"c", 2}, {"w", 2}}), truncation,
                      {{{"h"}, {{"c", 1}}}, {{"a", "b"}, {{"c", 1}}}, {{"a", "h"}, {{"w", 1}}}});
}

std::optional<LInftyAlgebra> by_name(std::string_view name, int truncation) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "FIX-A") return fix_a(truncation);
  if (upper == "FIX-B") return fix_b(truncation);
  if (upper == "FIX-C") return fix_c(truncation);
  if (upper == "FIX-D") return fix_d(truncation);
  return std::nullopt;
}

LInftyAlgebra direct_sum(const LInftyAlgebra& a, const LInftyAlgebra& b, std::string name) {
  LInftyAlgebra out;
  out.name = std::move(name);
  out.truncation = std::min(a.truncation, b.truncation);
  out.space = linf::direct_sum(a.space, b.space);
  auto reindex = [&](const LInftyAlgebra& part, const Cochain& c) {
    std::vector<int> map;
    for (size_t i = 0; i < part.space.dim(); ++i)
      map.push_back(static_cast<int>(*out.space.index_of(part.space.label(i))));
    const Degrees shifted = out.shifted_degrees();
    for (const auto& [m, v] : c.values()) {
      Monomial w;
      for (int i : m) w.push_back(map[static_cast<size_t>(i)]);
      const int s = normalize(w, shifted);
      SparseVector image;
      for (const auto& [idx, coeff] : v) add_to(image, map[static_cast<size_t>(idx)], coeff);
      out.structure.add(w, image, Rational(s));
    }
  };
  reindex(a, a.structure.arities(1, out.truncation));
  reindex(b, b.structure.arities(1, out.truncation));
  return out;
}

namespace {

QMatrix label_matrix(const LInftyAlgebra& src, const LInftyAlgebra& tgt,
                     std::initializer_list<std::tuple<const char*, const char*, Rational>> entries) {
  QMatrix m = QMatrix::Zero(static_cast<Eigen::Index>(tgt.space.dim()), static_cast<Eigen::Index>(src.space.dim()));
  for (const auto& [from, to, c] : entries)
    m(static_cast<Eigen::Index>(*tgt.space.index_of(to)), static_cast<Eigen::Index>(*src.space.index_of(from))) = c;
  return m;
}

}  // namespace

std::vector<LInftyMorphism> fixture_morphisms(int truncation) {
  const auto a = fix_a(truncation), b = fix_b(truncation), c = fix_c(truncation), d = fix_d(truncation);
  std::vector<LInftyMorphism> out;
  for (const auto* g : {&a, &b, &c, &d}) out.push_back(identity_morphism(*g));
  out.push_back(strict_morphism(a, a, label_matrix(a, a, {{"x", "x", 2}, {"y", "y", 2}})));
  out.push_back(strict_morphism(b, b, label_matrix(b, b, {{"z", "z", 2}, {"a", "a", Rational(-1, 2)}, {"b", "b", -1}})));
  out.push_back(strict_morphism(b, c, label_matrix(b, c, {{"z", "z", 1}, {"a", "a", 1}, {"b", "b", 1}})));
  out.push_back(strict_morphism(c, b, label_matrix(c, b, {{"z", "z", 1}, {"a", "a", 1}, {"b", "b", 1}})));
  out.push_back(strict_morphism(a, c, label_matrix(a, c, {{"x", "x", 1}, {"y", "y", 1}})));
  out.push_back(strict_morphism(c, a, label_matrix(c, a, {{"x", "x", 3}, {"y", "y", 3}})));
  out.push_back(strict_morphism(
      d, d, label_matrix(d, d, {{"a", "a", 2}, {"b", "b", 3}, {"h", "h", 6}, {"c", "c", 6}, {"w", "w", 12}})));
  out.push_back(zero_morphism(d, b));
  out.push_back(zero_morphism(a, d));
  return out;
}

LInftyAlgebra transport(const LInftyAlgebra& g, const QMatrix& phi) {
  const auto inv = inverse(phi);
  if (!inv) throw Error(ErrorKind::SingularLinearPart, "transport along a singular map");
  const Degrees shifted = g.shifted_degrees();
  const Cochain inv_c = linear_cochain(*inv);
  LInftyAlgebra out = g;
  out.structure = Cochain{};
  for (const auto& m : symmetric_basis_upto(shifted, g.truncation))
    out.structure.set(m, apply_matrix(phi, g.structure.apply(coalgebra_map(inv_c, m, shifted, shifted))));
  return out;
}

}  // namespace linf::fixtures

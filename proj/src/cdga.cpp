#include "linf/cdga.hpp"

#include "linf/error.hpp"

namespace linf {

namespace {

int parity(int d) { return ((d % 2) + 2) % 2; }

SparseVector multiply_vectors(const Cdga& a, const SparseVector& u, const SparseVector& v) {
  SparseVector out;
  for (const auto& [i, ci] : u)
    for (const auto& [j, cj] : v) axpy(out, ci * cj, a.multiply(i, j));
  return out;
}

SparseVector basis_vector(int i) { return SparseVector{{i, Rational(1)}}; }

}  // namespace

SparseVector Cdga::multiply(int a, int b) const {
  if (a == unit) return basis_vector(b);
  if (b == unit) return basis_vector(a);
  auto it = product.find({a, b});
  return it == product.end() ? SparseVector{} : it->second;
}

void validate_cdga(const Cdga& a) {
  const int n = static_cast<int>(a.space.dim());
  auto fail = [&](const std::string& what) { throw Error(ErrorKind::InvalidStructure, a.name + ": " + what); };
  if (a.differential.rows() != n || a.differential.cols() != n) fail("differential shape");
  auto d = [&](const SparseVector& v) { return apply_matrix(a.differential, v); };
  for (int i = 0; i < n; ++i) {
    if (!d(d(basis_vector(i))).empty()) fail("d^2 != 0");
    for (int j = 0; j < n; ++j) {
      const SparseVector ij = a.multiply(i, j);
      for (const auto& [t, c] : ij)
        if (a.space.degree(static_cast<size_t>(t)) != a.space.degree(static_cast<size_t>(i)) + a.space.degree(static_cast<size_t>(j)))
          fail("product degree");
      SparseVector ji;
      axpy(ji, Rational(parity(a.space.degree(static_cast<size_t>(i)) * a.space.degree(static_cast<size_t>(j))) ? -1 : 1),
           a.multiply(j, i));
      if (!(ij == ji)) fail("not graded commutative");
      SparseVector leib = d(ij);
      axpy(leib, Rational(-1), multiply_vectors(a, d(basis_vector(i)), basis_vector(j)));
      axpy(leib, Rational(parity(a.space.degree(static_cast<size_t>(i))) ? 1 : -1),
           multiply_vectors(a, basis_vector(i), d(basis_vector(j))));
      if (!leib.empty()) fail("Leibniz");
      for (int k = 0; k < n; ++k)
        if (!(multiply_vectors(a, ij, basis_vector(k)) == multiply_vectors(a, basis_vector(i), a.multiply(j, k))))
          fail("not associative");
    }
  }
}

Cdga make_cdga(std::string name, GradedSpace space, int unit,
               const std::vector<std::tuple<int, int, SparseVector>>& products, QMatrix differential) {
  Cdga a{std::move(name), std::move(space), unit, {}, std::move(differential)};
  for (const auto& [i, j, v] : products) {
    if (v.empty()) continue;
    a.product[{i, j}] = v;
    if (i != j) {
      SparseVector w;
      axpy(w, Rational(parity(a.space.degree(static_cast<size_t>(i)) * a.space.degree(static_cast<size_t>(j))) ? -1 : 1), v);
      a.product[{j, i}] = w;
    }
  }
  validate_cdga(a);
  return a;
}

Cdga ground_cdga() { return make_cdga("Q", GradedSpace({{"1", 0}}), 0, {}, QMatrix::Zero(1, 1)); }

Cdga exterior_cdga() { return make_cdga("E", GradedSpace({{"1", 0}, {"e", 1}}), 0, {}, QMatrix::Zero(2, 2)); }

Cdga dual_numbers_cdga() {
  const GradedSpace s({{"1", 0}, {"u", 0}, {"du", 1}});
  QMatrix d = QMatrix::Zero(3, 3);
  d(static_cast<Eigen::Index>(*s.index_of("du")), static_cast<Eigen::Index>(*s.index_of("u"))) = 1;
  return make_cdga("U", s, static_cast<int>(*s.index_of("1")), {}, d);
}

Cdga interval_cdga(int D) {
  if (D < 1) throw Error(ErrorKind::TDegreeTooSmall, "interval algebra needs D >= 1");
  std::vector<BasisElement> elements;
  auto poly = [](int j) { return j == 0 ? std::string("1") : j == 1 ? std::string("t") : "t^" + std::to_string(j); };
  auto form = [&](int j) { return j == 0 ? std::string("dt") : poly(j) + "dt"; };
  for (int j = 0; j <= D; ++j) elements.push_back({poly(j), 0});
  for (int j = 0; j < D; ++j) elements.push_back({form(j), 1});
  const GradedSpace s(elements);
  auto idx = [&](const std::string& l) { return static_cast<int>(*s.index_of(l)); };
  std::vector<std::tuple<int, int, SparseVector>> products;
  for (int i = 1; i <= D; ++i)
    for (int j = i; j + i <= D; ++j) products.emplace_back(idx(poly(i)), idx(poly(j)), basis_vector(idx(poly(i + j))));
  for (int i = 1; i <= D; ++i)
    for (int j = 0; i + j < D; ++j) products.emplace_back(idx(poly(i)), idx(form(j)), basis_vector(idx(form(i + j))));
  QMatrix d = QMatrix::Zero(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim()));
  for (int j = 1; j <= D; ++j) d(idx(form(j - 1)), idx(poly(j))) = j;
  return make_cdga("I" + std::to_string(D), s, idx("1"), products, d);
}

LInftyAlgebra tensor_with_cdga(const LInftyAlgebra& g, const Cdga& a) {
  if (!g.is_dg_lie()) throw Error(ErrorKind::UnsupportedStructure, "coefficient extension needs a dg Lie algebra");
  const size_t ng = g.space.dim(), na = a.space.dim();
  std::vector<BasisElement> elements;
  for (size_t i = 0; i < ng; ++i)
    for (size_t e = 0; e < na; ++e)
      elements.push_back({g.space.label(i) + "⊗" + a.space.label(e), g.space.degree(i) + a.space.degree(e)});
  LInftyAlgebra out{g.name + "⊗" + a.name, GradedSpace(elements), g.truncation, Cochain{}};
  std::vector<std::vector<int>> index(ng, std::vector<int>(na));
  for (size_t i = 0; i < ng; ++i)
    for (size_t e = 0; e < na; ++e)
      index[i][e] = static_cast<int>(*out.space.index_of(g.space.label(i) + "⊗" + a.space.label(e)));
  auto place = [&](const SparseVector& gv, const SparseVector& av, const Rational& c, SparseVector& acc) {
    for (const auto& [i, ci] : gv)
      for (const auto& [e, ce] : av) add_to(acc, index[static_cast<size_t>(i)][static_cast<size_t>(e)], c * ci * ce);
  };
  const Degrees sg = g.shifted_degrees(), so = out.shifted_degrees();
  const QMatrix dg = differential_map(g).matrix;
  for (size_t i = 0; i < ng; ++i)
    for (size_t e = 0; e < na; ++e) {
      SparseVector value;
      place(apply_matrix(dg, basis_vector(static_cast<int>(i))), basis_vector(static_cast<int>(e)), Rational(1), value);
      place(basis_vector(static_cast<int>(i)), apply_matrix(a.differential, basis_vector(static_cast<int>(e))),
            Rational(parity(g.space.degree(i)) ? -1 : 1), value);
      add_lambda_value(out.structure, so, {index[i][e]}, value);
    }
  if (g.truncation >= 2) {
    for (size_t i = 0; i < ng; ++i)
      for (size_t e = 0; e < na; ++e)
        for (size_t j = 0; j < ng; ++j)
          for (size_t f = 0; f < na; ++f) {
            const int x = index[i][e], y = index[j][f];
            if (x > y) continue;
            const SparseVector br = lambda_value(g.structure, sg, {static_cast<int>(i), static_cast<int>(j)});
            if (br.empty()) continue;
            SparseVector value;
            place(br, a.multiply(static_cast<int>(e), static_cast<int>(f)),
                  Rational(parity(a.space.degree(e) * g.space.degree(j)) ? -1 : 1), value);
            if (!value.empty()) add_lambda_value(out.structure, so, {x, y}, value);
          }
  }
  return out;
}

}  // namespace linf

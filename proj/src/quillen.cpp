#include "linf/quillen.hpp"

#include "linf/error.hpp"
#include "linf/linalg.hpp"

#include <algorithm>

namespace linf {

namespace {

int parity(int d) { return ((d % 2) + 2) % 2; }

[[noreturn]] void bad_coalgebra(const CounitalCoalgebra& x, const std::string& what) {
  throw Error(ErrorKind::InvalidCoalgebra, (x.name.empty() ? std::string("coalgebra") : x.name) + ": " + what);
}

using PairMap = std::map<std::pair<int, int>, Rational>;
using TripleMap = std::map<std::tuple<int, int, int>, Rational>;

void bump(PairMap& m, int i, int j, const Rational& c) {
  auto& v = m[{i, j}];
  v += c;
  if (is_zero(v)) m.erase({i, j});
}

void bump(TripleMap& m, int i, int j, int k, const Rational& c) {
  auto& v = m[{i, j, k}];
  v += c;
  if (is_zero(v)) m.erase({i, j, k});
}

const std::vector<std::tuple<int, int, Rational>>& reduced_of(const CounitalCoalgebra& x, int i) {
  static const std::vector<std::tuple<int, int, Rational>> none;
  auto it = x.reduced.find(i);
  return it == x.reduced.end() ? none : it->second;
}

bool is_lyndon(const Word& w) {
  for (size_t j = 1; j < w.size(); ++j)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<std::ptrdiff_t>(j), w.end()))
      return false;
  return true;
}

}  // namespace

void validate_coalgebra(const CounitalCoalgebra& x) {
  const auto n = static_cast<int>(x.space.dim());
  if (x.differential.rows() != n || x.differential.cols() != n) bad_coalgebra(x, "differential shape");
  if (static_cast<int>(x.weight.size()) != n) bad_coalgebra(x, "weights missing");
  for (int i = 0; i < n; ++i)
    if (i != x.unit && (x.weight[static_cast<size_t>(i)] < 1 || x.weight[static_cast<size_t>(i)] > x.truncation))
      bad_coalgebra(x, "weights must lie in 1..N off the unit");
  if (n == 0 || x.weight[static_cast<size_t>(x.unit)] != 0 || x.space.degree(static_cast<size_t>(x.unit)) != 0)
    bad_coalgebra(x, "unit must have weight and degree 0");
  if (!reduced_of(x, x.unit).empty()) bad_coalgebra(x, "unit has a reduced coproduct");
  auto deg = [&](int i) { return x.space.degree(static_cast<size_t>(i)); };
  auto dcol = [&](int i) {
    SparseVector out;
    for (Eigen::Index r = 0; r < n; ++r)
      if (!is_zero(x.differential(r, i))) out[static_cast<int>(r)] = x.differential(r, i);
    return out;
  };
  for (int i = 0; i < n; ++i) {
    const SparseVector di = dcol(i);
    if (di.count(x.unit)) bad_coalgebra(x, "d hits the counit line");
    for (const auto& [j, c] : di)
      if (deg(j) != deg(i) + 1) bad_coalgebra(x, "d is not of degree +1 on " + x.space.label(static_cast<size_t>(i)));
    SparseVector dd;
    for (const auto& [j, c] : di) axpy(dd, c, dcol(j));
    if (!dd.empty()) bad_coalgebra(x, "d^2 != 0 on " + x.space.label(static_cast<size_t>(i)));
    if (i == x.unit) {
      if (!di.empty()) bad_coalgebra(x, "d(1) != 0");
      continue;
    }
    PairMap delta, flipped;
    for (const auto& [a, b, c] : reduced_of(x, i)) {
      if (a == x.unit || b == x.unit) bad_coalgebra(x, "reduced coproduct contains the unit");
      if (deg(a) + deg(b) != deg(i)) bad_coalgebra(x, "coproduct not of degree 0");
      if (x.weight[static_cast<size_t>(a)] + x.weight[static_cast<size_t>(b)] > x.weight[static_cast<size_t>(i)])
        bad_coalgebra(x, "coproduct does not lower the weight");
      bump(delta, a, b, c);
      bump(flipped, b, a, parity(deg(a) * deg(b)) ? -c : c);
    }
    if (delta != flipped) bad_coalgebra(x, "not cocommutative on " + x.space.label(static_cast<size_t>(i)));
    TripleMap left, right;
    for (const auto& [ab, c] : delta) {
      for (const auto& [p, q, e] : reduced_of(x, ab.first)) bump(left, p, q, ab.second, c * e);
      for (const auto& [p, q, e] : reduced_of(x, ab.second)) bump(right, ab.first, p, q, c * e);
    }
    if (left != right) bad_coalgebra(x, "not coassociative on " + x.space.label(static_cast<size_t>(i)));
    PairMap lhs, rhs;
    for (const auto& [j, c] : di)
      for (const auto& [p, q, e] : reduced_of(x, j)) bump(lhs, p, q, c * e);
    for (const auto& [ab, c] : delta) {
      for (const auto& [j, e] : dcol(ab.first)) bump(rhs, j, ab.second, c * e);
      for (const auto& [j, e] : dcol(ab.second)) bump(rhs, ab.first, j, parity(deg(ab.first)) ? -c * e : c * e);
    }
    if (lhs != rhs) bad_coalgebra(x, "d is not a coderivation on " + x.space.label(static_cast<size_t>(i)));
  }
}

CounitalCoalgebra trivial_coalgebra(int truncation) {
  CounitalCoalgebra x{"ground", GradedSpace({{"1", 0}}), {0}, 0, {}, QMatrix::Zero(1, 1), truncation, {Monomial{}}};
  validate_coalgebra(x);
  return x;
}

CounitalCoalgebra primitive_coalgebra(const std::string& label, int degree, int truncation) {
  CounitalCoalgebra x;
  x.name = "prim(" + label + ")";
  x.space = GradedSpace({{"1", 0}, {label, degree}});
  x.unit = static_cast<int>(*x.space.index_of("1"));
  x.weight.assign(2, 1);
  x.weight[static_cast<size_t>(x.unit)] = 0;
  x.differential = QMatrix::Zero(2, 2);
  x.truncation = truncation;
  validate_coalgebra(x);
  return x;
}

CounitalCoalgebra functor_C(const LInftyAlgebra& y) {
  if (!check_structure(y).valid()) throw Error(ErrorKind::InvalidStructure, "C(Y) of an invalid algebra");
  const auto coalg = chain_coalgebra_unchecked(y);
  const Degrees s = y.shifted_degrees();
  const auto monomials = coalg.all_monomials();
  std::vector<BasisElement> elements{{"1", 0}};
  for (const auto& m : monomials) elements.push_back({monomial_label(y.space, m), monomial_degree(m, s)});
  CounitalCoalgebra x;
  x.name = "C(" + y.name + ")";
  x.space = GradedSpace(elements);
  x.truncation = y.truncation;
  const auto n = x.space.dim();
  x.weight.assign(n, 0);
  x.monomial.assign(n, Monomial{});
  x.unit = static_cast<int>(*x.space.index_of("1"));
  std::map<Monomial, int> index;
  for (const auto& m : monomials) {
    const int i = static_cast<int>(*x.space.index_of(monomial_label(y.space, m)));
    index[m] = i;
    x.weight[static_cast<size_t>(i)] = static_cast<int>(m.size());
    x.monomial[static_cast<size_t>(i)] = m;
  }
  x.differential = QMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& m : monomials) {
    const int i = index.at(m);
    for (const auto& [mono, c] : coalg.d(m)) x.differential(index.at(mono), i) += c;
    for (const auto& t : coalg.coproduct(m)) x.reduced[i].emplace_back(index.at(t.left), index.at(t.right), t.coeff);
  }
  validate_coalgebra(x);
  return x;
}

FreeLieAlgebra::FreeLieAlgebra(std::vector<std::string> labels, std::vector<int> degrees, int truncation)
    : labels_(std::move(labels)), degrees_(std::move(degrees)), truncation_(truncation), d_(labels_.size()) {}

int FreeLieAlgebra::word_degree(const Word& w) const {
  int d = 0;
  for (int g : w) d += degrees_[static_cast<size_t>(g)];
  return d;
}

LieElement FreeLieAlgebra::generator(int g) const {
  if (truncation_ < 1) return {};
  return LieElement{{Word{g}, Rational(1)}};
}

LieElement FreeLieAlgebra::bracket(const LieElement& a, const LieElement& b) const {
  LieElement out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      if (static_cast<int>(u.size() + v.size()) > truncation_) continue;
      Word uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      add_to(out, uv, cu * cv);
      add_to(out, vu, parity(word_degree(u) * word_degree(v)) ? cu * cv : -cu * cv);
    }
  return out;
}

LieElement FreeLieAlgebra::d(const LieElement& a) const {
  LieElement out;
  for (const auto& [w, c] : a) {
    int prefix = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      for (const auto& [u, cu] : d_[static_cast<size_t>(w[i])]) {
        if (static_cast<int>(w.size() - 1 + u.size()) > truncation_) continue;
        Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        nw.insert(nw.end(), u.begin(), u.end());
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        add_to(out, nw, parity(prefix) ? -c * cu : c * cu);
      }
      prefix += degrees_[static_cast<size_t>(w[i])];
    }
  }
  return out;
}

const LieBasis& FreeLieAlgebra::basis() const {
  if (basis_) return *basis_;
  auto b = std::make_shared<LieBasis>();
  const int k = static_cast<int>(labels_.size());
  const int n = truncation_;
  std::map<Word, std::pair<LieElement, std::string>> bracketed;
  std::vector<Word> lyndon;
  if (k > 0 && n > 0) {
    // Duval's generation in lexicographic order.
    Word w{0};
    while (!w.empty()) {
      lyndon.push_back(w);
      const size_t m = w.size();
      while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
      while (!w.empty() && w.back() == k - 1) w.pop_back();
      if (!w.empty()) ++w.back();
    }
  }
  std::stable_sort(lyndon.begin(), lyndon.end(), [](const Word& a, const Word& c) { return a.size() < c.size(); });
  for (const auto& w : lyndon) {
    if (w.size() == 1) {
      bracketed[w] = {generator(w[0]), labels_[static_cast<size_t>(w[0])]};
      continue;
    }
    size_t split = 1;
    while (!is_lyndon(Word(w.begin() + static_cast<std::ptrdiff_t>(split), w.end()))) ++split;
    const Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split));
    const Word v(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());
    const auto& [eu, lu] = bracketed.at(u);
    const auto& [ev, lv] = bracketed.at(v);
    bracketed[w] = {bracket(eu, ev), "[" + lu + "," + lv + "]"};
  }
  std::vector<std::tuple<int, LieElement, std::string>> all;
  for (const auto& w : lyndon) all.emplace_back(static_cast<int>(w.size()), bracketed[w].first, bracketed[w].second);
  for (const auto& w : lyndon)
    if (parity(word_degree(w)) && static_cast<int>(2 * w.size()) <= n) {
      const auto& [e, l] = bracketed[w];
      all.emplace_back(static_cast<int>(2 * w.size()), bracket(e, e), "[" + l + "," + l + "]");
    }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& c) { return std::get<0>(a) < std::get<0>(c); });
  for (auto& [len, e, l] : all) {
    b->degrees.push_back(word_degree(e.begin()->first));
    b->lengths.push_back(len);
    b->elements.push_back(std::move(e));
    b->labels.push_back(std::move(l));
  }
  basis_ = b;
  return *basis_;
}

const FreeLieAlgebra::NormalForm& FreeLieAlgebra::form(int length) const {
  auto it = forms_.find(length);
  if (it != forms_.end()) return it->second;
  const auto& b = basis();
  NormalForm f;
  for (size_t i = 0; i < b.elements.size(); ++i)
    if (b.lengths[i] == length) f.columns.push_back(i);
  std::vector<Word> words;
  for (size_t c : f.columns)
    for (const auto& [w, x] : b.elements[c])
      if (!f.rows.count(w)) {
        f.rows[w] = 0;
        words.push_back(w);
      }
  std::sort(words.begin(), words.end());
  for (size_t r = 0; r < words.size(); ++r) f.rows[words[r]] = static_cast<Eigen::Index>(r);
  f.full = QMatrix::Zero(static_cast<Eigen::Index>(words.size()), static_cast<Eigen::Index>(f.columns.size()));
  for (size_t c = 0; c < f.columns.size(); ++c)
    for (const auto& [w, x] : b.elements[f.columns[c]]) f.full(f.rows.at(w), static_cast<Eigen::Index>(c)) = x;
  const auto ech = row_echelon(QMatrix(f.full.transpose()));
  if (ech.pivots.size() != f.columns.size())
    throw Error(ErrorKind::InvalidStructure, "Lyndon elements of length " + std::to_string(length) + " are dependent");
  QMatrix square(static_cast<Eigen::Index>(f.columns.size()), static_cast<Eigen::Index>(f.columns.size()));
  for (size_t r = 0; r < ech.pivots.size(); ++r) {
    f.chosen.push_back(words[static_cast<size_t>(ech.pivots[r])]);
    square.row(static_cast<Eigen::Index>(r)) = f.full.row(ech.pivots[r]);
  }
  f.inverse = *inverse(square);
  return forms_.emplace(length, std::move(f)).first->second;
}

SparseVector FreeLieAlgebra::coordinates(const LieElement& a) const {
  std::map<int, LieElement> by_length;
  for (const auto& [w, c] : a) by_length[static_cast<int>(w.size())][w] = c;
  SparseVector out;
  for (const auto& [len, part] : by_length) {
    const auto& f = form(len);
    QVector v(static_cast<Eigen::Index>(f.chosen.size()));
    for (size_t r = 0; r < f.chosen.size(); ++r) {
      auto it = part.find(f.chosen[r]);
      v(static_cast<Eigen::Index>(r)) = it == part.end() ? Rational(0) : it->second;
    }
    const QVector coords = f.inverse * v;
    LieElement check;
    for (size_t c = 0; c < f.columns.size(); ++c) {
      if (is_zero(coords(static_cast<Eigen::Index>(c)))) continue;
      add_to(out, static_cast<int>(f.columns[c]), coords(static_cast<Eigen::Index>(c)));
      axpy(check, coords(static_cast<Eigen::Index>(c)), basis().elements[f.columns[c]]);
    }
    if (check != part) throw Error(ErrorKind::InvalidStructure, "not a Lie element");
  }
  return out;
}

LInftyAlgebra FreeLieAlgebra::as_algebra(const std::string& name) const {
  const auto& b = basis();
  std::vector<BasisElement> elements;
  for (size_t i = 0; i < b.elements.size(); ++i) elements.push_back({b.labels[i], b.degrees[i]});
  LInftyAlgebra out{name, GradedSpace(elements), std::max(truncation_, 2), Cochain{}};
  std::vector<int> at(b.elements.size());
  for (size_t i = 0; i < b.elements.size(); ++i) at[i] = static_cast<int>(*out.space.index_of(b.labels[i]));
  auto relabel = [&](const SparseVector& v) {
    SparseVector r;
    for (const auto& [i, c] : v) r[at[static_cast<size_t>(i)]] = c;
    return r;
  };
  const Degrees s = out.shifted_degrees();
  for (size_t i = 0; i < b.elements.size(); ++i) {
    const SparseVector di = relabel(coordinates(d(b.elements[i])));
    if (!di.empty()) add_lambda_value(out.structure, s, {at[i]}, di);
    for (size_t j = 0; j < b.elements.size(); ++j) {
      if (at[i] > at[j] || b.lengths[i] + b.lengths[j] > truncation_) continue;
      const SparseVector bij = relabel(coordinates(bracket(b.elements[i], b.elements[j])));
      if (!bij.empty()) add_lambda_value(out.structure, s, {at[i], at[j]}, bij);
    }
  }
  return out;
}

CobarData functor_L(const CounitalCoalgebra& x) {
  validate_coalgebra(x);
  std::vector<std::string> labels;
  std::vector<int> degrees;
  CobarData out{FreeLieAlgebra({}, {}, x.truncation), {}, {}};
  for (size_t i = 0; i < x.space.dim(); ++i) {
    if (static_cast<int>(i) == x.unit) continue;
    out.generator_index[static_cast<int>(i)] = static_cast<int>(out.generator_of.size());
    out.generator_of.push_back(static_cast<int>(i));
    labels.push_back("↓" + x.space.label(i));
    degrees.push_back(x.space.degree(i) + 1);
  }
  out.lie = FreeLieAlgebra(labels, degrees, x.truncation);
  std::vector<LieElement> dg(out.generator_of.size());
  for (size_t g = 0; g < out.generator_of.size(); ++g) {
    const int xi = out.generator_of[g];
    for (Eigen::Index r = 0; r < x.differential.rows(); ++r)
      if (!is_zero(x.differential(r, xi)))
        axpy(dg[g], x.differential(r, xi), out.lie.generator(out.generator_index.at(static_cast<int>(r))));
    for (const auto& [a, b, c] : reduced_of(x, xi)) {
      const Rational coeff = Rational(1, 2) * c * (parity(x.space.degree(static_cast<size_t>(a))) ? 1 : -1);
      axpy(dg[g], coeff,
           out.lie.bracket(out.lie.generator(out.generator_index.at(a)), out.lie.generator(out.generator_index.at(b))));
    }
  }
  out.lie.set_generator_differential(std::move(dg));
  return out;
}

LieElement map_lie(const FreeLieAlgebra& source, const LieElement& a, const std::vector<LieElement>& images,
                   const FreeLieAlgebra& target) {
  (void)source;
  LieElement out;
  for (const auto& [w, c] : a) {
    LieElement rho = images[static_cast<size_t>(w[0])];
    for (size_t k = 1; k < w.size() && !rho.empty(); ++k) rho = target.bracket(rho, images[static_cast<size_t>(w[k])]);
    axpy(out, c / static_cast<int>(w.size()), rho);
  }
  return out;
}

SparseVector evaluate_lie(const LieElement& a, const std::vector<SparseVector>& images, const LInftyAlgebra& y) {
  const Degrees s = y.shifted_degrees();
  auto bracket = [&](const SparseVector& u, const SparseVector& v) {
    SparseVector out;
    for (const auto& [i, ci] : u)
      for (const auto& [j, cj] : v) axpy(out, ci * cj, lambda_value(y.structure, s, {i, j}));
    return out;
  };
  SparseVector out;
  for (const auto& [w, c] : a) {
    SparseVector rho = images[static_cast<size_t>(w[0])];
    for (size_t k = 1; k < w.size() && !rho.empty(); ++k) rho = bracket(rho, images[static_cast<size_t>(w[k])]);
    axpy(out, c / static_cast<int>(w.size()), rho);
  }
  return out;
}

AdjunctionUnit adjunction_unit(const CounitalCoalgebra& x) {
  AdjunctionUnit out{functor_L(x), LInftyAlgebra{}, {}};
  out.lx_algebra = out.lx.lie.as_algebra("L(" + x.name + ")");
  const auto& basis = out.lx.lie.basis();
  const Degrees sl = out.lx_algebra.shifted_degrees();
  // τ: x -> ↓x as a vector of L(X)[1].
  std::vector<SparseVector> tau(x.space.dim());
  for (const auto& [xi, g] : out.lx.generator_index) {
    const SparseVector coords = out.lx.lie.coordinates(out.lx.lie.generator(g));
    for (const auto& [b, c] : coords) tau[static_cast<size_t>(xi)][static_cast<int>(*out.lx_algebra.space.index_of(basis.labels[static_cast<size_t>(b)]))] = c;
  }
  out.unit.resize(x.space.dim());
  for (size_t e = 0; e < x.space.dim(); ++e) {
    if (static_cast<int>(e) == x.unit) {
      out.unit[e] = SymElement{{Monomial{}, Rational(1)}};
      continue;
    }
    std::vector<std::pair<Rational, std::vector<int>>> terms{{Rational(1), {static_cast<int>(e)}}};
    Rational factorial = 1;
    for (int k = 1; k <= x.truncation && !terms.empty(); ++k) {
      factorial *= k;
      for (const auto& [c, factors] : terms) {
        std::vector<const SparseVector*> ptrs;
        for (int f : factors) ptrs.push_back(&tau[static_cast<size_t>(f)]);
        axpy(out.unit[e], c / factorial, vector_product(ptrs, sl));
      }
      std::vector<std::pair<Rational, std::vector<int>>> next;
      for (const auto& [c, factors] : terms)
        for (const auto& [a, b, r] : reduced_of(x, factors[0])) {
          std::vector<int> nf{a, b};
          nf.insert(nf.end(), factors.begin() + 1, factors.end());
          next.emplace_back(c * r, nf);
        }
      terms = std::move(next);
    }
  }
  return out;
}

AdjunctionCounit adjunction_counit(const LInftyAlgebra& y) {
  if (!y.is_dg_lie()) throw Error(ErrorKind::UnsupportedStructure, "counit needs a dg Lie algebra");
  AdjunctionCounit out{functor_C(y), {FreeLieAlgebra({}, {}, 1), {}, {}}, {}};
  out.lcy = functor_L(out.cy);
  out.counit_generators.resize(out.lcy.generator_of.size());
  for (size_t g = 0; g < out.lcy.generator_of.size(); ++g) {
    const Monomial& m = out.cy.monomial[static_cast<size_t>(out.lcy.generator_of[g])];
    if (m.size() == 1) out.counit_generators[g] = SparseVector{{m[0], Rational(1)}};
  }
  return out;
}

SparseVector counit_value(const AdjunctionCounit& a, const LInftyAlgebra& y, const LieElement& e) {
  return evaluate_lie(e, a.counit_generators, y);
}

AdjunctionMaps adjunction_maps(const CounitalCoalgebra& x, const LInftyAlgebra& y) {
  if (x.truncation != y.truncation) throw Error(ErrorKind::TruncationMismatch, "coalgebra and Lie algebra truncations differ");
  return {adjunction_unit(x), adjunction_counit(y)};
}

std::vector<SparseVector> adjoint_lie_map(const CobarData& l, const CounitalCoalgebra& x, const Cochain& f) {
  std::vector<SparseVector> out(l.generator_of.size());
  for (size_t g = 0; g < out.size(); ++g)
    if (const auto* v = f.find(x.monomial[static_cast<size_t>(l.generator_of[g])])) out[g] = *v;
  return out;
}

Cochain adjoint_coalgebra_map(const CobarData& l, const CounitalCoalgebra& x, const std::vector<SparseVector>& images) {
  Cochain out;
  for (size_t g = 0; g < images.size(); ++g) out.set(x.monomial[static_cast<size_t>(l.generator_of[g])], images[g]);
  return out;
}

bool lie_map_is_dg(const CobarData& l, const std::vector<SparseVector>& images, const LInftyAlgebra& y) {
  const auto& dg = l.lie.generator_differential();
  for (size_t g = 0; g < images.size(); ++g) {
    SymElement arg;
    for (const auto& [i, c] : images[g]) add_to(arg, {i}, c);
    if (!(evaluate_lie(dg[g], images, y) == y.structure.arities(1, 1).apply(arg))) return false;
  }
  return true;
}

bool QMap::is_dg() const {
  const auto& dg = source.lie.generator_differential();
  for (size_t g = 0; g < generator_images.size(); ++g)
    if (apply(dg[g]) != target.lie.d(generator_images[g])) return false;
  return true;
}

LieElement QMap::apply(const LieElement& a) const { return map_lie(source.lie, a, generator_images, target.lie); }

QMatrix generator_differential_matrix(const CobarData& l) {
  const auto n = static_cast<Eigen::Index>(l.generator_of.size());
  QMatrix out = QMatrix::Zero(n, n);
  const auto& dg = l.lie.generator_differential();
  for (Eigen::Index g = 0; g < n; ++g)
    for (const auto& [w, c] : dg[static_cast<size_t>(g)])
      if (w.size() == 1) out(w[0], g) = c;
  return out;
}

QMatrix generator_matrix(const QMap& q) {
  QMatrix out = QMatrix::Zero(static_cast<Eigen::Index>(q.target.generator_of.size()),
                              static_cast<Eigen::Index>(q.source.generator_of.size()));
  for (size_t g = 0; g < q.generator_images.size(); ++g)
    for (const auto& [w, c] : q.generator_images[g]) {
      if (w.size() != 1) throw Error(ErrorKind::InvalidStructure, "Q(M) sends a generator to a bracket");
      out(w[0], static_cast<Eigen::Index>(g)) = c;
    }
  return out;
}

bool q_is_embedding(const QMap& q) {
  return rank(generator_matrix(q)) == static_cast<Eigen::Index>(q.source.generator_of.size());
}

bool q_is_quasi_isomorphism(const QMap& q) {
  const QMatrix ds = generator_differential_matrix(q.source), dt = generator_differential_matrix(q.target);
  const Eigen::Index n = ds.rows(), m = dt.rows();
  QMatrix cone = QMatrix::Zero(n + m, n + m);
  cone.topLeftCorner(n, n) = -ds;
  cone.bottomLeftCorner(m, n) = generator_matrix(q);
  cone.bottomRightCorner(m, m) = dt;
  return 2 * rank(cone) == n + m;
}

QMap q_forward(const LInftyMorphism& m) {
  if (!m.target.is_dg_lie()) throw Error(ErrorKind::UnsupportedStructure, "Q needs a dg Lie target");
  QMap q{functor_C(m.source), functor_C(m.target), {FreeLieAlgebra({}, {}, 1), {}, {}}, {FreeLieAlgebra({}, {}, 1), {}, {}}, {}};
  q.source = functor_L(q.source_coalgebra);
  q.target = functor_L(q.target_coalgebra);
  std::map<Monomial, int> target_generator;
  for (size_t g = 0; g < q.target.generator_of.size(); ++g)
    target_generator[q.target_coalgebra.monomial[static_cast<size_t>(q.target.generator_of[g])]] = static_cast<int>(g);
  const Degrees s1 = m.source.shifted_degrees(), s2 = m.target.shifted_degrees();
  for (size_t g = 0; g < q.source.generator_of.size(); ++g) {
    const Monomial& mono = q.source_coalgebra.monomial[static_cast<size_t>(q.source.generator_of[g])];
    LieElement image;
    for (const auto& [t, c] : coalgebra_map(m.components, mono, s1, s2))
      add_to(image, Word{target_generator.at(t)}, c);
    q.generator_images.push_back(std::move(image));
  }
  return q;
}

LInftyMorphism q_backward(const QMap& q, const LInftyAlgebra& a1, const LInftyAlgebra& a2) {
  if (!a2.is_dg_lie()) throw Error(ErrorKind::UnsupportedStructure, "Q⁻¹ needs a dg Lie target");
  std::vector<SparseVector> counit(q.target.generator_of.size());
  for (size_t g = 0; g < counit.size(); ++g) {
    const Monomial& m = q.target_coalgebra.monomial[static_cast<size_t>(q.target.generator_of[g])];
    if (m.size() == 1) counit[g] = SparseVector{{m[0], Rational(1)}};
  }
  LInftyMorphism out{a1, a2, Cochain{}};
  for (size_t g = 0; g < q.generator_images.size(); ++g)
    out.components.set(q.source_coalgebra.monomial[static_cast<size_t>(q.source.generator_of[g])],
                       evaluate_lie(q.generator_images[g], counit, a2));
  return out;
}

}  // namespace linf

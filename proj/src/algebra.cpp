#include "linf/algebra.hpp"

#include "linf/error.hpp"
#include "linf/linalg.hpp"

#include <algorithm>

namespace linf {

Degrees LInftyAlgebra::shifted_degrees() const {
  Degrees out;
  out.reserve(space.dim());
  for (size_t i = 0; i < space.dim(); ++i) out.push_back(space.shifted_degree(i));
  return out;
}

LInftyAlgebra LInftyAlgebra::with_truncation(int n) const {
  LInftyAlgebra out = *this;
  out.truncation = n;
  out.structure = structure.arities(1, n);
  return out;
}

int decalage_sign(std::span<const int> word, const Degrees& shifted) {
  const size_t k = word.size();
  long exponent = 0;
  for (size_t i = 0; i < k; ++i) exponent += static_cast<long>(k - 1 - i) * shifted[static_cast<size_t>(word[i])];
  return exponent % 2 == 0 ? 1 : -1;
}

void add_lambda_value(Cochain& c, const Degrees& shifted, std::vector<int> word, const SparseVector& value) {
  const int dec = decalage_sign(word, shifted);
  const int sort = normalize(word, shifted);
  if (sort == 0) {
    if (!value.empty()) throw Error(ErrorKind::InvalidStructure, "value on a word that vanishes by antisymmetry");
    return;
  }
  c.add(word, value, Rational(dec * sort));
}

SparseVector lambda_value(const Cochain& c, const Degrees& shifted, std::vector<int> word) {
  const int dec = decalage_sign(word, shifted);
  const int sort = normalize(word, shifted);
  SparseVector out;
  if (sort == 0) return out;
  if (const auto* v = c.find(word)) axpy(out, Rational(dec * sort), *v);
  return out;
}

namespace {

size_t require_label(const GradedSpace& space, const std::string& label) {
  auto idx = space.index_of(label);
  if (!idx) throw Error(ErrorKind::ShapeMismatch, "unknown basis label '" + label + "'");
  return *idx;
}

}  // namespace

LInftyAlgebra make_algebra(std::string name, GradedSpace space, int truncation,
                           const std::vector<Operation>& operations) {
  if (truncation < 1) throw Error(ErrorKind::TruncationMismatch, "truncation must be positive");
  LInftyAlgebra g;
  g.name = std::move(name);
  g.space = std::move(space);
  g.truncation = truncation;
  const Degrees shifted = g.shifted_degrees();
  for (const auto& op : operations) {
    const int k = static_cast<int>(op.args.size());
    if (k < 1) throw Error(ErrorKind::ShapeMismatch, "operation without arguments");
    std::vector<int> word;
    int input_degree = 0;
    for (const auto& a : op.args) {
      const size_t idx = require_label(g.space, a);
      word.push_back(static_cast<int>(idx));
      input_degree += g.space.degree(idx);
    }
    SparseVector value;
    for (const auto& [label, coeff] : op.result) {
      const size_t idx = require_label(g.space, label);
      if (is_zero(coeff)) continue;
      if (g.space.degree(idx) != input_degree + 2 - k) {
        throw Error(ErrorKind::ShapeMismatch, "l_" + std::to_string(k) + " on (" +
                                                  [&] {
                                                    std::string s;
                                                    for (size_t i = 0; i < op.args.size(); ++i)
                                                      s += (i ? "," : "") + op.args[i];
                                                    return s;
                                                  }() +
                                                  ") has output '" + label + "' of degree " +
                                                  std::to_string(g.space.degree(idx)) + ", expected " +
                                                  std::to_string(input_degree + 2 - k));
      }
      add_to(value, static_cast<int>(idx), coeff);
    }
    if (k > truncation) {
      if (!value.empty()) throw Error(ErrorKind::TruncationMismatch, "operation arity exceeds truncation");
      continue;
    }
    add_lambda_value(g.structure, shifted, word, value);
  }
  return g;
}

LInftyAlgebra zero_algebra(int truncation) {
  LInftyAlgebra g;
  g.name = "zero";
  g.truncation = truncation;
  return g;
}

GradedLinearMap differential_map(const LInftyAlgebra& g) {
  GradedLinearMap d(g.space, g.space, 1);
  for (const auto& [m, v] : g.structure.values()) {
    if (m.size() != 1) continue;
    for (const auto& [idx, coeff] : v) d.matrix(idx, m[0]) = coeff;
  }
  return d;
}

std::vector<Monomial> exterior_basis(const GradedSpace& g, int k) {
  Degrees shifted;
  for (size_t i = 0; i < g.dim(); ++i) shifted.push_back(g.shifted_degree(i));
  return symmetric_basis(shifted, k);
}

std::string monomial_label(const GradedSpace& g, const Monomial& m) {
  std::string out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += "∧";
    out += g.label(static_cast<size_t>(m[i]));
  }
  return out;
}

std::optional<DegreeViolation> find_degree_violation(const Cochain& c, const Degrees& source,
                                                     const Degrees& target, int degree) {
  for (const auto& [m, v] : c.values()) {
    const int want = monomial_degree(m, source) + degree;
    for (const auto& [idx, coeff] : v)
      if (target[static_cast<size_t>(idx)] != want) return DegreeViolation{m, idx};
  }
  return std::nullopt;
}

SymElement coderivation(const Cochain& q, const Monomial& m, const Degrees& shifted) {
  SymElement out;
  const int n = static_cast<int>(m.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Block inside, outside;
    for (int p = 0; p < n; ++p) ((mask >> p) & 1u ? inside : outside).push_back(p);
    const SparseVector* v = q.find(sub_monomial(m, inside));
    if (!v) continue;
    const Block blocks[2] = {inside, outside};
    const int sign = block_sign(m, blocks, shifted);
    const Monomial rest = sub_monomial(m, outside);
    for (const auto& [idx, coeff] : *v) {
      Monomial w;
      w.reserve(rest.size() + 1);
      w.push_back(idx);
      w.insert(w.end(), rest.begin(), rest.end());
      const int s = normalize(w, shifted);
      if (s != 0) add_to(out, w, Rational(sign * s) * coeff);
    }
  }
  return out;
}

const SymElement& ChainCoalgebra::d(const Monomial& m) const {
  static const SymElement empty;
  auto it = differential.find(m);
  return it == differential.end() ? empty : it->second;
}

std::vector<Monomial> ChainCoalgebra::all_monomials() const {
  std::vector<Monomial> out;
  for (const auto& part : basis) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<CoproductTerm> ChainCoalgebra::coproduct(const Monomial& m) const {
  return reduced_coproduct(m, base.shifted_degrees());
}

namespace {

void require_degrees(const LInftyAlgebra& g) {
  const Degrees shifted = g.shifted_degrees();
  if (auto bad = find_degree_violation(g.structure, shifted, shifted, 1)) {
    throw Error(ErrorKind::ShapeMismatch, "structure on " + monomial_label(g.space, bad->monomial) +
                                              " has output '" + g.space.label(static_cast<size_t>(bad->target_index)) +
                                              "' of the wrong degree");
  }
  if (g.structure.max_arity() > g.truncation)
    throw Error(ErrorKind::TruncationMismatch, "structure exceeds truncation");
}

}  // namespace

ChainCoalgebra chain_coalgebra_unchecked(const LInftyAlgebra& g) {
  ChainCoalgebra c;
  c.base = g;
  const Degrees shifted = g.shifted_degrees();
  c.basis.resize(static_cast<size_t>(g.truncation) + 1);
  for (int k = 1; k <= g.truncation; ++k) {
    c.basis[static_cast<size_t>(k)] = symmetric_basis(shifted, k);
    for (const auto& m : c.basis[static_cast<size_t>(k)]) {
      auto dm = coderivation(g.structure, m, shifted);
      if (!dm.empty()) c.differential.emplace(m, std::move(dm));
    }
  }
  return c;
}

StructureReport check_structure(const LInftyAlgebra& g) {
  require_degrees(g);
  const ChainCoalgebra c = chain_coalgebra_unchecked(g);
  StructureReport report;
  for (int k = 1; k <= g.truncation; ++k) {
    for (const auto& m : c.basis[static_cast<size_t>(k)]) {
      SymElement dd;
      for (const auto& [m2, coeff] : c.d(m)) axpy(dd, coeff, c.d(m2));
      if (!dd.empty()) report.violations.push_back(m);
    }
  }
  return report;
}

ChainCoalgebra chain_coalgebra(const LInftyAlgebra& g) {
  const auto report = check_structure(g);
  if (!report.valid())
    throw Error(ErrorKind::InvalidStructure,
                "D^2 != 0 on " + monomial_label(g.space, report.violations.front()));
  return chain_coalgebra_unchecked(g);
}

LInftyMorphism identity_morphism(const LInftyAlgebra& g) {
  const auto n = static_cast<Eigen::Index>(g.space.dim());
  return strict_morphism(g, g, QMatrix::Identity(n, n));
}

LInftyMorphism zero_morphism(const LInftyAlgebra& source, const LInftyAlgebra& target) {
  return LInftyMorphism{source, target, Cochain{}};
}

Cochain linear_cochain(const QMatrix& matrix) {
  Cochain c;
  for (Eigen::Index col = 0; col < matrix.cols(); ++col)
    for (Eigen::Index row = 0; row < matrix.rows(); ++row)
      c.add({static_cast<int>(col)}, static_cast<int>(row), matrix(row, col));
  return c;
}

LInftyMorphism strict_morphism(const LInftyAlgebra& source, const LInftyAlgebra& target, const QMatrix& matrix) {
  if (matrix.rows() != static_cast<Eigen::Index>(target.space.dim()) ||
      matrix.cols() != static_cast<Eigen::Index>(source.space.dim()))
    throw Error(ErrorKind::ShapeMismatch, "linear part has the wrong shape");
  LInftyMorphism f{source, target, linear_cochain(matrix)};
  if (find_degree_violation(f.components, source.shifted_degrees(), target.shifted_degrees(), 0))
    throw Error(ErrorKind::DegreeMismatch, "linear part does not preserve degree");
  return f;
}

QMatrix linear_part(const LInftyMorphism& f) {
  QMatrix out = zero_matrix(static_cast<Eigen::Index>(f.target.space.dim()),
                            static_cast<Eigen::Index>(f.source.space.dim()));
  for (const auto& [m, v] : f.components.values()) {
    if (m.size() != 1) continue;
    for (const auto& [idx, coeff] : v) out(idx, m[0]) = coeff;
  }
  return out;
}

SymElement coalgebra_map(const Cochain& f, const Monomial& m, const Degrees& source, const Degrees& target,
                         int min_blocks) {
  SymElement out;
  std::vector<const SparseVector*> factors;
  for (const auto& partition : set_partitions(static_cast<int>(m.size()))) {
    if (static_cast<int>(partition.size()) < min_blocks) continue;
    factors.clear();
    bool vanishes = false;
    for (const auto& block : partition) {
      const SparseVector* v = f.find(sub_monomial(m, block));
      if (!v) {
        vanishes = true;
        break;
      }
      factors.push_back(v);
    }
    if (vanishes) continue;
    const int sign = block_sign(m, partition, source);
    axpy(out, Rational(sign), vector_product(factors, target));
  }
  return out;
}

Cochain morphism_curvature(const ChainCoalgebra& source, const LInftyAlgebra& target, const Cochain& f) {
  const Degrees src = source.base.shifted_degrees();
  const Degrees tgt = target.shifted_degrees();
  Cochain out;
  for (const auto& m : source.all_monomials()) {
    SparseVector r = target.structure.apply(coalgebra_map(f, m, src, tgt));
    axpy(r, Rational(-1), f.apply(source.d(m)));
    out.set(m, r);
  }
  return out;
}

MorphismReport check_morphism(const LInftyMorphism& f) {
  if (f.source.truncation != f.target.truncation)
    throw Error(ErrorKind::TruncationMismatch, "source and target truncations differ");
  if (!check_structure(f.source).valid() || !check_structure(f.target).valid())
    throw Error(ErrorKind::InvalidStructure, "source or target is not a valid L-infinity algebra");
  if (find_degree_violation(f.components, f.source.shifted_degrees(), f.target.shifted_degrees(), 0))
    throw Error(ErrorKind::DegreeMismatch, "morphism component of the wrong degree");
  const auto coalg = chain_coalgebra_unchecked(f.source);
  const Cochain r = morphism_curvature(coalg, f.target, f.components);
  MorphismReport report;
  for (const auto& [m, v] : r.values()) report.violations.push_back(m);
  return report;
}

LInftyMorphism compose_morphisms(const LInftyMorphism& f, const LInftyMorphism& g) {
  if (f.truncation() != g.truncation() || f.target.truncation != g.source.truncation)
    throw Error(ErrorKind::TruncationMismatch, "cannot compose morphisms of different truncation");
  if (!(f.target.space == g.source.space))
    throw Error(ErrorKind::ShapeMismatch, "target of the first morphism is not the source of the second");
  const Degrees src = f.source.shifted_degrees();
  const Degrees mid = f.target.shifted_degrees();
  LInftyMorphism out{f.source, g.target, Cochain{}};
  for (const auto& m : symmetric_basis_upto(src, f.truncation()))
    out.components.set(m, g.components.apply(coalgebra_map(f.components, m, src, mid)));
  return out;
}

bool CoalgebraMatrix::injective() const {
  for (size_t k = 1; k < column_ranks.size(); ++k)
    if (column_ranks[k] != column_counts[k]) return false;
  return true;
}

CoalgebraMatrix induced_coalgebra_map(const LInftyMorphism& f) {
  const Degrees src = f.source.shifted_degrees();
  const Degrees tgt = f.target.shifted_degrees();
  const int n = f.truncation();
  CoalgebraMatrix out;
  out.source_basis = symmetric_basis_upto(src, n);
  out.target_basis = symmetric_basis_upto(tgt, n);
  std::map<Monomial, Eigen::Index> row_of;
  for (size_t r = 0; r < out.target_basis.size(); ++r) row_of[out.target_basis[r]] = static_cast<Eigen::Index>(r);
  out.matrix = zero_matrix(static_cast<Eigen::Index>(out.target_basis.size()),
                           static_cast<Eigen::Index>(out.source_basis.size()));
  for (size_t c = 0; c < out.source_basis.size(); ++c)
    for (const auto& [m, coeff] : coalgebra_map(f.components, out.source_basis[c], src, tgt))
      out.matrix(row_of.at(m), static_cast<Eigen::Index>(c)) = coeff;
  out.column_ranks.assign(static_cast<size_t>(n) + 1, 0);
  out.column_counts.assign(static_cast<size_t>(n) + 1, 0);
  Eigen::Index cols = 0;
  for (int k = 1; k <= n; ++k) {
    while (cols < static_cast<Eigen::Index>(out.source_basis.size()) &&
           static_cast<int>(out.source_basis[static_cast<size_t>(cols)].size()) <= k)
      ++cols;
    out.column_counts[static_cast<size_t>(k)] = cols;
    out.column_ranks[static_cast<size_t>(k)] = rank(out.matrix.leftCols(cols));
  }
  return out;
}

}  // namespace linf

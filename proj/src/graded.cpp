#include "linf/graded.hpp"

#include "linf/error.hpp"
#include "linf/linalg.hpp"

#include <algorithm>
#include <set>

namespace linf {

GradedSpace::GradedSpace(std::vector<BasisElement> elements) : basis_(std::move(elements)) {
  std::sort(basis_.begin(), basis_.end(), [](const BasisElement& a, const BasisElement& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.label < b.label;
  });
  std::set<std::string> seen;
  for (const auto& e : basis_) {
    if (!seen.insert(e.label).second) {
      throw Error(ErrorKind::ShapeMismatch, "duplicate basis label '" + e.label + "'");
    }
  }
}

std::optional<size_t> GradedSpace::index_of(std::string_view label) const {
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label == label) return i;
  return std::nullopt;
}

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& e : basis_)
    if (out.empty() || out.back() != e.degree) out.push_back(e.degree);
  return out;
}

std::vector<size_t> GradedSpace::indices_in_degree(int degree) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == degree) out.push_back(i);
  return out;
}

std::map<int, std::vector<std::string>> GradedSpace::components() const {
  std::map<int, std::vector<std::string>> out;
  for (const auto& e : basis_) out[e.degree].push_back(e.label);
  return out;
}

GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b) {
  std::vector<BasisElement> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return GradedSpace(std::move(all));
}

GradedLinearMap::GradedLinearMap(GradedSpace src, GradedSpace tgt, int shift_)
    : source(std::move(src)), target(std::move(tgt)), shift(shift_) {
  matrix = zero_matrix(static_cast<Eigen::Index>(target.dim()), static_cast<Eigen::Index>(source.dim()));
}

GradedLinearMap::GradedLinearMap(GradedSpace src, GradedSpace tgt, int shift_, QMatrix m)
    : source(std::move(src)), target(std::move(tgt)), shift(shift_), matrix(std::move(m)) {
  validate();
}

GradedLinearMap GradedLinearMap::identity(const GradedSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return GradedLinearMap(space, space, 0, QMatrix::Identity(n, n));
}

QMatrix GradedLinearMap::block(int source_degree) const {
  const auto cols = source.indices_in_degree(source_degree);
  const auto rows = target.indices_in_degree(source_degree + shift);
  QMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          matrix(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
  return out;
}

void GradedLinearMap::validate() const {
  if (matrix.rows() != static_cast<Eigen::Index>(target.dim()) ||
      matrix.cols() != static_cast<Eigen::Index>(source.dim())) {
    throw Error(ErrorKind::ShapeMismatch, "matrix dimensions do not match the bases");
  }
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      if (!is_zero(matrix(r, c)) &&
          target.degree(static_cast<size_t>(r)) != source.degree(static_cast<size_t>(c)) + shift) {
        throw Error(ErrorKind::ShapeMismatch,
                    "entry " + source.label(static_cast<size_t>(c)) + " -> " +
                        target.label(static_cast<size_t>(r)) + " violates shift " + std::to_string(shift));
      }
}

GradedLinearMap compose(const GradedLinearMap& outer, const GradedLinearMap& inner) {
  if (!(outer.source == inner.target)) {
    throw Error(ErrorKind::ShapeMismatch, "composition of maps with mismatched spaces");
  }
  GradedLinearMap out(inner.source, outer.target, outer.shift + inner.shift);
  out.matrix = outer.matrix * inner.matrix;
  return out;
}

int koszul_sign(std::span<const int> permutation, std::span<const int> degrees) {
  const size_t k = permutation.size();
  if (degrees.size() != k) {
    throw Error(ErrorKind::MalformedPermutation, "permutation and degree list differ in length");
  }
  std::vector<bool> hit(k, false);
  for (int p : permutation) {
    if (p < 0 || static_cast<size_t>(p) >= k || hit[static_cast<size_t>(p)]) {
      throw Error(ErrorKind::MalformedPermutation, "not a bijection");
    }
    hit[static_cast<size_t>(p)] = true;
  }
  int sign = 1;
  for (size_t a = 0; a < k; ++a)
    for (size_t b = a + 1; b < k; ++b)
      if (permutation[a] > permutation[b] &&
          (degrees[static_cast<size_t>(permutation[a])] * degrees[static_cast<size_t>(permutation[b])]) % 2 != 0) {
        sign = -sign;
      }
  return sign;
}

std::vector<size_t> check_complex(const GradedSpace& space, const GradedLinearMap& d) {
  if (d.shift != 1 || !(d.source == space) || !(d.target == space)) {
    throw Error(ErrorKind::ShapeMismatch, "differential must be a shift +1 endomorphism");
  }
  const QMatrix sq = d.matrix * d.matrix;
  std::vector<size_t> bad;
  for (Eigen::Index c = 0; c < sq.cols(); ++c)
    if (!is_zero_matrix(sq.col(c))) bad.push_back(static_cast<size_t>(c));
  return bad;
}

std::vector<std::string> contraction_violations(const ContractionData& c) {
  std::vector<std::string> bad;
  const auto n = static_cast<Eigen::Index>(c.ambient.dim());
  const auto m = static_cast<Eigen::Index>(c.cohomology.dim());
  const QMatrix& d = c.d.matrix;
  const QMatrix& p = c.p.matrix;
  const QMatrix& i = c.i.matrix;
  const QMatrix& h = c.h.matrix;
  if (!is_zero_matrix(d * d)) bad.push_back("d^2");
  if (!((p * i) == QMatrix::Identity(m, m))) bad.push_back("pi");
  if (!((d * h + h * d) == QMatrix(QMatrix::Identity(n, n) - i * p))) bad.push_back("dh+hd");
  if (!is_zero_matrix(h * h)) bad.push_back("hh");
  if (!is_zero_matrix(p * h)) bad.push_back("ph");
  if (!is_zero_matrix(h * i)) bad.push_back("hi");
  if (!is_zero_matrix(p * d)) bad.push_back("pd");
  if (!is_zero_matrix(d * i)) bad.push_back("di");
  return bad;
}

namespace {

QMatrix submatrix(const QMatrix& m, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  QMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
  return out;
}

}  // namespace

ContractionData cohomology_contraction(const GradedSpace& space, const GradedLinearMap& d) {
  if (!check_complex(space, d).empty()) {
    throw Error(ErrorKind::InvalidStructure, "d∘d != 0");
  }
  const auto degrees = space.degrees();
  const auto n = static_cast<Eigen::Index>(space.dim());

  struct Split {
    std::vector<size_t> idx;       // ambient indices in this degree
    QMatrix boundary;              // columns: basis of B^n (local coordinates)
    QMatrix harmonic;              // columns: cohomology representatives
    std::vector<size_t> harmonic_label;  // ambient index naming each class
    std::vector<size_t> lift;      // ambient indices e_j with d e_j spanning B^{n+1}
  };
  std::map<int, Split> split;
  for (int deg : degrees) split[deg].idx = space.indices_in_degree(deg);

  // Pivot columns of d^n give the complement R^n and the boundary basis of B^{n+1}.
  for (int deg : degrees) {
    auto& s = split[deg];
    if (!split.count(deg + 1)) continue;
    auto& next = split[deg + 1];
    const QMatrix dn = submatrix(d.matrix, next.idx, s.idx);
    const auto ech = row_echelon(dn);
    next.boundary = QMatrix(static_cast<Eigen::Index>(next.idx.size()), static_cast<Eigen::Index>(ech.pivots.size()));
    for (size_t k = 0; k < ech.pivots.size(); ++k) {
      s.lift.push_back(s.idx[static_cast<size_t>(ech.pivots[k])]);
      next.boundary.col(static_cast<Eigen::Index>(k)) = dn.col(ech.pivots[k]);
    }
  }

  std::vector<BasisElement> classes;
  for (int deg : degrees) {
    auto& s = split[deg];
    const auto dim = static_cast<Eigen::Index>(s.idx.size());
    if (s.boundary.size() == 0) s.boundary = QMatrix(dim, 0);
    QMatrix kernel;
    std::vector<size_t> free_cols;
    if (split.count(deg + 1)) {
      const QMatrix dn = submatrix(d.matrix, split[deg + 1].idx, s.idx);
      kernel = nullspace(dn);
      const auto ech = row_echelon(dn);
      for (Eigen::Index c = 0; c < dim; ++c)
        if (std::find(ech.pivots.begin(), ech.pivots.end(), c) == ech.pivots.end())
          free_cols.push_back(static_cast<size_t>(c));
    } else {
      kernel = QMatrix::Identity(dim, dim);
      for (Eigen::Index c = 0; c < dim; ++c) free_cols.push_back(static_cast<size_t>(c));
    }
    QMatrix acc = s.boundary;
    Eigen::Index acc_rank = rank(acc);
    std::vector<Eigen::Index> chosen;
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
      QMatrix trial(dim, acc.cols() + 1);
      trial << acc, kernel.col(c);
      const auto r = rank(trial);
      if (r > acc_rank) {
        acc = trial;
        acc_rank = r;
        chosen.push_back(c);
      }
    }
    s.harmonic = QMatrix(dim, static_cast<Eigen::Index>(chosen.size()));
    for (size_t k = 0; k < chosen.size(); ++k) {
      s.harmonic.col(static_cast<Eigen::Index>(k)) = kernel.col(chosen[k]);
      const size_t amb = s.idx[free_cols[static_cast<size_t>(chosen[k])]];
      s.harmonic_label.push_back(amb);
      classes.push_back({"[" + space.label(amb) + "]", deg});
    }
  }

  GradedSpace cohom(classes);
  ContractionData out;
  out.ambient = space;
  out.d = d;
  out.cohomology = cohom;
  out.p = GradedLinearMap(space, cohom, 0);
  out.i = GradedLinearMap(cohom, space, 0);
  out.h = GradedLinearMap(space, space, -1);

  for (int deg : degrees) {
    auto& s = split[deg];
    const auto dim = static_cast<Eigen::Index>(s.idx.size());
    const auto nb = s.boundary.cols();
    const auto nh = s.harmonic.cols();
    QMatrix basis(dim, dim);
    Eigen::Index col = 0;
    for (Eigen::Index c = 0; c < nb; ++c) basis.col(col++) = s.boundary.col(c);
    for (Eigen::Index c = 0; c < nh; ++c) basis.col(col++) = s.harmonic.col(c);
    for (size_t amb : s.lift) {
      QVector e = QVector::Zero(dim);
      const auto local = std::find(s.idx.begin(), s.idx.end(), amb) - s.idx.begin();
      e(local) = 1;
      basis.col(col++) = e;
    }
    if (col != dim) throw Error(ErrorKind::InvalidContraction, "splitting is not a basis");
    const auto inv = inverse(basis);
    if (!inv) throw Error(ErrorKind::InvalidContraction, "splitting is singular");
    for (Eigen::Index k = 0; k < nh; ++k) {
      const auto cls = *cohom.index_of("[" + space.label(s.harmonic_label[static_cast<size_t>(k)]) + "]");
      for (Eigen::Index r = 0; r < dim; ++r) {
        out.i.matrix(static_cast<Eigen::Index>(s.idx[static_cast<size_t>(r)]), static_cast<Eigen::Index>(cls)) =
            s.harmonic(r, k);
        out.p.matrix(static_cast<Eigen::Index>(cls), static_cast<Eigen::Index>(s.idx[static_cast<size_t>(r)])) =
            (*inv)(nb + k, r);
      }
    }
    if (nb > 0) {
      const auto& prev = split[deg - 1];
      for (Eigen::Index k = 0; k < nb; ++k) {
        const size_t target = prev.lift[static_cast<size_t>(k)];
        for (Eigen::Index r = 0; r < dim; ++r)
          out.h.matrix(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(s.idx[static_cast<size_t>(r)])) =
              (*inv)(k, r);
      }
    }
  }
  (void)n;
  return out;
}

std::map<int, Eigen::Index> cohomology_ranks(const GradedSpace& space, const GradedLinearMap& d) {
  std::map<int, Eigen::Index> out;
  for (int deg : space.degrees()) {
    const auto idx = space.indices_in_degree(deg);
    const auto next = space.indices_in_degree(deg + 1);
    const auto prev = space.indices_in_degree(deg - 1);
    const Eigen::Index rk_out = next.empty() ? 0 : rank(submatrix(d.matrix, next, idx));
    const Eigen::Index rk_in = prev.empty() ? 0 : rank(submatrix(d.matrix, idx, prev));
    const Eigen::Index b = static_cast<Eigen::Index>(idx.size()) - rk_out - rk_in;
    if (b != 0) out[deg] = b;
  }
  return out;
}

}  // namespace linf

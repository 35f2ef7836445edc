#include "linf/inversion.hpp"

#include "linf/error.hpp"
#include "linf/linalg.hpp"

namespace linf {

namespace {

bool is_strict(const LInftyMorphism& f) { return f.components.max_arity() <= 1; }

Eigen::Index idx(size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

EmbeddingContraction embedding_contraction(const LInftyMorphism& i) {
  if (!is_strict(i) || !check_morphism(i).valid()) throw Error(ErrorKind::NotAnEmbedding, "not a strict morphism");
  const QMatrix in = linear_part(i);
  const auto& g = i.target.space;
  const auto n = idx(g.dim()), m = idx(i.source.space.dim());
  if (rank(in) != m) throw Error(ErrorKind::NotAnEmbedding, "linear part is not injective");
  if (cohomology_ranks(i.source.space, differential_map(i.source)) != cohomology_ranks(g, differential_map(i.target)))
    throw Error(ErrorKind::NotQuasiIso, "cohomology ranks differ");
  // Complement of the image spanned by standard vectors, in basis order.
  QMatrix basis = in;
  std::vector<size_t> extra;
  for (size_t e = 0; e < g.dim(); ++e) {
    QMatrix trial(n, basis.cols() + 1);
    trial << basis, QMatrix::Identity(n, n).col(idx(e));
    if (rank(trial) > basis.cols()) {
      basis = trial;
      extra.push_back(e);
    }
  }
  const QMatrix coords = *inverse(basis);
  const auto q = idx(extra.size());
  const QMatrix pi = coords.bottomRows(q);
  QMatrix s = QMatrix::Zero(n, q);
  std::vector<BasisElement> qbasis;
  for (size_t k = 0; k < extra.size(); ++k) {
    s(idx(extra[k]), idx(k)) = 1;
    qbasis.push_back({g.label(extra[k]), g.degree(extra[k])});
  }
  const QMatrix dg = differential_map(i.target).matrix;
  // GradedSpace sorts by (degree, label); extra is already in that order.
  const GradedSpace qspace(qbasis);
  const GradedLinearMap dq(qspace, qspace, 1, QMatrix(pi * dg * s));
  const auto qc = cohomology_contraction(qspace, dq);
  if (qc.cohomology.dim() != 0) throw Error(ErrorKind::NotQuasiIso, "quotient is not acyclic");
  const QMatrix& k = qc.h.matrix;
  // Chain-map section of the quotient: s' = d s k + s k d_Q.
  const QMatrix sc = dg * s * k + s * k * dq.matrix;
  // Retraction along im s', so that 1 - i∘r = s'π.
  const QMatrix r = coords.topRows(m) * (QMatrix::Identity(n, n) - sc * pi);
  return EmbeddingContraction{QMatrix(sc * k * pi), r};
}

InversionTrace embedding_inverse(const LInftyMorphism& i, const EmbeddingContraction& c) {
  if (!is_strict(i) || !check_morphism(i).valid()) throw Error(ErrorKind::NotAnEmbedding, "not a strict morphism");
  const QMatrix in = linear_part(i);
  const auto& gl = i.target;
  const auto n = idx(gl.space.dim());
  if (rank(in) != in.cols()) throw Error(ErrorKind::NotAnEmbedding, "linear part is not injective");
  if (cohomology_ranks(i.source.space, differential_map(i.source)) != cohomology_ranks(gl.space, differential_map(gl)))
    throw Error(ErrorKind::NotQuasiIso, "cohomology ranks differ");
  const QMatrix d = differential_map(gl).matrix;
  const QMatrix p = in * c.r;
  if (!is_zero_matrix(QMatrix(c.h * in))) throw Error(ErrorKind::BadContraction, "h does not vanish on g0");
  if (!(QMatrix(c.r * in) == QMatrix::Identity(in.cols(), in.cols())) ||
      !(QMatrix(d * c.h + c.h * d) == QMatrix(QMatrix::Identity(n, n) - p)))
    throw Error(ErrorKind::BadContraction, "dh + hd != 1 - p");
  const int N = gl.truncation;
  InversionTrace trace{{identity_morphism(gl)}, {}, LInftyMorphism{}, {}, {}};
  for (int k = 0; k < N; ++k) {
    // Under the flow convention of gauge_action this is the gauge moving F
    // to F - [d, h∘F] at lowest order.
    const Cochain x = postcompose(c.h, trace.iterates.back().components);
    trace.gauges.push_back(x);
    trace.iterates.push_back(gauge_action(trace.iterates.back(), x));
  }
  const LInftyMorphism& last = trace.iterates.back();
  trace.result = LInftyMorphism{gl, i.source, postcompose(c.r, last.components)};
  const auto conv = build_convolution(gl, gl);
  Cochain total = trace.gauges.front();
  for (size_t k = 1; k < trace.gauges.size(); ++k) total = bch_compose(conv, trace.gauges[k], total);
  trace.embedding_side = HomotopyCertificate{identity_morphism(gl), compose_morphisms(trace.result, i), total};
  trace.source_side = HomotopyCertificate{identity_morphism(i.source), compose_morphisms(i, trace.result), Cochain{}};
  return trace;
}

InversionTrace embedding_inverse(const LInftyMorphism& i) { return embedding_inverse(i, embedding_contraction(i)); }

LInftyMorphism formal_inverse(const LInftyMorphism& f) {
  const QMatrix a = linear_part(f);
  std::optional<QMatrix> inv;
  if (a.rows() == a.cols()) inv = inverse(a);
  if (!inv) throw Error(ErrorKind::SingularLinearPart, "linear part is not invertible");
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (!is_zero((*inv)(c, r)) && f.source.space.degree(static_cast<size_t>(c)) != f.target.space.degree(static_cast<size_t>(r)))
        throw Error(ErrorKind::SingularLinearPart, "inverse of the linear part does not preserve degree");
  LInftyMorphism g{f.target, f.source, linear_cochain(*inv)};
  const Degrees src = f.target.shifted_degrees(), mid = f.source.shifted_degrees();
  for (int k = 2; k <= f.truncation(); ++k)
    for (const auto& y : symmetric_basis(src, k)) {
      const SparseVector rest = f.components.apply(coalgebra_map(g.components, y, src, mid, 2));
      SparseVector gk;
      axpy(gk, Rational(-1), apply_matrix(*inv, rest));
      g.components.set(y, gk);
    }
  return g;
}

QMatrix cohomology_map(const LInftyMorphism& f) {
  const auto c1 = cohomology_contraction(f.source.space, differential_map(f.source));
  const auto c2 = cohomology_contraction(f.target.space, differential_map(f.target));
  return c2.p.matrix * linear_part(f) * c1.i.matrix;
}

HomotopyInverse homotopy_inverse(const LInftyMorphism& f) {
  if (!check_morphism(f).valid()) throw Error(ErrorKind::NotAMorphism, "input is not a morphism");
  const QMatrix hf = cohomology_map(f);
  if (hf.rows() != hf.cols() || rank(hf) != hf.rows()) throw Error(ErrorKind::NotQuasiIso, "not a quasi-isomorphism");
  const auto t1 = transfer(f.source), t2 = transfer(f.target);
  const auto dotted = compose_morphisms(compose_morphisms(t1.embedding, f), t2.projection);
  const auto dotted_inv = formal_inverse(dotted);
  const auto g = compose_morphisms(compose_morphisms(t2.projection, dotted_inv), t1.embedding);
  const auto gf = find_homotopy(compose_morphisms(f, g), identity_morphism(f.source));
  if (!gf.certificate)
    throw Error(ErrorKind::CertificateNotFound, "G∘F ~ id not found at arity " + std::to_string(gf.failed_arity));
  const auto fg = find_homotopy(compose_morphisms(g, f), identity_morphism(f.target));
  if (!fg.certificate)
    throw Error(ErrorKind::CertificateNotFound, "F∘G ~ id not found at arity " + std::to_string(fg.failed_arity));
  return HomotopyInverse{g, *gf.certificate, *fg.certificate};
}

}  // namespace linf

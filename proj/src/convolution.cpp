#include "linf/convolution.hpp"

#include "linf/bch.hpp"
#include "linf/error.hpp"
#include "linf/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace linf {

std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> b{Rational(1)};
  std::vector<std::vector<Rational>> binom{{1}};
  for (int m = 1; m <= n + 1; ++m) {
    std::vector<Rational> row(static_cast<size_t>(m) + 1, Rational(1));
    for (int j = 1; j < m; ++j)
      row[static_cast<size_t>(j)] = binom[static_cast<size_t>(m) - 1][static_cast<size_t>(j) - 1] +
                                    binom[static_cast<size_t>(m) - 1][static_cast<size_t>(j)];
    binom.push_back(row);
  }
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += binom[static_cast<size_t>(m) + 1][static_cast<size_t>(j)] * b[static_cast<size_t>(j)];
    b.push_back(-s / Rational(m + 1));
  }
  return b;
}

ConvolutionAlgebra build_convolution(const LInftyAlgebra& g1, const LInftyAlgebra& g2) {
  if (g1.truncation != g2.truncation)
    throw Error(ErrorKind::TruncationMismatch, "convolution of algebras with different truncations");
  ConvolutionAlgebra conv;
  conv.source = chain_coalgebra_unchecked(g1);
  conv.target = g2;
  conv.source_degrees = g1.shifted_degrees();
  conv.target_degrees = g2.shifted_degrees();
  conv.monomials = conv.source.all_monomials();
  return conv;
}

namespace {

SparseVector apply_linear(const Cochain& q, const SparseVector& v) {
  SymElement s;
  for (const auto& [i, c] : v) add_to(s, {i}, c);
  return q.apply(s);
}

int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

// Σ over ordered partitions of m into inputs.size() blocks of
// sign · q(ψ_1(c_1)···ψ_k(c_k)).
SparseVector product_on(const ConvolutionAlgebra& conv, const Monomial& m, std::span<const Cochain* const> inputs,
                        std::span<const int> degrees) {
  const size_t k = inputs.size();
  SparseVector out;
  std::vector<size_t> order(k);
  std::vector<Block> blocks(k);
  std::vector<const SparseVector*> factors(k);
  for (const auto& partition : set_partitions(static_cast<int>(m.size()))) {
    if (partition.size() != k) continue;
    std::iota(order.begin(), order.end(), 0);
    do {
      bool vanishes = false;
      long exponent = 0;
      for (size_t i = 0; i < k && !vanishes; ++i) {
        blocks[i] = partition[order[i]];
        const Monomial c = sub_monomial(m, blocks[i]);
        factors[i] = inputs[i]->find(c);
        if (!factors[i]) vanishes = true;
      }
      if (vanishes) continue;
      for (size_t i = 0; i < k; ++i) {
        const int ci = monomial_degree(sub_monomial(m, blocks[i]), conv.source_degrees);
        for (size_t j = i + 1; j < k; ++j) exponent += static_cast<long>(degrees[j]) * ci;
      }
      const int sign = block_sign(m, blocks, conv.source_degrees) * parity_sign(exponent);
      axpy(out, Rational(sign), conv.target.structure.apply(vector_product(factors, conv.target_degrees)));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

Cochain product_upto(const ConvolutionAlgebra& conv, std::span<const Cochain* const> inputs,
                     std::span<const int> degrees, int max_arity) {
  Cochain out;
  for (const auto& m : conv.monomials) {
    if (static_cast<int>(m.size()) > max_arity) break;
    if (m.size() < inputs.size()) continue;
    out.set(m, product_on(conv, m, inputs, degrees));
  }
  return out;
}

Cochain differential_upto(const ConvolutionAlgebra& conv, const Cochain& psi, int shifted_degree, int max_arity) {
  Cochain out;
  const Rational s(-parity_sign(shifted_degree));
  for (const auto& m : conv.monomials) {
    if (static_cast<int>(m.size()) > max_arity) break;
    SparseVector v;
    if (const auto* p = psi.find(m)) v = apply_linear(conv.target.structure, *p);
    axpy(v, s, psi.apply(conv.source.d(m)));
    out.set(m, v);
  }
  return out;
}

void require_degree(const ConvolutionAlgebra& conv, const Cochain& c, int shifted_degree, const char* what) {
  if (find_degree_violation(c, conv.source_degrees, conv.target_degrees, shifted_degree))
    throw Error(ErrorKind::DegreeMismatch, std::string(what) + " has a component of the wrong degree");
}

}  // namespace

Cochain convolution_differential(const ConvolutionAlgebra& conv, const Cochain& psi, int shifted_degree) {
  return differential_upto(conv, psi, shifted_degree, conv.truncation());
}

Cochain convolution_product(const ConvolutionAlgebra& conv, std::span<const Cochain* const> inputs,
                            std::span<const int> shifted_degrees) {
  return product_upto(conv, inputs, shifted_degrees, conv.truncation());
}

ConvolutionElement convolution_operation(const ConvolutionAlgebra& conv, std::span<const ConvolutionElement> inputs) {
  if (inputs.empty()) throw Error(ErrorKind::ShapeMismatch, "operation needs at least one input");
  int total = 0;
  std::vector<const Cochain*> ptrs;
  std::vector<int> degrees;
  for (const auto& e : inputs) {
    ptrs.push_back(&e.components);
    degrees.push_back(e.degree - 1);
    total += e.degree - 1;
  }
  if (inputs.size() == 1) return {inputs[0].degree + 1, convolution_differential(conv, inputs[0].components, degrees[0])};
  return {total + 2, convolution_product(conv, ptrs, degrees)};
}

Cochain mc_curvature(const ConvolutionAlgebra& conv, const Cochain& phi) {
  return morphism_curvature(conv.source, conv.target, phi);
}

ConvolutionElement mc_curvature(const ConvolutionAlgebra& conv, const ConvolutionElement& phi) {
  if (phi.degree != 1) throw Error(ErrorKind::DegreeMismatch, "curvature needs a degree-1 element");
  require_degree(conv, phi.components, 0, "element");
  return {2, mc_curvature(conv, phi.components)};
}

Cochain gauge_field(const ConvolutionAlgebra& conv, const Cochain& x, const Cochain& alpha, int arity) {
  Cochain out;
  if (arity < 1 || arity > conv.truncation()) return out;
  std::vector<Block> ordered;
  std::vector<const SparseVector*> factors;
  for (const auto& m : conv.source.basis[static_cast<size_t>(arity)]) {
    SparseVector v = x.apply(conv.source.d(m));
    for (const auto& partition : set_partitions(arity)) {
      for (size_t b = 0; b < partition.size(); ++b) {
        const SparseVector* xv = x.find(sub_monomial(m, partition[b]));
        if (!xv) continue;
        ordered.assign(1, partition[b]);
        factors.assign(1, xv);
        bool vanishes = false;
        for (size_t o = 0; o < partition.size(); ++o) {
          if (o == b) continue;
          const SparseVector* av = alpha.find(sub_monomial(m, partition[o]));
          if (!av) {
            vanishes = true;
            break;
          }
          ordered.push_back(partition[o]);
          factors.push_back(av);
        }
        if (vanishes) continue;
        const int sign = block_sign(m, ordered, conv.source_degrees);
        axpy(v, Rational(sign), conv.target.structure.apply(vector_product(factors, conv.target_degrees)));
      }
    }
    SparseVector neg;
    axpy(neg, Rational(-1), v);
    out.set(m, neg);
  }
  return out;
}

Cochain gauge_flow(const ConvolutionAlgebra& conv, const Cochain& alpha, const Cochain& x, int max_arity) {
  max_arity = std::min(max_arity, conv.truncation());
  // poly[n][j]: coefficient of t^j in the arity-n part of α(t).
  std::vector<std::vector<Cochain>> poly(static_cast<size_t>(max_arity) + 1);
  Cochain result;
  for (int n = 1; n <= max_arity; ++n) {
    auto& pn = poly[static_cast<size_t>(n)];
    pn.assign(static_cast<size_t>(n) + 1, Cochain{});
    pn[0] = alpha.arities(n, n);
    // V_n(t) has degree <= n-1 in t: sample at t = 0..n-1.
    std::vector<Cochain> samples;
    for (int s = 0; s < n; ++s) {
      Cochain at;
      const Rational t(s);
      for (int j = 1; j < n; ++j) {
        Rational power = 1;
        for (const auto& coeff : poly[static_cast<size_t>(j)]) {
          at += power * coeff;
          power *= t;
        }
      }
      samples.push_back(gauge_field(conv, x, at, n));
    }
    QMatrix vandermonde(n, n);
    for (int s = 0; s < n; ++s) {
      Rational power = 1;
      for (int j = 0; j < n; ++j) {
        vandermonde(s, j) = power;
        power *= s;
      }
    }
    const QMatrix inv = *inverse(vandermonde);
    for (int j = 0; j < n; ++j) {
      Cochain cj;
      for (int s = 0; s < n; ++s)
        if (!is_zero(inv(j, s))) cj += inv(j, s) * samples[static_cast<size_t>(s)];
      pn[static_cast<size_t>(j) + 1] = Rational(1, j + 1) * cj;
    }
    for (const auto& c : pn) result += c;
  }
  return result;
}

Cochain gauge_bracket(const ConvolutionAlgebra& conv, const Cochain& x1, const Cochain& x2) {
  const Cochain* in[2] = {&x1, &x2};
  const int deg[2] = {-1, -1};
  return -convolution_product(conv, in, deg);
}

Cochain gauge_closed_form(const ConvolutionAlgebra& conv, const Cochain& alpha, const Cochain& x, int max_arity) {
  max_arity = std::min(max_arity, conv.truncation());
  auto ad = [&](const Cochain& y) {
    const Cochain* in[2] = {&x, &y};
    const int deg[2] = {-1, 0};
    return -product_upto(conv, in, deg, max_arity);
  };
  Cochain result = alpha.arities(1, max_arity);
  Cochain term = result;
  for (int n = 1; n <= max_arity && !term.empty(); ++n) {
    term = Rational(1, n) * ad(term);
    result += term;
  }
  term = -differential_upto(conv, x, -1, max_arity);
  for (int n = 0; n <= max_arity && !term.empty(); ++n) {
    if (n > 0) term = Rational(1, n + 1) * ad(term);
    result += term;
  }
  return result;
}

Cochain gauge_transform(const ConvolutionAlgebra& conv, const Cochain& alpha, const Cochain& x, int max_arity) {
  return conv.is_dg_lie() ? gauge_closed_form(conv, alpha, x, max_arity) : gauge_flow(conv, alpha, x, max_arity);
}

LInftyMorphism gauge_action(const LInftyMorphism& f, const Cochain& h) {
  const auto conv = build_convolution(f.source, f.target);
  require_degree(conv, h, -1, "gauge element");
  require_degree(conv, f.components, 0, "morphism");
  if (!mc_curvature(conv, f.components).empty()) throw Error(ErrorKind::NotAMorphism, "gauge action on a non-morphism");
  return LInftyMorphism{f.source, f.target, gauge_transform(conv, f.components, h, conv.truncation())};
}

Cochain bch_compose(const ConvolutionAlgebra& conv, const Cochain& h1, const Cochain& h2) {
  if (!conv.is_dg_lie())
    throw Error(ErrorKind::UnsupportedStructure, "BCH needs a dg Lie convolution algebra");
  return bch_series(h1, h2, conv.truncation(),
                    [&](const Cochain& a, const Cochain& b) { return gauge_bracket(conv, a, b); });
}

bool HomotopyCertificate::verify() const {
  try {
    return gauge_action(from, gauge).components == to.components;
  } catch (const Error&) {
    return false;
  }
}

std::vector<std::pair<Monomial, int>> cochain_slots(const ConvolutionAlgebra& conv, int shifted_degree, int arity) {
  std::vector<std::pair<Monomial, int>> out;
  if (arity < 1 || arity > conv.truncation()) return out;
  for (const auto& m : conv.source.basis[static_cast<size_t>(arity)]) {
    const int want = monomial_degree(m, conv.source_degrees) + shifted_degree;
    for (size_t t = 0; t < conv.target_degrees.size(); ++t)
      if (conv.target_degrees[t] == want) out.emplace_back(m, static_cast<int>(t));
  }
  return out;
}

namespace {

QVector flatten(const Cochain& c, const std::vector<std::pair<Monomial, int>>& slots) {
  QVector v = QVector::Zero(static_cast<Eigen::Index>(slots.size()));
  for (size_t i = 0; i < slots.size(); ++i)
    if (const auto* val = c.find(slots[i].first)) {
      auto it = val->find(slots[i].second);
      if (it != val->end()) v(static_cast<Eigen::Index>(i)) = it->second;
    }
  return v;
}

}  // namespace

namespace {

// dg Lie target: at arity m solve the linearization -d^F s for a correction s
// supported in arities <= m that leaves arities < m untouched, then move F by
// s and fold s into the accumulated gauge with BCH.
HomotopySearch find_homotopy_lie(const ConvolutionAlgebra& conv, const LInftyMorphism& f1, const LInftyMorphism& f2) {
  const int n = conv.truncation();
  Cochain x, current = f1.components;
  for (int m = 1; m <= n; ++m) {
    const Cochain gap = (f2.components - current).arities(m, m);
    if (gap.empty()) continue;
    std::vector<std::pair<Monomial, int>> eqs, unknowns;
    for (int j = 1; j <= m; ++j) {
      for (const auto& e : cochain_slots(conv, 0, j)) eqs.push_back(e);
      for (const auto& u : cochain_slots(conv, -1, j)) unknowns.push_back(u);
    }
    QMatrix a(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(unknowns.size()));
    for (size_t u = 0; u < unknowns.size(); ++u) {
      Cochain probe;
      probe.add(unknowns[u].first, unknowns[u].second, Rational(1));
      Cochain v;
      for (int j = 1; j <= m; ++j) v += gauge_field(conv, probe, current, j);
      a.col(static_cast<Eigen::Index>(u)) = flatten(v, eqs);
    }
    const auto z = solve(a, flatten(gap, eqs));
    if (!z) return HomotopySearch{std::nullopt, m};
    Cochain s;
    for (size_t u = 0; u < unknowns.size(); ++u) s.add(unknowns[u].first, unknowns[u].second, (*z)(static_cast<Eigen::Index>(u)));
    current = gauge_transform(conv, current, s, n);
    x = bch_compose(conv, s, x);
  }
  HomotopyCertificate cert{f1, f2, x};
  if (!cert.verify()) return HomotopySearch{std::nullopt, n};
  return HomotopySearch{cert, 0};
}

}  // namespace

HomotopySearch find_homotopy(const LInftyMorphism& f1, const LInftyMorphism& f2) {
  if (!(f1.source.space == f2.source.space) || !(f1.target.space == f2.target.space))
    throw Error(ErrorKind::ShapeMismatch, "morphisms between different algebras");
  const auto conv = build_convolution(f1.source, f1.target);
  if (!mc_curvature(conv, f1.components).empty() || !mc_curvature(conv, f2.components).empty())
    throw Error(ErrorKind::NotAMorphism, "homotopy search between non-morphisms");
  const int n = conv.truncation();
  if (conv.is_dg_lie()) return find_homotopy_lie(conv, f1, f2);
  Cochain x;
  // Kernel directions of the previous arity, as cochains of that arity.
  std::vector<Cochain> lookback;
  for (int m = 1; m <= n; ++m) {
    const auto eqs = cochain_slots(conv, 0, m);
    const auto unknowns = cochain_slots(conv, -1, m);
    const Cochain base = gauge_transform(conv, f1.components, x, m).arities(m, m);
    const QVector base_v = flatten(base, eqs);
    const QVector rhs = flatten(f2.components.arities(m, m), eqs) - base_v;
    const auto cols = static_cast<Eigen::Index>(unknowns.size() + lookback.size());
    QMatrix a(static_cast<Eigen::Index>(eqs.size()), cols);
    for (size_t u = 0; u < unknowns.size(); ++u) {
      Cochain probe = x;
      probe.add(unknowns[u].first, unknowns[u].second, Rational(1));
      a.col(static_cast<Eigen::Index>(u)) = flatten(gauge_transform(conv, f1.components, probe, m).arities(m, m), eqs) - base_v;
    }
    for (size_t l = 0; l < lookback.size(); ++l) {
      a.col(static_cast<Eigen::Index>(unknowns.size() + l)) =
          flatten(gauge_transform(conv, f1.components, x + lookback[l], m).arities(m, m), eqs) - base_v;
    }
    const auto z = solve(a, rhs);
    if (!z) return HomotopySearch{std::nullopt, m};
    for (size_t u = 0; u < unknowns.size(); ++u)
      x.add(unknowns[u].first, unknowns[u].second, (*z)(static_cast<Eigen::Index>(u)));
    for (size_t l = 0; l < lookback.size(); ++l)
      x += (*z)(static_cast<Eigen::Index>(unknowns.size() + l)) * lookback[l];
    // Directions in x_m that leave the arity-m output unchanged.
    lookback.clear();
    const QMatrix own = a.leftCols(static_cast<Eigen::Index>(unknowns.size()));
    const QMatrix kernel = nullspace(own);
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
      Cochain dir;
      for (size_t u = 0; u < unknowns.size(); ++u)
        dir.add(unknowns[u].first, unknowns[u].second, kernel(static_cast<Eigen::Index>(u), k));
      lookback.push_back(dir);
    }
  }
  HomotopyCertificate cert{f1, f2, x};
  if (!cert.verify()) return HomotopySearch{std::nullopt, n};
  return HomotopySearch{cert, 0};
}

SymElement divided_power(const SparseVector& v, int n, const Degrees& degrees) {
  std::vector<const SparseVector*> factors(static_cast<size_t>(n), &v);
  SymElement out = vector_product(factors, degrees);
  Rational fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (auto& [m, c] : out) c /= fact;
  return out;
}

SparseVector mc_curvature(const LInftyAlgebra& g, const SparseVector& gamma) {
  const Degrees s = g.shifted_degrees();
  SparseVector out;
  for (int k = 1; k <= g.truncation; ++k) axpy(out, Rational(1), g.structure.apply(divided_power(gamma, k, s)));
  return out;
}

namespace {

// −Σ_k 1/k! q_{k+1}(x·γ^k).
SparseVector element_field(const LInftyAlgebra& g, const Degrees& s, const SparseVector& gamma, const SparseVector& x) {
  SymElement xs;
  for (const auto& [i, c] : x) add_to(xs, {i}, c);
  SparseVector out;
  for (int k = 0; k < g.truncation; ++k) {
    SymElement power = k == 0 ? SymElement{{Monomial{}, Rational(1)}} : divided_power(gamma, k, s);
    axpy(out, Rational(-1), g.structure.apply(multiply(xs, power, s)));
  }
  return out;
}

}  // namespace

SparseVector mc_gauge(const LInftyAlgebra& g, const SparseVector& gamma, const SparseVector& x, int max_iterations) {
  const Degrees s = g.shifted_degrees();
  // γ(t) = Σ t^j coeff[j]; Picard: γ ← γ(0) + ∫ V(γ).
  std::vector<SparseVector> coeff{gamma};
  for (int iter = 0; iter < max_iterations; ++iter) {
    const int deg = static_cast<int>(coeff.size()) - 1;
    const int samples = std::max(1, (g.truncation - 1) * deg + 1);
    QMatrix vander(samples, samples);
    std::vector<SparseVector> values;
    for (int p = 0; p < samples; ++p) {
      SparseVector at;
      Rational power = 1;
      for (const auto& c : coeff) {
        axpy(at, power, c);
        power *= p;
      }
      values.push_back(element_field(g, s, at, x));
      Rational pw = 1;
      for (int j = 0; j < samples; ++j) {
        vander(p, j) = pw;
        pw *= p;
      }
    }
    const QMatrix inv = *inverse(vander);
    std::vector<SparseVector> next{gamma};
    for (int j = 0; j < samples; ++j) {
      SparseVector cj;
      for (int p = 0; p < samples; ++p) axpy(cj, inv(j, p), values[static_cast<size_t>(p)]);
      SparseVector integrated;
      axpy(integrated, Rational(1, j + 1), cj);
      next.push_back(integrated);
    }
    while (next.size() > 1 && next.back().empty()) next.pop_back();
    if (next == coeff) {
      SparseVector out;
      for (const auto& c : coeff) axpy(out, Rational(1), c);
      return out;
    }
    coeff = std::move(next);
  }
  throw Error(ErrorKind::NonNilpotent, "gauge flow did not stabilize");
}

Pushforward pushforward(const LInftyMorphism& u, const SparseVector& gamma, const SparseVector& x, int bound) {
  if (bound < 1) throw Error(ErrorKind::NonNilpotent, "bound must be positive");
  const Degrees s1 = u.source.shifted_degrees();
  for (const auto& [i, c] : gamma)
    if (s1[static_cast<size_t>(i)] != 0) throw Error(ErrorKind::DegreeMismatch, "gamma must have degree 1");
  for (const auto& [i, c] : x)
    if (s1[static_cast<size_t>(i)] != -1) throw Error(ErrorKind::DegreeMismatch, "x must have degree 0");
  if (!mc_curvature(u.source, gamma).empty()) throw Error(ErrorKind::NotAMorphism, "gamma is not a Maurer-Cartan element");
  SymElement xs;
  for (const auto& [i, c] : x) add_to(xs, {i}, c);
  Pushforward out;
  SparseVector last_gamma, last_x;
  for (int n = 1; n <= bound; ++n) {
    last_gamma = u.components.apply(divided_power(gamma, n, s1));
    axpy(out.gamma, Rational(1), last_gamma);
    const SymElement power = n == 1 ? SymElement{{Monomial{}, Rational(1)}} : divided_power(gamma, n - 1, s1);
    last_x = u.components.apply(multiply(xs, power, s1));
    axpy(out.x, Rational(1), last_x);
  }
  if (!last_gamma.empty() || !last_x.empty())
    throw Error(ErrorKind::NonNilpotent, "series has not terminated at the given bound");
  return out;
}

}  // namespace linf

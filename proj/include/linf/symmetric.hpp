#pragma once

// Sparse elements of the graded symmetric coalgebra S(V), V = g[1].
//
// A Monomial is a nondecreasing list of basis indices; an index of odd
// shifted degree appears at most once. Every sign in the library comes from
// normalize()/block_sign(), i.e. from the Koszul rule on shifted degrees.

#include "linf/rational.hpp"

#include <map>
#include <span>
#include <vector>

namespace linf {

using Monomial = std::vector<int>;
using SparseVector = std::map<int, Rational>;
using SymElement = std::map<Monomial, Rational>;
// Shifted degree of each basis index.
using Degrees = std::vector<int>;

void add_to(SparseVector& acc, int index, const Rational& coeff);
void axpy(SparseVector& acc, const Rational& coeff, const SparseVector& v);
void add_to(SymElement& acc, const Monomial& m, const Rational& coeff);
void axpy(SymElement& acc, const Rational& coeff, const SymElement& v);

int monomial_degree(const Monomial& m, const Degrees& degrees);

// Sorts a word into a monomial; returns the Koszul sign, or 0 when the word
// vanishes in S(V) (a repeated odd letter).
int normalize(Monomial& word, const Degrees& degrees);

SymElement multiply(const SymElement& a, const SymElement& b, const Degrees& degrees);
// v_1 · v_2 ··· v_k in S(V), factors taken in the given order.
SymElement vector_product(std::span<const SparseVector* const> factors, const Degrees& degrees);

std::vector<Monomial> symmetric_basis(const Degrees& degrees, int arity);
std::vector<Monomial> symmetric_basis_upto(const Degrees& degrees, int max_arity);

using Block = std::vector<int>;
using Partition = std::vector<Block>;

// Set partitions of {0..n-1}; each block increasing, blocks ordered by their
// least element.
const std::vector<Partition>& set_partitions(int n);

Monomial sub_monomial(const Monomial& m, const Block& positions);

// Koszul sign of rearranging the letters of m into the concatenation of the
// given position blocks.
int block_sign(const Monomial& m, std::span<const Block> blocks, const Degrees& degrees);

struct CoproductTerm {
  Rational coeff;
  Monomial left;
  Monomial right;
};

// Reduced unshuffle coproduct: both tensor factors nonempty.
std::vector<CoproductTerm> reduced_coproduct(const Monomial& m, const Degrees& degrees);

// Homogeneous linear map S^+(V1) -> V2, stored on the monomial basis.
// Zero coefficients and empty values are never stored.
class Cochain {
 public:
  using Map = std::map<Monomial, SparseVector>;

  Cochain() = default;

  const Map& values() const { return values_; }
  bool empty() const { return values_.empty(); }

  const SparseVector* find(const Monomial& m) const;
  void add(const Monomial& m, int index, const Rational& coeff);
  void add(const Monomial& m, const SparseVector& v, const Rational& scale = Rational(1));
  void set(const Monomial& m, const SparseVector& v);
  void erase(const Monomial& m) { values_.erase(m); }

  // Linear extension to elements of S(V1).
  SparseVector apply(const SymElement& s) const;

  Cochain arities(int lo, int hi) const;
  int max_arity() const;

  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  Cochain& operator*=(const Rational& scale);

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Rational& s, Cochain a) { return a *= s; }
  friend Cochain operator-(Cochain a) { return a *= Rational(-1); }
  friend bool operator==(const Cochain& a, const Cochain& b) { return a.values_ == b.values_; }

 private:
  Map values_;
};

SparseVector apply_matrix(const QMatrix& matrix, const SparseVector& v);

// Post-composition with a matrix acting on the target coordinates.
Cochain postcompose(const QMatrix& matrix, const Cochain& c);

}  // namespace linf

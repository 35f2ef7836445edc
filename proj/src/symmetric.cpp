#include "linf/symmetric.hpp"

#include <mutex>

namespace linf {

void add_to(SparseVector& acc, int index, const Rational& coeff) {
  if (is_zero(coeff)) return;
  auto [it, inserted] = acc.try_emplace(index, coeff);
  if (!inserted) {
    it->second += coeff;
    if (is_zero(it->second)) acc.erase(it);
  }
}

void axpy(SparseVector& acc, const Rational& coeff, const SparseVector& v) {
  if (is_zero(coeff)) return;
  for (const auto& [i, c] : v) add_to(acc, i, coeff * c);
}

void add_to(SymElement& acc, const Monomial& m, const Rational& coeff) {
  if (is_zero(coeff)) return;
  auto [it, inserted] = acc.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (is_zero(it->second)) acc.erase(it);
  }
}

void axpy(SymElement& acc, const Rational& coeff, const SymElement& v) {
  if (is_zero(coeff)) return;
  for (const auto& [m, c] : v) add_to(acc, m, coeff * c);
}

int monomial_degree(const Monomial& m, const Degrees& degrees) {
  int total = 0;
  for (int i : m) total += degrees[static_cast<size_t>(i)];
  return total;
}

int normalize(Monomial& word, const Degrees& degrees) {
  int sign = 1;
  for (size_t a = 1; a < word.size(); ++a) {
    for (size_t b = a; b > 0 && word[b - 1] > word[b]; --b) {
      if ((degrees[static_cast<size_t>(word[b - 1])] * degrees[static_cast<size_t>(word[b])]) % 2 != 0) sign = -sign;
      std::swap(word[b - 1], word[b]);
    }
  }
  for (size_t a = 1; a < word.size(); ++a) {
    if (word[a] == word[a - 1] && degrees[static_cast<size_t>(word[a])] % 2 != 0) return 0;
  }
  return sign;
}

SymElement multiply(const SymElement& a, const SymElement& b, const Degrees& degrees) {
  SymElement out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial w = ma;
      w.insert(w.end(), mb.begin(), mb.end());
      const int s = normalize(w, degrees);
      if (s != 0) add_to(out, w, s > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  }
  return out;
}

SymElement vector_product(std::span<const SparseVector* const> factors, const Degrees& degrees) {
  SymElement acc;
  acc[{}] = 1;
  for (const SparseVector* v : factors) {
    SymElement next;
    for (const auto& [m, c] : acc) {
      for (const auto& [i, ci] : *v) {
        Monomial w = m;
        w.push_back(i);
        const int s = normalize(w, degrees);
        if (s != 0) add_to(next, w, s > 0 ? Rational(c * ci) : Rational(-(c * ci)));
      }
    }
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

namespace {

void extend_basis(const Degrees& degrees, int remaining, int start, Monomial& cur, std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < static_cast<int>(degrees.size()); ++i) {
    if (!cur.empty() && cur.back() == i && degrees[static_cast<size_t>(i)] % 2 != 0) continue;
    cur.push_back(i);
    extend_basis(degrees, remaining - 1, i, cur, out);
    cur.pop_back();
  }
}

void extend_partitions(int n, int next, Partition& cur, std::vector<Partition>& out) {
  if (next == n) {
    out.push_back(cur);
    return;
  }
  for (size_t b = 0; b < cur.size(); ++b) {
    cur[b].push_back(next);
    extend_partitions(n, next + 1, cur, out);
    cur[b].pop_back();
  }
  cur.push_back({next});
  extend_partitions(n, next + 1, cur, out);
  cur.pop_back();
}

}  // namespace

std::vector<Monomial> symmetric_basis(const Degrees& degrees, int arity) {
  std::vector<Monomial> out;
  Monomial cur;
  if (arity >= 1) extend_basis(degrees, arity, 0, cur, out);
  return out;
}

std::vector<Monomial> symmetric_basis_upto(const Degrees& degrees, int max_arity) {
  std::vector<Monomial> out;
  for (int k = 1; k <= max_arity; ++k) {
    auto part = symmetric_basis(degrees, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

const std::vector<Partition>& set_partitions(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<Partition>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Partition> out;
  Partition cur;
  if (n > 0) extend_partitions(n, 0, cur, out);
  return cache.emplace(n, std::move(out)).first->second;
}

Monomial sub_monomial(const Monomial& m, const Block& positions) {
  Monomial out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(m[static_cast<size_t>(p)]);
  return out;
}

int block_sign(const Monomial& m, std::span<const Block> blocks, const Degrees& degrees) {
  std::vector<int> order;
  for (const auto& b : blocks) order.insert(order.end(), b.begin(), b.end());
  int sign = 1;
  for (size_t a = 0; a < order.size(); ++a)
    for (size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b] &&
          (degrees[static_cast<size_t>(m[static_cast<size_t>(order[a])])] *
           degrees[static_cast<size_t>(m[static_cast<size_t>(order[b])])]) % 2 != 0)
        sign = -sign;
  return sign;
}

std::vector<CoproductTerm> reduced_coproduct(const Monomial& m, const Degrees& degrees) {
  const int n = static_cast<int>(m.size());
  std::map<std::pair<Monomial, Monomial>, Rational> acc;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Block left, right;
    for (int p = 0; p < n; ++p) ((mask >> p) & 1u ? left : right).push_back(p);
    const Block blocks[2] = {left, right};
    const int s = block_sign(m, blocks, degrees);
    auto& slot = acc[{sub_monomial(m, left), sub_monomial(m, right)}];
    slot += s;
  }
  std::vector<CoproductTerm> out;
  for (auto& [key, c] : acc)
    if (!is_zero(c)) out.push_back({c, key.first, key.second});
  return out;
}

const SparseVector* Cochain::find(const Monomial& m) const {
  auto it = values_.find(m);
  return it == values_.end() ? nullptr : &it->second;
}

void Cochain::add(const Monomial& m, int index, const Rational& coeff) {
  if (is_zero(coeff)) return;
  auto& v = values_[m];
  add_to(v, index, coeff);
  if (v.empty()) values_.erase(m);
}

void Cochain::add(const Monomial& m, const SparseVector& v, const Rational& scale) {
  if (is_zero(scale) || v.empty()) return;
  auto& slot = values_[m];
  axpy(slot, scale, v);
  if (slot.empty()) values_.erase(m);
}

void Cochain::set(const Monomial& m, const SparseVector& v) {
  if (v.empty()) {
    values_.erase(m);
  } else {
    values_[m] = v;
  }
}

SparseVector Cochain::apply(const SymElement& s) const {
  SparseVector out;
  for (const auto& [m, c] : s) {
    if (const auto* v = find(m)) axpy(out, c, *v);
  }
  return out;
}

Cochain Cochain::arities(int lo, int hi) const {
  Cochain out;
  for (const auto& [m, v] : values_) {
    const int k = static_cast<int>(m.size());
    if (k >= lo && k <= hi) out.values_.emplace(m, v);
  }
  return out;
}

int Cochain::max_arity() const {
  int k = 0;
  for (const auto& [m, v] : values_) k = std::max(k, static_cast<int>(m.size()));
  return k;
}

Cochain& Cochain::operator+=(const Cochain& other) {
  for (const auto& [m, v] : other.values_) add(m, v);
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
  for (const auto& [m, v] : other.values_) add(m, v, Rational(-1));
  return *this;
}

Cochain& Cochain::operator*=(const Rational& scale) {
  if (is_zero(scale)) {
    values_.clear();
    return *this;
  }
  for (auto& [m, v] : values_)
    for (auto& [i, c] : v) c *= scale;
  return *this;
}

SparseVector apply_matrix(const QMatrix& matrix, const SparseVector& v) {
  SparseVector image;
  for (const auto& [i, coeff] : v)
    for (Eigen::Index r = 0; r < matrix.rows(); ++r)
      if (!is_zero(matrix(r, i))) add_to(image, static_cast<int>(r), coeff * matrix(r, i));
  return image;
}

Cochain postcompose(const QMatrix& matrix, const Cochain& c) {
  Cochain out;
  for (const auto& [m, v] : c.values()) out.set(m, apply_matrix(matrix, v));
  return out;
}

}  // namespace linf

#pragma once

// Baker–Campbell–Hausdorff series log(e^X e^Y) through a given bracket
// depth, by the Varadarajan recursion
//   (n+1) Z_{n+1} = ½[X−Y, Z_n]
//                   + Σ_p B_{2p}/(2p)! Σ_{k_1+..+k_{2p}=n} [Z_{k_1},[..,[Z_{k_{2p}}, X+Y]..]].
// T needs +, − and Rational * T; bracket(a, b) returns [a, b].

#include "linf/rational.hpp"

#include <vector>

namespace linf {

// B_0, B_1, ..., B_n.
std::vector<Rational> bernoulli_numbers(int n);

namespace detail {

template <typename T, typename Bracket>
void nested_sum(const std::vector<T>& z, int remaining, int slots, const T& inner, const Bracket& bracket,
                T& acc, bool& has) {
  if (slots == 0) {
    if (remaining != 0) return;
    acc = has ? acc + inner : inner;
    has = true;
    return;
  }
  for (int k = 1; k <= remaining - (slots - 1); ++k)
    nested_sum(z, remaining - k, slots - 1, bracket(z[static_cast<size_t>(k)], inner), bracket, acc, has);
}

}  // namespace detail

template <typename T, typename Bracket>
T bch_series(const T& x, const T& y, int depth, const Bracket& bracket) {
  const auto bern = bernoulli_numbers(depth + 1);
  std::vector<T> z(static_cast<size_t>(depth) + 1, Rational(0) * x);
  z[1] = x + y;
  const T diff = x - y;
  const T sum = x + y;
  std::vector<Rational> fact{1};
  for (int i = 1; i <= depth + 1; ++i) fact.push_back(fact.back() * i);
  for (int n = 1; n < depth; ++n) {
    T next = Rational(1, 2) * bracket(diff, z[static_cast<size_t>(n)]);
    for (int p = 1; 2 * p <= n; ++p) {
      const Rational coeff = bern[static_cast<size_t>(2 * p)] / fact[static_cast<size_t>(2 * p)];
      // Innermost bracket is with X+Y; slots are filled from the inside out,
      // which enumerates the same compositions of n.
      T acc = Rational(0) * x;
      bool has = false;
      detail::nested_sum(z, n, 2 * p, sum, bracket, acc, has);
      if (has) next = next + coeff * acc;
    }
    z[static_cast<size_t>(n) + 1] = Rational(1, n + 1) * next;
  }
  T out = z[1];
  for (int n = 2; n <= depth; ++n) out = out + z[static_cast<size_t>(n)];
  return out;
}

}  // namespace linf

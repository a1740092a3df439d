#pragma once
// Shared oracles and generators for the test binaries.

#include <random>
#include <vector>

#include "monoflag/exact.hpp"
#include "monoflag/flags.hpp"
#include "monoflag/multipoly.hpp"
#include "monoflag/word.hpp"

namespace testing_support {

using namespace monoflag;

inline Word random_word(std::mt19937_64& rng, std::size_t n, std::uint32_t s) {
  std::uniform_int_distribution<Letter> letter(0, s - 1);
  std::vector<Letter> w(n);
  for (auto& c : w) c = letter(rng);
  return Word(w, s);
}

// Monotone k-subsets counted by visiting every subset.
inline BigInt brute_monotone(const Word& w, std::size_t k) {
  const std::size_t n = w.size();
  if (k > n) return 0;
  BigInt total = 0;
  std::vector<std::size_t> pick(k);
  auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    if (depth == k) {
      bool up = true, down = true;
      for (std::size_t i = 1; i < k; ++i) {
        if (w.letters()[pick[i - 1]] > w.letters()[pick[i]]) up = false;
        if (w.letters()[pick[i - 1]] < w.letters()[pick[i]]) down = false;
      }
      if (up || down) ++total;
      return;
    }
    for (std::size_t p = from; p < n; ++p) {
      pick[depth] = p;
      self(self, depth + 1, p + 1);
    }
  };
  rec(rec, 0, 0);
  return total;
}

struct Term {
  Rational c;
  Exponents e;
};

inline MultiPoly poly(std::size_t vars, const std::vector<Term>& terms) {
  MultiPoly p(vars);
  for (const auto& t : terms) p.add_term(t.e, t.c);
  return p;
}

// Closed forms of h_3 .. h_7 as printed in the source text.
inline MultiPoly closed_form_h(std::uint32_t s) {
  const Rational h(3, 2), q(3, 4);
  switch (s) {
    case 3:
      return poly(1, {{q, {0}}, {-h, {1}}, {3, {2}}, {2, {3}}});
    case 4:
      return poly(1, {{3, {3}}, {h, {2}}, {-h, {1}}, {q, {0}}});
    case 5:
      return poly(2, {{2, {3, 0}}, {6, {2, 1}}, {3, {2, 0}}, {9, {1, 2}}, {-h, {1, 0}}, {3, {0, 3}}, {h, {0, 2}},
                      {-h, {0, 1}}, {q, {0, 0}}});
    case 6:
      return poly(2, {{3, {3, 0}}, {3, {0, 3}}, {6, {2, 1}}, {9, {1, 2}}, {h, {2, 0}}, {h, {0, 2}}, {-h, {1, 0}},
                      {-h, {0, 1}}, {q, {0, 0}}});
    case 7:
      return poly(3, {{q, {0, 0, 0}}, {-h, {1, 0, 0}}, {3, {2, 0, 0}}, {2, {3, 0, 0}}, {-h, {0, 1, 0}},
                      {6, {2, 1, 0}}, {h, {0, 2, 0}}, {9, {1, 2, 0}}, {3, {0, 3, 0}}, {-h, {0, 0, 1}},
                      {6, {2, 0, 1}}, {12, {1, 1, 1}}, {6, {0, 2, 1}}, {h, {0, 0, 2}}, {9, {1, 0, 2}},
                      {9, {0, 1, 2}}, {3, {0, 0, 3}}});
    default:
      return MultiPoly(0);
  }
}

// Dense row-major R R^T with small integer R, so the result is PSD exactly.
inline std::vector<Rational> random_psd(std::mt19937_64& rng, std::size_t n, std::size_t rank, int spread = 3) {
  std::uniform_int_distribution<int> entry(-spread, spread);
  std::vector<Rational> r(n * rank);
  for (auto& v : r) v = entry(rng);
  std::vector<Rational> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < rank; ++t) out[i * n + j] += r[i * rank + t] * r[j * rank + t];
  return out;
}

// Independent (U, U') draws: sum Q[u,v] p(F_u; K) p(F_v; K) = p^T Q p.
inline Rational independent_form(const FlagIndex& fi, const std::vector<Rational>& q, const Flag& k) {
  const std::size_t t = fi.size();
  std::vector<Rational> p(t);
  for (std::size_t u = 0; u < t; ++u) p[u] = flag_density(fi.flags()[u], k, fi.spec().type);
  Rational out;
  for (std::size_t u = 0; u < t; ++u)
    for (std::size_t v = 0; v < t; ++v) out += q[u * t + v] * p[u] * p[v];
  return out;
}

// Finite-host floor for the disjoint-pair form of a PSD Q. With pi the chance
// that two independent extension sets meet, the independent form (>= 0) mixes
// disjoint and overlapping pairs, so the disjoint one is >= -pi/(1-pi) max|Q|.
inline Rational psd_form_floor(const FlagIndex& fi, const std::vector<Rational>& q, std::size_t host_order) {
  const std::size_t h = fi.spec().type.size(), e = fi.spec().flag_order - h, r = host_order - h;
  BigInt all, apart;
  mpz_bin_uiui(all.get_mpz_t(), r, e);
  mpz_bin_uiui(apart.get_mpz_t(), r - e, e);
  Rational worst;
  for (const auto& v : q) worst = std::max<Rational>(worst, abs(v));
  return -make_rational(all - apart, apart) * worst;
}

}  // namespace testing_support

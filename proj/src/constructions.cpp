#include "monoflag/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace monoflag {

Word alternating_word(std::size_t n) {
  std::vector<Letter> letters(n);
  for (std::size_t i = 0; i < n; ++i) letters[i] = static_cast<Letter>(i % 2);
  return Word(std::move(letters), 2);
}

Word proper_form_word(std::size_t n, std::size_t y) {
  if (n % 2 == 0) throw std::invalid_argument("proper form requires odd n");
  if (2 * y >= n) throw std::invalid_argument("proper form requires y < n/2");
  std::vector<Letter> letters(n, 1);
  for (std::size_t i = y; i < n - y; ++i) letters[i] = ((i - y) % 2 == 0) ? 0 : 2;
  return Word(std::move(letters), 3);
}

std::size_t folded_arity(std::uint32_t s) { return (s - 1) / 2; }

Word folded_word(std::uint32_t s, std::span<const Rational> x, std::size_t n) {
  if (s < 3) throw std::invalid_argument("folded forms need s >= 3");
  const std::size_t r = folded_arity(s);
  if (x.size() != r)
    throw std::invalid_argument("folded form for s = " + std::to_string(s) + " takes " + std::to_string(r) +
                                " parameters, got " + std::to_string(x.size()));
  Rational sum;
  for (const auto& xi : x) {
    if (xi < 0) throw std::invalid_argument("folded form parameters must be nonnegative");
    sum += xi;
  }
  if (sum > Rational(1, 2)) throw std::invalid_argument("folded form parameters must sum to at most 1/2");

  const bool odd = s % 2 == 1;
  const Letter mid = (s - 1) / 2;
  // pair(i) for 1-based block index i; lo == hi marks the constant block.
  auto pair = [&](std::size_t i) -> std::pair<Letter, Letter> {
    if (odd) {
      if (i == 1) return {mid, mid};
      return {mid - static_cast<Letter>(i - 1), mid + static_cast<Letter>(i - 1)};
    }
    return {static_cast<Letter>(s / 2 - i), static_cast<Letter>(s / 2 - 1 + i)};
  };

  std::vector<Letter> left;
  left.reserve(n / 2 + 1);
  bool high = odd;  // phase of the next letter in an alternating block
  bool any_alternating = false;
  for (std::size_t i = 1; i <= r; ++i) {
    Rational scaled = x[i - 1] * Rational(static_cast<unsigned long>(n));
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    const std::size_t len = fl.get_ui();
    auto [lo, hi] = pair(i);
    bool phase = odd;
    for (std::size_t j = 0; j < len; ++j) {
      left.push_back(phase ? hi : lo);
      if (lo != hi) {
        high = phase;
        any_alternating = true;
        phase = !phase;
      }
    }
  }
  const std::size_t side = left.size();
  const std::size_t centre = n - 2 * side;
  // left half of the centre, including the middle position for odd length
  bool phase = any_alternating ? high : false;
  const Letter top = s - 1;
  for (std::size_t j = 0; j < (centre + 1) / 2; ++j) {
    left.push_back(phase ? top : 0);
    phase = !phase;
  }
  std::vector<Letter> letters(left);
  const std::size_t mirror_from = (n % 2 == 1) ? left.size() - 1 : left.size();
  for (std::size_t j = mirror_from; j-- > 0;) letters.push_back(left[j]);
  return Word(std::move(letters), s);
}

Word bucketed_word(std::span<const std::size_t> pi, std::uint32_t s) {
  const std::size_t n = pi.size();
  if (s == 0 || n % s != 0) throw std::invalid_argument("bucketing requires s to divide n");
  std::vector<bool> seen(n + 1, false);
  for (std::size_t v : pi) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of [n]");
    seen[v] = true;
  }
  const std::size_t width = n / s;
  std::vector<Letter> letters;
  letters.reserve(n);
  // pi(i) in (l*width, (l+1)*width]  <=>  l = (pi(i) - 1) / width
  for (std::size_t v : pi) letters.push_back(static_cast<Letter>((v - 1) / width));
  return Word(std::move(letters), s);
}

BigInt count_monotone_permutation(std::span<const std::size_t> pi, std::size_t k) {
  std::vector<Letter> letters;
  letters.reserve(pi.size());
  for (std::size_t v : pi) letters.push_back(static_cast<Letter>(v - 1));
  Word w(std::move(letters), static_cast<std::uint32_t>(std::max<std::size_t>(1, pi.size())));
  return count_monotone(w, k).total;
}

PermutationMin min_monotone_permutation(std::size_t n, std::size_t k, std::size_t cap) {
  if (n > cap)
    throw std::invalid_argument("exhaustive permutation search capped at n = " + std::to_string(cap));
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 1);
  PermutationMin best{pi, count_monotone_permutation(pi, k)};
  while (std::next_permutation(pi.begin(), pi.end())) {
    BigInt c = count_monotone_permutation(pi, k);
    if (c < best.count) best = {pi, c};
  }
  return best;
}

}  // namespace monoflag

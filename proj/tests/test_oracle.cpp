#include <gtest/gtest.h>

#include "monoflag/constructions.hpp"
#include "monoflag/hs_poly.hpp"
#include "monoflag/oracle.hpp"
#include "support.hpp"

using namespace monoflag;

namespace {

// Plain enumeration of all s^n words.
std::pair<BigInt, std::set<std::string>> exhaustive(std::uint32_t s, std::size_t k, std::size_t n) {
  std::vector<Letter> w(n, 0);
  BigInt best = -1;
  std::set<std::string> words;
  while (true) {
    const Word word(w, s);
    const BigInt c = count_monotone(word, k).total;
    if (best < 0 || c < best) {
      best = c;
      words.clear();
    }
    if (c == best) words.insert(normalize_pattern(word).str());
    std::size_t i = 0;
    while (i < n && w[i] == s - 1) w[i++] = 0;
    if (i == n) break;
    ++w[i];
  }
  return {best, words};
}

}  // namespace

TEST(Brute, Examples) {
  const BruteResult r = brute_min(2, 3, 5);
  EXPECT_EQ(r.min_count, 5);
  std::vector<std::string> words;
  for (const auto& w : r.minimizers) words.push_back(w.str());
  EXPECT_EQ(words, (std::vector<std::string>{"01010", "10101"}));
  EXPECT_EQ(f_skn(2, 3, 5), Rational(1, 2));
  for (std::uint32_t s = 1; s <= 4; ++s)
    for (std::size_t n = 2; n <= 7; ++n) EXPECT_EQ(brute_min(s, 2, n).min_count, binomial(n, 2));
}

TEST(Brute, AgreesWithPlainEnumeration) {
  for (std::uint32_t s = 1; s <= 4; ++s)
    for (std::size_t n = 1; n <= 7; ++n)
      for (std::size_t k = 1; k <= std::min<std::size_t>(n, 4); ++k) {
        const auto [best, words] = exhaustive(s, k, n);
        const BruteResult r = brute_min(s, k, n);
        ASSERT_EQ(r.min_count, best) << s << " " << k << " " << n;
        std::set<std::string> got;
        for (const auto& w : r.minimizers) got.insert(w.str());
        ASSERT_EQ(got, words) << s << " " << k << " " << n;
      }
}

TEST(Brute, ThreadCountDoesNotMatter) {
  const BruteResult a = brute_min(4, 3, 9, {.guard = 2e7, .threads = 1});
  const BruteResult b = brute_min(4, 3, 9, {.guard = 2e7, .threads = 3});
  EXPECT_EQ(a.min_count, b.min_count);
  EXPECT_EQ(a.minimizers, b.minimizers);
}

TEST(Brute, Guard) {
  EXPECT_THROW(brute_min(6, 3, 12), std::invalid_argument);
  EXPECT_THROW(brute_min(3, 3, 9, {.guard = 100, .threads = 1}), std::invalid_argument);
  EXPECT_THROW(brute_min(2, 4, 3), std::invalid_argument);
  EXPECT_NO_THROW(brute_min(6, 3, 9));
  EXPECT_EQ(normalized_word_count(4, 12), BigInt("15199275"));
}

TEST(Brute, ProperFormTernary) {
  const BruteResult r = brute_min(3, 3, 5);
  bool proper = false;
  for (const auto& w : r.minimizers) proper |= w.str() == proper_form_word(5, 1).str();
  EXPECT_TRUE(proper);
}

TEST(Fskn, BinaryTripleSequence) {
  Rational prev = 0;
  for (std::size_t n = 3; n <= 12; ++n) {
    const Rational f = f_skn(2, 3, n);
    EXPECT_GE(f, prev) << n;
    EXPECT_LE(f, Rational(3, 4));
    prev = f;
  }
}

TEST(Fskn, NonIncreasingInAlphabet) {
  for (std::size_t n = 3; n <= 8; ++n)
    for (std::size_t k = 3; k <= 4 && k <= n; ++k) {
      Rational prev = 2;
      for (std::uint32_t s = 1; s <= 6; ++s) {
        const Rational f = f_skn(s, k, n);
        EXPECT_LE(f, prev);
        prev = f;
      }
    }
}

TEST(Fskn, ConstructionNeverBeatsMinimum) {
  for (std::uint32_t s = 3; s <= 5; ++s) {
    const SimplexMin m = minimize_simplex(generate_hs(s));
    std::vector<Rational> x;
    for (double v : m.point) x.push_back(make_rational(static_cast<long>(std::llround(v * 1e6)), 1000000L));
    for (std::size_t n = 3; n <= 9; ++n) EXPECT_LE(f_skn(s, 3, n), monotone_density(folded_word(s, x, n), 3)) << s << " " << n;
  }
}

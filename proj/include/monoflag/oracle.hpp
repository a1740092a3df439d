#pragma once

#include <cstdint>
#include <vector>

#include "monoflag/exact.hpp"
#include "monoflag/word.hpp"

namespace monoflag {

struct BruteResult {
  BigInt min_count;
  std::vector<Word> minimizers;  // normalized, lexicographic order
};

struct BruteOptions {
  double guard = 2e7;  // max normalized candidates
  unsigned threads = 1;
};

// Number of n-words whose letter set is exactly {0..t-1} for some t <= s.
BigInt normalized_word_count(std::uint32_t s, std::size_t n);

// Minimum of m(k, w) over all n-words over an s-letter alphabet, with every
// normalized minimizer.
BruteResult brute_min(std::uint32_t s, std::size_t k, std::size_t n, const BruteOptions& options = {});

// f(s,k,n) = min m(k,w) / C(n,k).
Rational f_skn(std::uint32_t s, std::size_t k, std::size_t n, const BruteOptions& options = {});

}  // namespace monoflag

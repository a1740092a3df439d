#pragma once

#include "monoflag/exact.hpp"
#include "monoflag/word.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace monoflag {

/// 0101... of length n.
Word alternating_word(std::size_t n);

/// w(n,y) = 1^y 0202...20 1^y over a ternary alphabet; n odd, 2y < n.
Word proper_form_word(std::size_t n, std::size_t y);

/// A palindromic member of the folded family F_s(x) with block lengths floor(x_i n).
///
/// Even s: block i is (s/2-i, s/2-1+i)-alternating. Odd s: block 1 is the
/// constant letter (s-1)/2 and block i >= 2 is ((s-1)/2-(i-1), (s-1)/2+(i-1))-alternating.
/// The centre takes the remaining positions and is (0, s-1)-alternating.
///
/// The left half is written left to right and mirrored. Side blocks start on
/// their smaller letter for even s and on their larger letter for odd s; the
/// centre starts on the same side as the last side-block letter (smaller side
/// when there is no alternating side block). Flooring remainders land in the centre.
Word folded_word(std::uint32_t s, std::span<const Rational> x, std::size_t n);

/// Number of block variables of the folded family, floor((s-1)/2).
std::size_t folded_arity(std::uint32_t s);

/// w_i = l where pi(i) lies in (l n/s, (l+1) n/s]. pi is one-line notation over 1..n.
Word bucketed_word(std::span<const std::size_t> pi, std::uint32_t s);

struct PermutationMin {
  std::vector<std::size_t> permutation;  // one-line notation, values 1..n
  BigInt count;                          // monotone k-subsequences
};

/// Exhaustive search for a permutation of [n] with the fewest monotone
/// k-subsequences; lexicographically first on ties. n <= cap.
PermutationMin min_monotone_permutation(std::size_t n, std::size_t k, std::size_t cap = 10);

/// Monotone k-subsequence count of a permutation (values 1..n).
BigInt count_monotone_permutation(std::span<const std::size_t> pi, std::size_t k);

}  // namespace monoflag

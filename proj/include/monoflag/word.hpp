#pragma once

#include "monoflag/exact.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monoflag {

using Letter = std::uint32_t;

/// A finite word over the ordered alphabet {0, ..., alphabet_size - 1}.
///
/// Positions are 1-based in every public accessor that takes a position, and
/// in every serialized form. The empty word is allowed.
class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters, std::uint32_t alphabet_size);
  Word(std::initializer_list<Letter> letters, std::uint32_t alphabet_size)
      : Word(std::vector<Letter>(letters), alphabet_size) {}

  /// Smallest alphabet that holds every letter (at least 1).
  static Word with_minimal_alphabet(std::vector<Letter> letters);

  /// Parses "01010" (one digit per letter) or "3,11,0" (comma separated).
  /// With alphabet_size == 0 the minimal alphabet is used.
  static Word parse(std::string_view text, std::uint32_t alphabet_size = 0);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::span<const Letter> letters() const { return letters_; }

  /// 1-based access.
  Letter at(std::size_t position) const;
  Letter operator[](std::size_t index0) const { return letters_[index0]; }

  /// Digits for alphabets of size <= 10, comma separated naturals otherwise.
  std::string str() const;

  Word reversed() const;
  /// Maps every letter l to s - 1 - l.
  Word complemented() const;
  bool is_palindrome() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

 private:
  std::vector<Letter> letters_;
  std::uint32_t alphabet_size_ = 1;
};

/// Monotone k-subword counts. A constant subword is both non-decreasing and
/// non-increasing, so total = nondecreasing + nonincreasing - constant.
struct MonotoneCount {
  BigInt nondecreasing;
  BigInt nonincreasing;
  BigInt constant;
  BigInt total;
};

/// Counts monotone k-subwords by dynamic programming in O(n * s * k).
MonotoneCount count_monotone(const Word& w, std::size_t k);

/// m(k,w) / C(n,k); rejects k > n.
Rational monotone_density(const Word& w, std::size_t k);

/// Occurrences of `letter` strictly before (after) 1-based position t.
std::size_t q_less(Letter letter, std::size_t t, const Word& w);
std::size_t q_greater(Letter letter, std::size_t t, const Word& w);

/// Replaces each letter by its rank among the distinct letters of w.
Word normalize_pattern(const Word& w);

/// m(k,w) - m(k,w*) where w* swaps positions t-1 and t of a binary word,
/// evaluated with the closed-form binomial sum over the position counters.
BigInt binary_flip_delta(const Word& w, std::size_t t, std::size_t k);

}  // namespace monoflag

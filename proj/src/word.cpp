#include "monoflag/word.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace monoflag {

Word::Word(std::vector<Letter> letters, std::uint32_t alphabet_size)
    : letters_(std::move(letters)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ == 0) throw std::invalid_argument("alphabet size must be at least 1");
  for (Letter l : letters_)
    if (l >= alphabet_size_)
      throw std::invalid_argument("letter " + std::to_string(l) + " outside alphabet of size " +
                                  std::to_string(alphabet_size_));
}

Word Word::with_minimal_alphabet(std::vector<Letter> letters) {
  Letter top = 0;
  for (Letter l : letters) top = std::max(top, l);
  return Word(std::move(letters), top + 1);
}

Word Word::parse(std::string_view text, std::uint32_t alphabet_size) {
  std::vector<Letter> letters;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      auto piece = text.substr(start, end - start);
      Letter value = 0;
      auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
      if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty())
        throw std::invalid_argument("malformed word: " + std::string(text));
      letters.push_back(value);
      start = end + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed word: " + std::string(text));
      letters.push_back(static_cast<Letter>(c - '0'));
    }
  }
  if (alphabet_size == 0) return with_minimal_alphabet(std::move(letters));
  return Word(std::move(letters), alphabet_size);
}

Letter Word::at(std::size_t position) const {
  if (position < 1 || position > letters_.size())
    throw std::out_of_range("position " + std::to_string(position) + " outside word of length " +
                            std::to_string(letters_.size()));
  return letters_[position - 1];
}

std::string Word::str() const {
  std::string out;
  if (alphabet_size_ <= 10) {
    for (Letter l : letters_) out.push_back(static_cast<char>('0' + l));
    return out;
  }
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word Word::reversed() const {
  std::vector<Letter> r(letters_.rbegin(), letters_.rend());
  return Word(std::move(r), alphabet_size_);
}

Word Word::complemented() const {
  std::vector<Letter> r(letters_);
  for (Letter& l : r) l = alphabet_size_ - 1 - l;
  return Word(std::move(r), alphabet_size_);
}

bool Word::is_palindrome() const { return std::equal(letters_.begin(), letters_.end(), letters_.rbegin()); }

namespace {

// Number of non-decreasing k-subwords; the non-increasing count is obtained on the complement.
BigInt count_nondecreasing(std::span<const Letter> letters, std::uint32_t s, std::size_t k) {
  // ending[len][c]: non-decreasing subwords of length len (1..k) ending with letter c.
  std::vector<std::vector<BigInt>> ending(k + 1, std::vector<BigInt>(s));
  BigInt prefix;
  for (Letter c : letters) {
    for (std::size_t len = k; len >= 2; --len) {
      prefix = 0;
      for (Letter a = 0; a <= c; ++a) prefix += ending[len - 1][a];
      ending[len][c] += prefix;
    }
    ending[1][c] += 1;
  }
  BigInt total;
  for (const auto& v : ending[k]) total += v;
  return total;
}

}  // namespace

MonotoneCount count_monotone(const Word& w, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  MonotoneCount out;
  const std::uint32_t s = w.alphabet_size();
  out.nondecreasing = count_nondecreasing(w.letters(), s, k);
  out.nonincreasing = count_nondecreasing(w.complemented().letters(), s, k);
  std::vector<std::size_t> occurrences(s, 0);
  for (Letter l : w.letters()) ++occurrences[l];
  for (std::size_t c : occurrences) out.constant += binomial(c, k);
  out.total = out.nondecreasing + out.nonincreasing - out.constant;
  return out;
}

Rational monotone_density(const Word& w, std::size_t k) {
  if (k > w.size())
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds word length " + std::to_string(w.size()));
  return make_rational(count_monotone(w, k).total, binomial(w.size(), k));
}

std::size_t q_less(Letter letter, std::size_t t, const Word& w) {
  if (t < 1 || t > w.size()) throw std::out_of_range("position " + std::to_string(t) + " out of range");
  auto letters = w.letters();
  return static_cast<std::size_t>(std::count(letters.begin(), letters.begin() + static_cast<long>(t - 1), letter));
}

std::size_t q_greater(Letter letter, std::size_t t, const Word& w) {
  if (t < 1 || t > w.size()) throw std::out_of_range("position " + std::to_string(t) + " out of range");
  auto letters = w.letters();
  return static_cast<std::size_t>(std::count(letters.begin() + static_cast<long>(t), letters.end(), letter));
}

Word normalize_pattern(const Word& w) {
  std::vector<Letter> distinct(w.letters().begin(), w.letters().end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters())
    out.push_back(static_cast<Letter>(std::lower_bound(distinct.begin(), distinct.end(), l) - distinct.begin()));
  return Word(std::move(out), std::max<std::uint32_t>(1, static_cast<std::uint32_t>(distinct.size())));
}

BigInt binary_flip_delta(const Word& w, std::size_t t, std::size_t k) {
  if (w.alphabet_size() != 2) throw std::invalid_argument("flip delta is defined for binary words only");
  if (t < 2 || t > w.size()) throw std::out_of_range("flip position must satisfy 2 <= t <= n");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const Letter before = w.at(t - 1);
  const Letter after = w.at(t);
  if (before == after) throw std::invalid_argument("flip requires w_t != w_{t-1}");
  // Only subwords through both t-1 and t change: "before after" reads one way in w
  // and the other way in w*.
  const long kept_lo = static_cast<long>(q_less(before, t - 1, w));
  const long kept_hi = static_cast<long>(q_greater(after, t, w));
  const long flip_lo = static_cast<long>(q_less(after, t - 1, w));
  const long flip_hi = static_cast<long>(q_greater(before, t, w));
  const long rest = static_cast<long>(k) - 2;
  BigInt delta;
  for (long h = 0; h <= rest; ++h) {
    delta += binomial_signed(kept_lo, h) * binomial_signed(kept_hi, rest - h);
    delta -= binomial_signed(flip_lo, h) * binomial_signed(flip_hi, rest - h);
  }
  return delta;
}

}  // namespace monoflag

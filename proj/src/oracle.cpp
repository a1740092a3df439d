#include "monoflag/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace monoflag {

BigInt normalized_word_count(std::uint32_t s, std::size_t n) {
  // surjections onto t letters: t! S(n,t)
  BigInt total = n == 0 ? 1 : 0;
  for (std::uint32_t t = 1; t <= s && t <= n; ++t) {
    BigInt onto = 0;
    for (std::uint32_t i = 0; i <= t; ++i) {
      BigInt term = binomial(t, i);
      BigInt p;
      mpz_ui_pow_ui(p.get_mpz_t(), t - i, n);
      term *= p;
      if (i % 2) onto -= term;
      else onto += term;
    }
    total += onto;
  }
  return total;
}

namespace {

using Count = std::uint64_t;

// Incremental monotone k-subword counter, one frame per prefix length.
struct Frame {
  std::vector<Count> up;    // up[(len-1)*s + c]: non-decreasing subwords of length len ending in c, len < k
  std::vector<Count> down;  // same, non-increasing
  std::vector<Count> seen;  // occurrences of each letter
  Count total = 0;
  std::uint32_t max_letter = 0;
  std::uint32_t used_mask = 0;
};

class Search {
 public:
  Search(std::uint32_t s, std::size_t k, std::size_t n, std::atomic<Count>& best)
      : s_(s), k_(k), n_(n), best_(best), frames_(n + 1), word_(n) {
    for (auto& f : frames_) {
      f.up.assign((k - 1) * s, 0);
      f.down.assign((k - 1) * s, 0);
      f.seen.assign(s, 0);
    }
    choose_.assign(n + 1, std::vector<Count>(k, 0));
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = 0; b < k && b <= a; ++b) choose_[a][b] = binomial(a, b).get_ui();
  }

  // Explore every normalized word starting with `prefix`.
  void run(const std::vector<std::uint32_t>& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (!push(i, prefix[i])) return;
    }
    dfs(prefix.size());
  }

  std::vector<std::pair<Count, std::vector<std::uint32_t>>>& found() { return found_; }

 private:
  bool push(std::size_t depth, std::uint32_t c) {
    const Frame& prev = frames_[depth];
    Frame& cur = frames_[depth + 1];
    cur.up = prev.up;
    cur.down = prev.down;
    cur.seen = prev.seen;
    Count added_up = 0, added_down = 0;
    for (std::size_t len = k_; len >= 1; --len) {
      Count ways_up = 1, ways_down = 1;
      if (len > 1) {
        ways_up = ways_down = 0;
        const Count* row = &prev.up[(len - 2) * s_];
        for (std::uint32_t x = 0; x <= c; ++x) ways_up += row[x];
        const Count* rowd = &prev.down[(len - 2) * s_];
        for (std::uint32_t x = c; x < s_; ++x) ways_down += rowd[x];
      }
      if (len == k_) {
        added_up = ways_up;
        added_down = ways_down;
      } else {
        cur.up[(len - 1) * s_ + c] += ways_up;
        cur.down[(len - 1) * s_ + c] += ways_down;
      }
    }
    const Count constant = choose_[prev.seen[c]][k_ - 1];
    cur.seen[c] += 1;
    cur.total = prev.total + added_up + added_down - constant;
    cur.max_letter = depth == 0 ? c : std::max(prev.max_letter, c);
    cur.used_mask = prev.used_mask | (1u << c);
    word_[depth] = c;
    return cur.total <= best_.load(std::memory_order_relaxed);
  }

  void dfs(std::size_t depth) {
    const Frame& f = frames_[depth];
    if (depth == n_) {
      Count cur = best_.load(std::memory_order_relaxed);
      while (f.total < cur && !best_.compare_exchange_weak(cur, f.total, std::memory_order_relaxed)) {
      }
      if (f.total <= best_.load(std::memory_order_relaxed)) found_.emplace_back(f.total, word_);
      return;
    }
    const std::size_t remaining = n_ - depth;
    for (std::uint32_t c = 0; c < s_; ++c) {
      // letters below the largest one used must all appear by the end
      const std::uint32_t top = depth == 0 ? c : std::max(f.max_letter, c);
      const std::uint32_t mask = f.used_mask | (1u << c);
      const auto missing = static_cast<std::size_t>(top + 1 - std::popcount(mask));
      if (missing > remaining - 1) continue;
      if (push(depth, c)) dfs(depth + 1);
    }
  }

  std::uint32_t s_;
  std::size_t k_, n_;
  std::atomic<Count>& best_;
  std::vector<Frame> frames_;
  std::vector<std::uint32_t> word_;
  std::vector<std::vector<Count>> choose_;
  std::vector<std::pair<Count, std::vector<std::uint32_t>>> found_;
};

}  // namespace

BruteResult brute_min(std::uint32_t s, std::size_t k, std::size_t n, const BruteOptions& options) {
  if (s == 0 || s > 31) throw std::invalid_argument("alphabet size must be in 1..31");
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  const BigInt candidates = normalized_word_count(s, n);
  if (candidates.get_d() > options.guard)
    throw std::invalid_argument("search space of " + candidates.get_str() + " normalized words exceeds the guard");
  const std::uint32_t letters = std::min<std::uint32_t>(s, static_cast<std::uint32_t>(n));

  // alternating seed for the incumbent
  std::atomic<Count> best(std::numeric_limits<Count>::max());
  {
    std::vector<Letter> seed(n);
    for (std::size_t i = 0; i < n; ++i) seed[i] = letters > 1 ? static_cast<Letter>(i % 2) : 0;
    best = count_monotone(Word(seed, s), k).total.get_ui();
  }

  std::vector<std::vector<std::uint32_t>> prefixes;
  for (std::uint32_t a = 0; a < letters; ++a) prefixes.push_back({a});

  std::vector<std::pair<Count, std::vector<std::uint32_t>>> all;
  std::mutex lock;
  std::atomic<std::size_t> next(0);
  auto worker = [&] {
    Search search(letters, k, n, best);
    for (std::size_t i; (i = next.fetch_add(1)) < prefixes.size();) search.run(prefixes[i]);
    std::lock_guard guard(lock);
    all.insert(all.end(), std::make_move_iterator(search.found().begin()), std::make_move_iterator(search.found().end()));
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(prefixes.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BruteResult r;
  const Count min = best.load();
  r.min_count = static_cast<unsigned long>(min);
  std::vector<std::vector<std::uint32_t>> words;
  for (auto& [count, w] : all)
    if (count == min) words.push_back(std::move(w));
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (auto& w : words) r.minimizers.emplace_back(std::vector<Letter>(w.begin(), w.end()), s);
  return r;
}

Rational f_skn(std::uint32_t s, std::size_t k, std::size_t n, const BruteOptions& options) {
  return make_rational(brute_min(s, k, n, options).min_count, binomial(n, k));
}

}  // namespace monoflag

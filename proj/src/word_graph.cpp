#include "monoflag/word_graph.hpp"

#include <algorithm>
#include <functional>
#include <cstring>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace monoflag {

WordGraph WordGraph::of_word(const Word& w) {
  const std::size_t n = w.size();
  std::vector<std::uint8_t> c(n * n, kEqual);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint8_t v = w[i] < w[j] ? kIncrease : (w[i] > w[j] ? kDecrease : kEqual);
      c[i * n + j] = c[j * n + i] = v;
    }
  return WordGraph(n, std::move(c));
}

WordGraph WordGraph::from_colors(std::size_t n, std::span<const std::uint8_t> colors) {
  if (colors.size() != n * n) throw std::invalid_argument("colour matrix must be n x n");
  if (!is_realizable(n, colors)) throw std::invalid_argument("colouring is not realisable as a word graph");
  std::vector<std::uint8_t> c(colors.begin(), colors.end());
  for (std::size_t i = 0; i < n; ++i) c[i * n + i] = kEqual;
  return WordGraph(n, std::move(c));
}

WordGraph WordGraph::induced(std::span<const std::size_t> vertices) const {
  const std::size_t m = vertices.size();
  std::vector<std::uint8_t> c(m * m, kEqual);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) c[a * m + b] = color(vertices[a], vertices[b]);
  return WordGraph(m, std::move(c));
}

namespace {

// Letter relation implied between two vertices when `first` sits at an
// earlier position than `second`: -1 (<), +1 (>), 0 (=).
int implied(std::uint8_t c) { return c == kIncrease ? -1 : (c == kDecrease ? 1 : 0); }

bool consistent(int ab, int ac, int bc) {
  // a ? b, a ? c, b ? c must be realisable by numbers
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        auto rel = [](int x, int y) { return x < y ? -1 : (x > y ? 1 : 0); };
        if (rel(a, b) == ab && rel(a, c) == ac && rel(b, c) == bc) return true;
      }
  return false;
}

bool place(std::size_t n, std::span<const std::uint8_t> colors, std::vector<std::size_t>& order,
           std::vector<bool>& used) {
  if (order.size() == n) return true;
  for (std::size_t v = 0; v < n; ++v) {
    if (used[v]) continue;
    bool ok = true;
    for (std::size_t i = 0; i < order.size() && ok; ++i)
      for (std::size_t j = i + 1; j < order.size() && ok; ++j) {
        std::size_t a = order[i], b = order[j];
        ok = consistent(implied(colors[a * n + b]), implied(colors[a * n + v]), implied(colors[b * n + v]));
      }
    if (!ok) continue;
    used[v] = true;
    order.push_back(v);
    if (place(n, colors, order, used)) return true;
    order.pop_back();
    used[v] = false;
  }
  return false;
}

}  // namespace

bool is_realizable(std::size_t n, std::span<const std::uint8_t> colors) {
  if (colors.size() != n * n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (colors[i * n + j] > kEqual || colors[i * n + j] != colors[j * n + i]) return false;
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  return place(n, colors, order, used);
}

namespace {

struct CanonicalSearch {
  const WordGraph& g;
  std::size_t n;
  std::vector<std::size_t> slot_cell;               // cell index of each slot
  std::vector<std::vector<std::size_t>> cell_members;
  std::vector<std::size_t> order;
  std::vector<bool> used;
  std::string current;
  std::string best;

  void run(std::size_t slot) {
    if (slot == n) {
      if (best.empty() || current < best) best = current;
      return;
    }
    const std::size_t begin = 1 + slot * (slot - 1) / 2;
    for (std::size_t v : cell_members[slot_cell[slot]]) {
      if (used[v]) continue;
      for (std::size_t q = 0; q < slot; ++q) current[begin + q] = static_cast<char>('0' + g.color(order[q], v));
      const std::size_t end = begin + slot;
      if (!best.empty() && std::memcmp(current.data(), best.data(), end) > 0) continue;
      used[v] = true;
      order[slot] = v;
      run(slot + 1);
      used[v] = false;
    }
  }
};

}  // namespace

std::string canonical_form(const WordGraph& g, std::span<const std::size_t> fixed) {
  const std::size_t n = g.order();
  if (n > kMaxCanonicalOrder)
    throw std::invalid_argument("canonical form supports at most " + std::to_string(kMaxCanonicalOrder) + " vertices");

  // colour refinement; fixed vertices are singleton cells ahead of the rest
  std::vector<std::size_t> rank(n, fixed.size());
  for (std::size_t i = 0; i < fixed.size(); ++i) rank[fixed[i]] = i;
  std::size_t cells = 0;
  std::vector<std::vector<std::size_t>> signature(n);
  while (true) {
    std::size_t width = *std::max_element(rank.begin(), rank.end()) + 1;
    for (std::size_t v = 0; v < n; ++v) {
      auto& sig = signature[v];
      sig.assign(1 + 3 * width, 0);
      sig[0] = rank[v];
      for (std::size_t u = 0; u < n; ++u)
        if (u != v) ++sig[1 + 3 * rank[u] + g.color(u, v)];
    }
    std::vector<std::vector<std::size_t>> distinct(signature.begin(), signature.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = 0; v < n; ++v)
      rank[v] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), signature[v]) - distinct.begin());
    if (distinct.size() == cells) break;
    cells = distinct.size();
  }

  CanonicalSearch search{g, n, {}, std::vector<std::vector<std::size_t>>(cells), std::vector<std::size_t>(n),
                         std::vector<bool>(n, false), std::string(1 + n * (n - 1) / 2, '\0'), {}};
  for (std::size_t v = 0; v < n; ++v) search.cell_members[rank[v]].push_back(v);
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t i = 0; i < search.cell_members[c].size(); ++i) search.slot_cell.push_back(c);
  search.current[0] = static_cast<char>(n);
  search.run(0);
  if (n == 0) search.best = search.current;
  return search.best;
}

namespace {

// Words of length l whose letter set is exactly {0..t-1} for some t <= letters,
// in lexicographic order.
void for_each_normalized_word(std::size_t l, std::uint32_t letters,
                              const std::function<void(const std::vector<Letter>&)>& visit) {
  std::vector<Letter> w(l, 0);
  std::vector<std::size_t> seen(letters, 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == l) {
      Letter top = 0;
      for (Letter c = 0; c < letters; ++c)
        if (seen[c]) top = c;
      for (Letter c = 0; c <= top; ++c)
        if (!seen[c]) return;
      visit(w);
      return;
    }
    // letters still missing below the maximum must fit in the remaining slots
    for (Letter c = 0; c < letters; ++c) {
      w[pos] = c;
      ++seen[c];
      std::size_t missing = 0;
      Letter top = 0;
      for (Letter d = 0; d < letters; ++d)
        if (seen[d]) top = d;
      for (Letter d = 0; d <= top; ++d)
        if (!seen[d]) ++missing;
      if (missing <= l - pos - 1) self(self, pos + 1);
      --seen[c];
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<WordGraphClass> enumerate_word_graphs(std::uint32_t s, std::size_t l, const EnumerateOptions& options) {
  if (s < 1) throw std::invalid_argument("alphabet size must be positive");
  if (l > options.max_order)
    throw std::invalid_argument("word graph enumeration capped at l = " + std::to_string(options.max_order));
  if (l > kMaxCanonicalOrder) throw std::invalid_argument("l exceeds canonical-form limit");
  const std::uint32_t letters = static_cast<std::uint32_t>(std::min<std::size_t>(s, std::max<std::size_t>(l, 1)));

  std::vector<std::vector<Letter>> candidates;
  for_each_normalized_word(l, letters, [&](const std::vector<Letter>& w) { candidates.push_back(w); });

  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::unordered_map<std::string, std::size_t>> partial(threads);  // key -> candidate index
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < candidates.size(); i += threads) {
      Word w = Word::with_minimal_alphabet(candidates[i]);
      auto [it, inserted] = partial[t].try_emplace(canonical_form(WordGraph::of_word(w)), i);
      if (!inserted && i < it->second) it->second = i;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::map<std::string, std::size_t> merged;
  for (auto& part : partial)
    for (auto& [key, idx] : part) {
      auto [it, inserted] = merged.try_emplace(key, idx);
      if (!inserted) it->second = std::min(it->second, idx);
    }
  std::vector<WordGraphClass> out;
  out.reserve(merged.size());
  for (auto& [key, idx] : merged) {
    Word rep(candidates[idx], std::max<std::uint32_t>(s, 1));
    out.push_back({key, rep, WordGraph::of_word(rep)});
  }
  return out;
}

void write_graph_set(std::ostream& out, std::uint32_t s, std::size_t l, std::span<const WordGraphClass> graphs) {
  out << s << ' ' << l << ' ' << graphs.size() << '\n';
  for (const auto& g : graphs) out << g.representative.str() << '\n';
}

BigInt count_monotone_cliques(const WordGraph& g, std::size_t k) {
  const std::size_t n = g.order();
  std::uint64_t count = 0;
  std::vector<std::size_t> clique;
  // extend cliques in increasing vertex order, tracking which of colours 0/1 were used
  auto rec = [&](auto&& self, std::size_t from, bool has_inc, bool has_dec) -> void {
    if (clique.size() == k) {
      ++count;
      return;
    }
    for (std::size_t v = from; v + (k - clique.size()) <= n; ++v) {
      bool inc = has_inc, dec = has_dec;
      for (std::size_t u : clique) {
        inc |= g.color(u, v) == kIncrease;
        dec |= g.color(u, v) == kDecrease;
      }
      if (inc && dec) continue;
      clique.push_back(v);
      self(self, v + 1, inc, dec);
      clique.pop_back();
    }
  };
  rec(rec, 0, false, false);
  return BigInt(static_cast<unsigned long>(count));
}

Rational monotone_clique_density(const WordGraph& g, std::size_t k) {
  if (k > g.order()) throw std::invalid_argument("k exceeds graph order");
  return make_rational(count_monotone_cliques(g, k), binomial(g.order(), k));
}

Rational subgraph_density(const WordGraph& h, const WordGraph& g) {
  if (h.order() > g.order()) throw std::invalid_argument("pattern graph larger than host graph");
  if (g.order() > kMaxCanonicalOrder) throw std::invalid_argument("host graph too large");
  const std::string key = canonical_form(h);
  unsigned long hits = 0;
  for_each_subset(g.order(), h.order(), [&](std::span<const std::size_t> subset) {
    if (canonical_form(g.induced(subset)) == key) ++hits;
  });
  return make_rational(BigInt(hits), binomial(g.order(), h.order()));
}

}  // namespace monoflag

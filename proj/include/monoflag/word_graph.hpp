#pragma once

#include "monoflag/exact.hpp"
#include "monoflag/word.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace monoflag {

/// Pair colour of a word graph: for positions i < j, 0 if w_i < w_j,
/// 1 if w_i > w_j, 2 if w_i = w_j.
enum Color : std::uint8_t { kIncrease = 0, kDecrease = 1, kEqual = 2 };

/// Edge-coloured complete graph on {0, ..., n-1} that is the word graph of some word.
class WordGraph {
 public:
  WordGraph() = default;

  static WordGraph of_word(const Word& w);
  /// Symmetric colour matrix (row-major, diagonal ignored). Throws when the
  /// colouring is not realisable by any word.
  static WordGraph from_colors(std::size_t n, std::span<const std::uint8_t> colors);

  std::size_t order() const { return n_; }
  std::uint8_t color(std::size_t u, std::size_t v) const { return colors_[u * n_ + v]; }
  std::span<const std::uint8_t> colors() const { return colors_; }

  WordGraph induced(std::span<const std::size_t> vertices) const;

  friend bool operator==(const WordGraph&, const WordGraph&) = default;

 private:
  WordGraph(std::size_t n, std::vector<std::uint8_t> colors) : n_(n), colors_(std::move(colors)) {}

  std::size_t n_ = 0;
  std::vector<std::uint8_t> colors_;
};

inline WordGraph graph_of_word(const Word& w) { return WordGraph::of_word(w); }

/// True when some word realises the colouring: the colour-2 relation is an
/// equivalence and some vertex order turns colours into a consistent weak order of letters.
bool is_realizable(std::size_t n, std::span<const std::uint8_t> colors);

/// Largest order accepted by canonical_form.
inline constexpr std::size_t kMaxCanonicalOrder = 10;

/// Canonical key: the order byte followed by the lexicographically smallest
/// colour string over vertex relabelings, edges listed as (0,1),(0,2),(1,2),(0,3),...
/// Vertices in `fixed` keep the leading slots in the given order (used for flags).
std::string canonical_form(const WordGraph& g, std::span<const std::size_t> fixed = {});

struct WordGraphClass {
  std::string key;              // canonical_form of the graph
  Word representative;          // lexicographically smallest normalized word
  WordGraph graph;              // graph_of_word(representative)
};

struct EnumerateOptions {
  std::size_t max_order = 8;    // cost guard
  unsigned threads = 1;
};

/// One representative per isomorphism class of word graphs of l-words over an
/// s-letter alphabet, ordered by canonical key.
std::vector<WordGraphClass> enumerate_word_graphs(std::uint32_t s, std::size_t l, const EnumerateOptions& options = {});

/// Header "s l count", then one representative word per line.
void write_graph_set(std::ostream& out, std::uint32_t s, std::size_t l, std::span<const WordGraphClass> graphs);

/// Number of k-cliques using at most one of the colours 0 and 1.
BigInt count_monotone_cliques(const WordGraph& g, std::size_t k);
Rational monotone_clique_density(const WordGraph& g, std::size_t k);

/// Fraction of |H|-subsets of V(G) inducing a copy of H. |H| <= |G| <= 10.
Rational subgraph_density(const WordGraph& h, const WordGraph& g);

/// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  if (k > n) return;
  while (true) {
    visit(std::span<const std::size_t>(pick));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace monoflag

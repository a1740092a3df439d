#pragma once

#include "monoflag/exact.hpp"
#include "monoflag/word_graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace monoflag {

/// A fully labelled word graph; vertex i carries label i + 1.
struct TypeSigma {
  WordGraph graph;
  std::size_t size() const { return graph.order(); }
};

/// Type with flag size l_i used by the SDP: l_i = |sigma| + (l - |sigma|) / 2.
struct TypeSpec {
  TypeSigma type;
  std::size_t flag_order;
};

/// A sigma-flag (M, theta): theta[i] is the vertex of M carrying label i + 1.
struct Flag {
  WordGraph graph;
  std::vector<std::size_t> theta;

  std::size_t order() const { return graph.order(); }
  std::size_t type_size() const { return theta.size(); }
  /// Whether M[Im theta] equals sigma label by label.
  bool matches(const TypeSigma& sigma) const;
  /// Canonical key up to isomorphisms that preserve labels.
  std::string key() const;
};

/// sigma_1 = one vertex; sigma_2..sigma_9 = the eight labelled triangles with
/// colour triples (c12, c13, c23) = 000, 001, 002, 011, 012, 111, 112, 222.
/// Flag orders follow l = 7 (4 for sigma_1, 5 for the rest) unless `l` is given.
std::vector<TypeSpec> default_types(std::uint32_t s, std::size_t l = 7);

/// The flag list F_l^sigma over alphabet size s, sorted by flag key.
std::vector<Flag> enumerate_flags(const TypeSigma& sigma, std::size_t l, std::uint32_t s);

/// p(F, K): probability that a random |F|-subset U containing Im theta_K gives
/// (K[U], theta_K) isomorphic to F. Zero when |K| < |F| or K is not a sigma-flag.
Rational flag_density(const Flag& f, const Flag& k, const TypeSigma& sigma);

/// p(F, F2; K) over ordered pairs (U, U') with U cap U' = Im theta_K.
Rational joint_density(const Flag& f, const Flag& f2, const Flag& k, const TypeSigma& sigma);

/// Upper-triangle sparse entry (u <= v, 0-based flag indices).
struct TableEntry {
  std::uint32_t u;
  std::uint32_t v;
  std::int64_t value;
  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

/// Integer table N_i * E_theta[p(F_u, F_v; (H, theta))], upper triangle, sorted.
struct PairExpectationTable {
  std::size_t type_index = 0;
  std::size_t flag_count = 0;
  std::int64_t scale = 0;  // N_i
  std::vector<TableEntry> entries;

  std::int64_t at(std::size_t u, std::size_t v) const;
};

/// Flag list of one type with a key -> index lookup, prepared once per (type, s).
class FlagIndex {
 public:
  FlagIndex(TypeSpec spec, std::uint32_t s);

  const TypeSpec& spec() const { return spec_; }
  const std::vector<Flag>& flags() const { return flags_; }
  std::size_t size() const { return flags_.size(); }
  /// -1 when the key is not in the list.
  long find(const std::string& key) const;

  /// N = |Theta| * (number of ordered (U,U') splits) for a host of order l.
  std::int64_t scale(std::size_t host_order) const;

  /// Raw counts over all (theta, U, U'); equals N * E[p] entrywise. The host
  /// must have order 2 * flag_order - |sigma| for the counts to be the table.
  PairExpectationTable table(const WordGraph& host, std::size_t type_index = 0) const;

 private:
  TypeSpec spec_;
  std::vector<Flag> flags_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// c_H = sum_i sum_{u,v} Q_i[u,v] E_theta[p(F_u,F_v;(H,theta))]. Q_i are dense
/// symmetric t_i x t_i row-major matrices.
Rational c_H(std::span<const FlagIndex> types, std::span<const std::vector<Rational>> q, const WordGraph& host);

/// Serialises a table as "u v value" lines (1-based indices, u <= v).
std::string format_table(const PairExpectationTable& table);

}  // namespace monoflag

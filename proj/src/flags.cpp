#include "monoflag/flags.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>

namespace monoflag {

bool Flag::matches(const TypeSigma& sigma) const {
  if (theta.size() != sigma.size()) return false;
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 1; j < theta.size(); ++j)
      if (graph.color(theta[i], theta[j]) != sigma.graph.color(i, j)) return false;
  return true;
}

std::string Flag::key() const { return canonical_form(graph, theta); }

std::vector<TypeSpec> default_types(std::uint32_t s, std::size_t l) {
  if (s < 3) throw std::invalid_argument("the default type list needs s >= 3");
  constexpr std::array<std::array<std::uint8_t, 3>, 8> triangles{{
      {0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 1}, {0, 1, 2}, {1, 1, 1}, {1, 1, 2}, {2, 2, 2},
  }};
  std::vector<TypeSpec> out;
  out.push_back({TypeSigma{WordGraph::of_word(Word({0}, 1))}, 1 + (l - 1) / 2});
  for (const auto& t : triangles) {
    const std::array<std::uint8_t, 9> m{2, t[0], t[1], t[0], 2, t[2], t[1], t[2], 2};
    out.push_back({TypeSigma{WordGraph::from_colors(3, m)}, 3 + (l - 3) / 2});
  }
  return out;
}

namespace {

template <typename F>
void for_each_injection(std::size_t n, std::size_t h, F&& visit) {
  std::vector<std::size_t> theta(h);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == h) {
      visit(std::span<const std::size_t>(theta));
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      theta[i] = v;
      self(self, i + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
}

bool theta_matches(const WordGraph& g, std::span<const std::size_t> theta, const TypeSigma& sigma) {
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 1; j < theta.size(); ++j)
      if (g.color(theta[i], theta[j]) != sigma.graph.color(i, j)) return false;
  return true;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> taken) {
  std::vector<bool> in(n, false);
  for (std::size_t v : taken) in[v] = true;
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < n; ++v)
    if (!in[v]) rest.push_back(v);
  return rest;
}

// Key of the flag (g[theta + extra], theta) with theta mapped to the leading slots.
std::string sub_flag_key(const WordGraph& g, std::span<const std::size_t> theta, std::span<const std::size_t> extra) {
  std::vector<std::size_t> vertices(theta.begin(), theta.end());
  vertices.insert(vertices.end(), extra.begin(), extra.end());
  WordGraph sub = g.induced(vertices);
  std::vector<std::size_t> fixed(theta.size());
  for (std::size_t i = 0; i < fixed.size(); ++i) fixed[i] = i;
  return canonical_form(sub, fixed);
}

void check_same_type(const Flag& f, const TypeSigma& sigma) {
  if (!f.matches(sigma)) throw std::invalid_argument("flag is not a flag of the given type");
}

}  // namespace

std::vector<Flag> enumerate_flags(const TypeSigma& sigma, std::size_t l, std::uint32_t s) {
  const std::size_t h = sigma.size();
  if (l <= h) throw std::invalid_argument("flag order must exceed the type size");
  if (l > 6) throw std::invalid_argument("flag enumeration capped at l = 6");
  std::map<std::string, Flag> found;
  for (const auto& cls : enumerate_word_graphs(s, l)) {
    for_each_injection(l, h, [&](std::span<const std::size_t> theta) {
      if (!theta_matches(cls.graph, theta, sigma)) return;
      Flag f{cls.graph, std::vector<std::size_t>(theta.begin(), theta.end())};
      std::string key = f.key();
      found.try_emplace(std::move(key), std::move(f));
    });
  }
  std::vector<Flag> out;
  out.reserve(found.size());
  for (auto& [key, f] : found) out.push_back(std::move(f));
  return out;
}

Rational flag_density(const Flag& f, const Flag& k, const TypeSigma& sigma) {
  check_same_type(f, sigma);
  if (k.type_size() != sigma.size()) throw std::invalid_argument("host flag has a different type size");
  const std::size_t h = sigma.size();
  if (k.order() < f.order() || !k.matches(sigma)) return Rational(0);
  const std::string target = f.key();
  const auto rest = complement(k.order(), k.theta);
  unsigned long hits = 0, total = 0;
  std::vector<std::size_t> extra(f.order() - h);
  for_each_subset(rest.size(), f.order() - h, [&](std::span<const std::size_t> pick) {
    for (std::size_t i = 0; i < pick.size(); ++i) extra[i] = rest[pick[i]];
    ++total;
    if (sub_flag_key(k.graph, k.theta, extra) == target) ++hits;
  });
  return make_rational(BigInt(hits), BigInt(total));
}

Rational joint_density(const Flag& f, const Flag& f2, const Flag& k, const TypeSigma& sigma) {
  check_same_type(f, sigma);
  check_same_type(f2, sigma);
  if (f.order() != f2.order()) throw std::invalid_argument("joint density needs flags of equal order");
  if (k.type_size() != sigma.size()) throw std::invalid_argument("host flag has a different type size");
  const std::size_t h = sigma.size();
  const std::size_t extra_size = f.order() - h;
  if (k.order() < 2 * f.order() - h || !k.matches(sigma)) return Rational(0);
  const std::string first = f.key(), second = f2.key();
  const auto rest = complement(k.order(), k.theta);
  unsigned long hits = 0, total = 0;
  std::vector<std::size_t> extra(extra_size), extra2(extra_size);
  for_each_subset(rest.size(), extra_size, [&](std::span<const std::size_t> pick) {
    for (std::size_t i = 0; i < pick.size(); ++i) extra[i] = rest[pick[i]];
    const auto remaining = complement(k.order(), [&] {
      std::vector<std::size_t> used(k.theta);
      used.insert(used.end(), extra.begin(), extra.end());
      return used;
    }());
    const bool first_ok = sub_flag_key(k.graph, k.theta, extra) == first;
    for_each_subset(remaining.size(), extra_size, [&](std::span<const std::size_t> pick2) {
      for (std::size_t i = 0; i < pick2.size(); ++i) extra2[i] = remaining[pick2[i]];
      ++total;
      if (first_ok && sub_flag_key(k.graph, k.theta, extra2) == second) ++hits;
    });
  });
  return make_rational(BigInt(hits), BigInt(total));
}

std::int64_t PairExpectationTable::at(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{u, v}, [](const TableEntry& e, const auto& p) {
    return std::pair<std::size_t, std::size_t>{e.u, e.v} < p;
  });
  if (it == entries.end() || it->u != u || it->v != v) return 0;
  return it->value;
}

FlagIndex::FlagIndex(TypeSpec spec, std::uint32_t s)
    : spec_(std::move(spec)), flags_(enumerate_flags(spec_.type, spec_.flag_order, s)) {
  for (std::size_t i = 0; i < flags_.size(); ++i) lookup_.emplace(flags_[i].key(), i);
}

long FlagIndex::find(const std::string& key) const {
  auto it = lookup_.find(key);
  return it == lookup_.end() ? -1 : static_cast<long>(it->second);
}

std::int64_t FlagIndex::scale(std::size_t host_order) const {
  const std::size_t h = spec_.type.size();
  const std::size_t e = spec_.flag_order - h;
  std::int64_t thetas = 1;
  for (std::size_t i = 0; i < h; ++i) thetas *= static_cast<std::int64_t>(host_order - i);
  if (host_order < h + 2 * e) return thetas;
  return thetas * binomial(host_order - h, e).get_si() * binomial(host_order - h - e, e).get_si();
}

PairExpectationTable FlagIndex::table(const WordGraph& host, std::size_t type_index) const {
  const std::size_t n = host.order();
  const std::size_t h = spec_.type.size();
  const std::size_t e = spec_.flag_order - h;
  PairExpectationTable out;
  out.type_index = type_index;
  out.flag_count = flags_.size();
  out.scale = scale(n);
  if (n < h + 2 * e) return out;

  std::vector<std::uint64_t> hits;  // (u << 32) | v
  std::vector<std::size_t> extra(e), extra2(e);
  for_each_injection(n, h, [&](std::span<const std::size_t> theta) {
    if (!theta_matches(host, theta, spec_.type)) return;
    const auto rest = complement(n, theta);
    // flag index of every e-subset of the free vertices, keyed by bitmask over `rest`
    std::map<std::uint32_t, long> index_of;
    for_each_subset(rest.size(), e, [&](std::span<const std::size_t> pick) {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < e; ++i) {
        extra[i] = rest[pick[i]];
        mask |= 1u << pick[i];
      }
      long idx = find(sub_flag_key(host, theta, extra));
      if (idx < 0) throw std::logic_error("sub-flag missing from flag list (alphabet mismatch?)");
      index_of.emplace(mask, idx);
    });
    for (const auto& [mask, x] : index_of)
      for (const auto& [mask2, y] : index_of)
        if ((mask & mask2) == 0)
          hits.push_back((static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(y));
  });
  std::sort(hits.begin(), hits.end());
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    const auto u = static_cast<std::uint32_t>(hits[i] >> 32);
    const auto v = static_cast<std::uint32_t>(hits[i] & 0xffffffffu);
    if (u <= v) out.entries.push_back({u, v, static_cast<std::int64_t>(j - i)});
    i = j;
  }
  return out;
}

Rational c_H(std::span<const FlagIndex> types, std::span<const std::vector<Rational>> q, const WordGraph& host) {
  if (types.size() != q.size()) throw std::invalid_argument("one Q matrix per type is required");
  Rational total;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::size_t t = types[i].size();
    if (q[i].size() != t * t)
      throw std::invalid_argument("Q_" + std::to_string(i + 1) + " must be " + std::to_string(t) + " x " + std::to_string(t));
    const auto table = types[i].table(host, i);
    Rational block;
    for (const auto& entry : table.entries) {
      Rational weight = q[i][entry.u * t + entry.v];
      if (entry.u != entry.v) weight += q[i][entry.v * t + entry.u];
      block += weight * Rational(static_cast<long>(entry.value));
    }
    total += block / Rational(static_cast<long>(table.scale));
  }
  return total;
}

std::string format_table(const PairExpectationTable& table) {
  std::ostringstream out;
  for (const auto& e : table.entries) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.value << '\n';
  return out.str();
}

}  // namespace monoflag

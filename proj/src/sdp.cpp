#include "monoflag/sdp.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "monoflag/flags.hpp"
#include "monoflag/word_graph.hpp"

namespace monoflag {

std::size_t SdpProblem::block_order(std::size_t b) const {
  const long v = block_sizes.at(b);
  return static_cast<std::size_t>(v < 0 ? -v : v);
}

namespace {

bool entry_less(const SdpEntry& x, const SdpEntry& y) {
  if (x.block != y.block) return x.block < y.block;
  if (x.i != y.i) return x.i < y.i;
  return x.j < y.j;
}

}  // namespace

SdpProblem assemble_problem(std::uint32_t s, std::size_t l, const AssembleOptions& options) {
  if (!options.allow_any && (s < 4 || s > 6 || l != 7))
    throw std::invalid_argument("assemble_problem supports s in {4,5,6} and l = 7 (pass allow_any to override)");
  std::vector<FlagIndex> types;
  for (auto& spec : default_types(s, l)) types.emplace_back(std::move(spec), s);
  const auto graphs = enumerate_word_graphs(s, l, {.max_order = 8, .threads = options.threads});
  const std::size_t m = graphs.size();

  SdpProblem p;
  p.s = s;
  p.l = l;
  p.scale = binomial(l, 3).get_si();
  for (const auto& t : types) p.block_sizes.push_back(static_cast<long>(t.size()));
  p.block_sizes.push_back(-static_cast<long>(m + 1));
  const auto slack = static_cast<std::uint32_t>(types.size() + 1);
  p.c.push_back({slack, 1, 1, 1});
  p.a.resize(m);
  p.constraints.resize(m);

  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t j = from; j < to; ++j) {
      const WordGraph& h = graphs[j].graph;
      p.a[j] = count_monotone_cliques(h, 3).get_si();
      auto& row = p.constraints[j];
      for (std::size_t i = 0; i < types.size(); ++i) {
        const auto table = types[i].table(h, i);
        for (const auto& e : table.entries)
          row.push_back({static_cast<std::uint32_t>(i + 1), e.u + 1, e.v + 1, e.value});
      }
      row.push_back({slack, 1, 1, 1});
      row.push_back({slack, static_cast<std::uint32_t>(j + 2), static_cast<std::uint32_t>(j + 2), 1});
      row.shrink_to_fit();
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    work(0, m);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, m * t / threads, m * (t + 1) / threads);
    for (auto& th : pool) th.join();
  }
  return p;
}

SdpProblem assemble_problem_cached(std::uint32_t s, std::size_t l, const AssembleOptions& options) {
  const char* dir = std::getenv("MONOFLAG_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return assemble_problem(s, l, options);
  namespace fs = std::filesystem;
  const fs::path path = fs::path(dir) / ("words" + std::to_string(s) + "_l" + std::to_string(l) + ".dat-s");
  if (fs::exists(path)) {
    SdpProblem p = parse_sdpa_sparse_file(path.string());
    p.s = s;
    p.l = l;
    return p;
  }
  SdpProblem p = assemble_problem(s, l, options);
  fs::create_directories(dir);
  const fs::path tmp = path.string() + ".tmp";
  write_sdpa_sparse_file(tmp.string(), p, true);
  fs::rename(tmp, path);
  return p;
}

void write_sdpa_sparse(std::ostream& out, const SdpProblem& p, bool provenance_header) {
  if (provenance_header)
    out << "\"monoflag s=" << p.s << " l=" << p.l << " scale=" << p.scale << "\n";
  out << p.m() << "\n" << p.block_sizes.size() << "\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) out << (b ? " " : "") << p.block_sizes[b];
  out << "\n";
  for (std::size_t j = 0; j < p.a.size(); ++j) out << (j ? " " : "") << p.a[j];
  out << "\n";
  auto emit = [&](std::size_t matno, const std::vector<SdpEntry>& entries) {
    for (const auto& e : entries) out << matno << ' ' << e.block << ' ' << e.i << ' ' << e.j << ' ' << e.value << '\n';
  };
  emit(0, p.c);
  for (std::size_t j = 0; j < p.constraints.size(); ++j) emit(j + 1, p.constraints[j]);
  if (!out) throw std::runtime_error("write failed while emitting SDPA file");
}

void write_sdpa_sparse_file(const std::string& path, const SdpProblem& p, bool provenance_header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_sdpa_sparse(out, p, provenance_header);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    while (!(line_ >> tok)) {
      std::string raw;
      if (!std::getline(in_, raw)) return false;
      if (!raw.empty() && (raw[0] == '"' || raw[0] == '*')) {
        comments_.push_back(raw);
        raw.clear();
      }
      for (char& ch : raw)
        if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
      line_.clear();
      line_.str(raw);
    }
    return true;
  }

  std::string need(const char* what) {
    std::string tok;
    if (!next(tok)) throw std::runtime_error(std::string("SDPA file ended while reading ") + what);
    return tok;
  }

  const std::vector<std::string>& comments() const { return comments_; }

 private:
  std::istream& in_;
  std::istringstream line_;
  std::vector<std::string> comments_;
};

long long parse_integral(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used == tok.size()) return v;
    Rational q = parse_rational(tok);
    if (q.get_den() != 1) throw std::runtime_error("");
    return q.get_num().get_si();
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("expected an integer ") + what + ", got '" + tok + "'");
  }
}

}  // namespace

SdpProblem parse_sdpa_sparse(std::istream& in) {
  TokenReader r(in);
  SdpProblem p;
  const long long m = parse_integral(r.need("m"), "constraint count");
  const long long nb = parse_integral(r.need("block count"), "block count");
  if (m < 0 || nb <= 0) throw std::runtime_error("bad SDPA header");
  for (long long b = 0; b < nb; ++b) {
    const long long size = parse_integral(r.need("block sizes"), "block size");
    if (size == 0) throw std::runtime_error("zero block size");
    p.block_sizes.push_back(static_cast<long>(size));
  }
  p.a.resize(static_cast<std::size_t>(m));
  for (auto& v : p.a) v = parse_integral(r.need("the a vector"), "a_j");
  p.constraints.resize(static_cast<std::size_t>(m));

  std::string tok;
  while (r.next(tok)) {
    const long long matno = parse_integral(tok, "matrix number");
    const long long block = parse_integral(r.need("entry"), "block number");
    long long i = parse_integral(r.need("entry"), "row");
    long long j = parse_integral(r.need("entry"), "column");
    const long long value = parse_integral(r.need("entry"), "matrix entry");
    if (matno < 0 || matno > m) throw std::runtime_error("matrix number out of range: " + std::to_string(matno));
    if (block < 1 || block > nb) throw std::runtime_error("block number out of range: " + std::to_string(block));
    if (i > j) std::swap(i, j);
    const auto order = static_cast<long long>(p.block_order(static_cast<std::size_t>(block - 1)));
    if (i < 1 || j > order) throw std::runtime_error("entry index outside its block");
    if (p.block_diagonal(static_cast<std::size_t>(block - 1)) && i != j)
      throw std::runtime_error("off-diagonal entry in a diagonal block");
    if (value == 0) continue;
    SdpEntry e{static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), value};
    (matno == 0 ? p.c : p.constraints[static_cast<std::size_t>(matno - 1)]).push_back(e);
  }
  auto tidy = [](std::vector<SdpEntry>& v) {
    if (std::is_sorted(v.begin(), v.end(), entry_less)) return;
    std::sort(v.begin(), v.end(), entry_less);
  };
  tidy(p.c);
  for (auto& row : p.constraints) tidy(row);

  for (const auto& line : r.comments()) {
    std::istringstream fields(line.substr(1));
    std::string f;
    while (fields >> f) {
      if (f.rfind("s=", 0) == 0) p.s = static_cast<std::uint32_t>(std::stoul(f.substr(2)));
      if (f.rfind("l=", 0) == 0) p.l = std::stoul(f.substr(2));
      if (f.rfind("scale=", 0) == 0) p.scale = std::stoll(f.substr(6));
    }
  }
  return p;
}

SdpProblem parse_sdpa_sparse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_sdpa_sparse(in);
}

bool is_psd_exact(std::span<const Rational> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("matrix size does not match its order");
  std::vector<Rational> w(a.begin(), a.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[i * n + j] != w[j * n + i]) return false;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      if (sgn(w[k * n + k]) < 0) return false;
      if (pivot == n && sgn(w[k * n + k]) > 0) pivot = k;
    }
    if (pivot == n) {
      // remaining diagonal is zero, so the remaining block must vanish
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(w[i * n + j]) != 0) return false;
      return true;
    }
    done[pivot] = true;
    const Rational d = w[pivot * n + pivot];
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(w[i * n + pivot]) == 0) continue;
      const Rational f = w[i * n + pivot] / d;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) w[i * n + j] -= f * w[pivot * n + j];
    }
  }
  return true;
}

Rational lower_bound_from_Q(const SdpProblem& p, std::span<const std::vector<Rational>> q, bool check_psd) {
  std::vector<long> slot(p.block_sizes.size(), -1);
  std::size_t dense = 0;
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b)
    if (!p.block_diagonal(b)) slot[b] = static_cast<long>(dense++);
  if (q.size() != dense)
    throw std::invalid_argument("expected " + std::to_string(dense) + " Q matrices, got " + std::to_string(q.size()));
  for (std::size_t b = 0; b < slot.size(); ++b) {
    if (slot[b] < 0) continue;
    const std::size_t t = p.block_order(b);
    const auto& qb = q[static_cast<std::size_t>(slot[b])];
    if (qb.size() != t * t)
      throw std::invalid_argument("Q for block " + std::to_string(b + 1) + " must be " + std::to_string(t) + " x " +
                                  std::to_string(t));
    if (check_psd && !is_psd_exact(qb, t))
      throw std::invalid_argument("Q for block " + std::to_string(b + 1) + " is not positive semidefinite");
  }
  if (p.m() == 0) throw std::invalid_argument("problem has no constraints");
  Rational best;
  for (std::size_t j = 0; j < p.m(); ++j) {
    Rational value(p.a[j]);
    for (const auto& e : p.constraints[j]) {
      const long s = slot[e.block - 1];
      if (s < 0) continue;
      const std::size_t t = p.block_order(e.block - 1);
      const auto& qb = q[static_cast<std::size_t>(s)];
      Rational w = qb[(e.i - 1) * t + (e.j - 1)];
      if (e.i != e.j) w += qb[(e.j - 1) * t + (e.i - 1)];
      value -= w * Rational(static_cast<long>(e.value));
    }
    if (j == 0 || value < best) best = value;
  }
  return best / Rational(static_cast<long>(p.scale));
}

std::size_t variable_count(const SdpProblem& p) {
  std::size_t total = 0;
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
    const std::size_t t = p.block_order(b);
    total += p.block_diagonal(b) ? t : t * (t + 1) / 2;
  }
  return total;
}

}  // namespace monoflag

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "monoflag/exact.hpp"

namespace monoflag {

// One stored entry of a block matrix, SDPA style: 1-based block and indices, i <= j.
struct SdpEntry {
  std::uint32_t block;
  std::uint32_t i;
  std::uint32_t j;
  std::int64_t value;
  friend bool operator==(const SdpEntry&, const SdpEntry&) = default;
};

// max tr(CX) s.t. tr(A_j X) = a_j, X psd. Block sizes follow SDPA: negative
// means the block is diagonal.
struct SdpProblem {
  std::uint32_t s = 0;
  std::size_t l = 0;
  std::int64_t scale = 35;  // C(l,3); a_j = scale * f_3(H_j)
  std::vector<long> block_sizes;
  std::vector<std::int64_t> a;
  std::vector<SdpEntry> c;
  std::vector<std::vector<SdpEntry>> constraints;

  std::size_t m() const { return a.size(); }
  std::size_t block_order(std::size_t b) const;  // 0-based block
  bool block_diagonal(std::size_t b) const { return block_sizes.at(b) < 0; }

  // s and l are provenance only and do not take part in equality.
  friend bool operator==(const SdpProblem& x, const SdpProblem& y) {
    return x.scale == y.scale && x.block_sizes == y.block_sizes && x.a == y.a && x.c == y.c &&
           x.constraints == y.constraints;
  }
};

struct AssembleOptions {
  unsigned threads = 1;
  bool allow_any = false;  // lift the s in {4,5,6}, l = 7 restriction
};

SdpProblem assemble_problem(std::uint32_t s, std::size_t l = 7, const AssembleOptions& options = {});

// Reads $MONOFLAG_CACHE_DIR/words<s>_l<l>.dat-s when present, otherwise assembles
// and stores it there. Without the variable this is assemble_problem.
SdpProblem assemble_problem_cached(std::uint32_t s, std::size_t l = 7, const AssembleOptions& options = {});

void write_sdpa_sparse(std::ostream& out, const SdpProblem& p, bool provenance_header = false);
void write_sdpa_sparse_file(const std::string& path, const SdpProblem& p, bool provenance_header = false);

// Accepts our own output and ordinary SDPA sparse files: '"' and '*' comment
// lines, and the punctuation ",{}()" are skipped. Matrix entries must be integral.
SdpProblem parse_sdpa_sparse(std::istream& in);
SdpProblem parse_sdpa_sparse_file(const std::string& path);

// Exact LDL^T test on a dense symmetric row-major matrix.
bool is_psd_exact(std::span<const Rational> a, std::size_t n);

// min_j (a_j - sum_i <Q_i, block_i(A_j)>) / scale. One dense row-major Q per
// non-diagonal block.
Rational lower_bound_from_Q(const SdpProblem& p, std::span<const std::vector<Rational>> q, bool check_psd = true);

std::size_t variable_count(const SdpProblem& p);

}  // namespace monoflag

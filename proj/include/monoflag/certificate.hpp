#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monoflag/exact.hpp"
#include "monoflag/sdp.hpp"

namespace monoflag {

// Integer lower-triangular factor of one block. Dense blocks keep the lower
// triangle row-major (row i holds i+1 entries); diagonal blocks keep the diagonal.
struct CertBlock {
  std::size_t order = 0;
  bool diagonal = false;
  std::vector<BigInt> entries;

  static CertBlock zeros(std::size_t order, bool diagonal);
  BigInt& at(std::size_t i, std::size_t j);
  const BigInt& at(std::size_t i, std::size_t j) const;
};

struct Certificate {
  std::uint32_t s = 0;
  BigInt D = 1000000;
  std::vector<CertBlock> blocks;
  std::optional<std::string> delta;  // solver tolerance, kept as provenance only

  BigInt min_diagonal() const;
};

struct VerifiedBound {
  BigInt trace_CM;
  Rational epsilon;  // max_j |b_j|
  Rational bound;    // (trace_CM / D^2 - epsilon) / scale
  std::size_t max_violation_index = 0;  // 1-based constraint
  BigInt min_diagonal;
};

// Floating block of a solver's primal matrix; dense row-major or diagonal.
struct FloatBlock {
  std::size_t order = 0;
  bool diagonal = false;
  std::vector<double> values;
};

// CSDP/SDPA solution file: the y vector (m numbers), then "matno block i j value"
// lines where matno 1 is Z and matno 2 is X. Returns the X blocks.
std::vector<FloatBlock> read_csdp_solution(std::istream& in, const SdpProblem& p);

Certificate round_solution(const std::vector<FloatBlock>& x, const BigInt& D, std::uint32_t s = 0);

VerifiedBound verify_certificate(const SdpProblem& p, const Certificate& c, unsigned threads = 1);

void write_certificate(std::ostream& out, const Certificate& c);
Certificate read_certificate(std::istream& in);

// Best effort for externally produced factor files: either "[matno] block i j value"
// integer lines, or a bare stream of the lower triangles block after block.
Certificate read_external_certificate(std::istream& in, const SdpProblem& p, const BigInt& D);

std::string verification_report(const VerifiedBound& v, const Certificate& c);

}  // namespace monoflag

#include "monoflag/certificate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <istream>
#include "json.hpp"
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace monoflag {

CertBlock CertBlock::zeros(std::size_t order, bool diagonal) {
  CertBlock b;
  b.order = order;
  b.diagonal = diagonal;
  b.entries.assign(diagonal ? order : order * (order + 1) / 2, BigInt(0));
  return b;
}

BigInt& CertBlock::at(std::size_t i, std::size_t j) {
  return const_cast<BigInt&>(static_cast<const CertBlock&>(*this).at(i, j));
}

const BigInt& CertBlock::at(std::size_t i, std::size_t j) const {
  if (j > i || i >= order) throw std::out_of_range("certificate entry outside the lower triangle");
  if (diagonal) {
    if (i != j) throw std::out_of_range("off-diagonal entry of a diagonal block");
    return entries[i];
  }
  return entries[i * (i + 1) / 2 + j];
}

BigInt Certificate::min_diagonal() const {
  std::optional<BigInt> best;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.order; ++i)
      if (!best || b.at(i, i) < *best) best = b.at(i, i);
  return best.value_or(BigInt(0));
}

std::vector<FloatBlock> read_csdp_solution(std::istream& in, const SdpProblem& p) {
  std::vector<FloatBlock> x;
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
    FloatBlock fb;
    fb.order = p.block_order(b);
    fb.diagonal = p.block_diagonal(b);
    fb.values.assign(fb.diagonal ? fb.order : fb.order * fb.order, 0.0);
    x.push_back(std::move(fb));
  }
  double skip = 0;
  for (std::size_t j = 0; j < p.m(); ++j)
    if (!(in >> skip)) throw std::runtime_error("solution file ended inside the y vector");
  long matno = 0, block = 0, i = 0, j = 0;
  double v = 0;
  while (in >> matno) {
    if (!(in >> block >> i >> j >> v)) throw std::runtime_error("truncated entry in solution file");
    if (matno != 2) continue;
    if (block < 1 || static_cast<std::size_t>(block) > x.size()) throw std::runtime_error("solution block out of range");
    auto& fb = x[static_cast<std::size_t>(block - 1)];
    if (i < 1 || j < 1 || static_cast<std::size_t>(std::max(i, j)) > fb.order)
      throw std::runtime_error("solution entry outside its block");
    if (fb.diagonal) {
      if (i != j) throw std::runtime_error("off-diagonal entry in a diagonal solution block");
      fb.values[static_cast<std::size_t>(i - 1)] = v;
    } else {
      fb.values[static_cast<std::size_t>((i - 1)) * fb.order + static_cast<std::size_t>(j - 1)] = v;
      fb.values[static_cast<std::size_t>((j - 1)) * fb.order + static_cast<std::size_t>(i - 1)] = v;
    }
  }
  return x;
}

namespace {

BigInt round_scaled(double value, const BigInt& D) {
  // D * value rounded to nearest; D may exceed double range only in theory
  mpf_class f(value, 256);
  f *= mpf_class(D, 256);
  f += f >= 0 ? 0.5 : -0.5;
  mpf_class t(0, 256);
  mpf_trunc(t.get_mpf_t(), f.get_mpf_t());
  return BigInt(t);
}

}  // namespace

Certificate round_solution(const std::vector<FloatBlock>& x, const BigInt& D, std::uint32_t s) {
  if (D <= 0) throw std::invalid_argument("D must be positive");
  Certificate c;
  c.s = s;
  c.D = D;
  for (std::size_t b = 0; b < x.size(); ++b) {
    const auto& fb = x[b];
    CertBlock out = CertBlock::zeros(fb.order, fb.diagonal);
    if (fb.diagonal) {
      for (std::size_t i = 0; i < fb.order; ++i) {
        const double v = fb.values[i];
        if (v < 0) throw std::runtime_error("block " + std::to_string(b + 1) + " has a negative diagonal entry");
        out.at(i, i) = round_scaled(std::sqrt(v), D);
      }
    } else {
      const auto n = static_cast<Eigen::Index>(fb.order);
      Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(fb.values.data(), n, n);
      m = (m + m.transpose()).eval() * 0.5;
      Eigen::LLT<Eigen::MatrixXd> llt(m);
      for (int attempt = 0; llt.info() != Eigen::Success && attempt < 3; ++attempt) {
        m += 1e-12 * Eigen::MatrixXd::Identity(n, n);
        llt.compute(m);
      }
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("Cholesky failed on block " + std::to_string(b + 1) +
                                 ": solution too close to the PSD boundary");
      const Eigen::MatrixXd l = llt.matrixL();
      for (std::size_t i = 0; i < fb.order; ++i)
        for (std::size_t j = 0; j <= i; ++j)
          out.at(i, j) = round_scaled(l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), D);
    }
    for (std::size_t i = 0; i < out.order; ++i)
      if (out.at(i, i) <= 0)
        throw std::runtime_error("rounded diagonal entry " + std::to_string(i + 1) + " of block " + std::to_string(b + 1) +
                                 " is not positive; use a larger D");
    c.blocks.push_back(std::move(out));
  }
  return c;
}

namespace {

// Lower triangle of L L^T, same packing as CertBlock.
CertBlock gram(const CertBlock& l) {
  CertBlock m = CertBlock::zeros(l.order, l.diagonal);
  if (l.diagonal) {
    for (std::size_t i = 0; i < l.order; ++i) m.entries[i] = l.entries[i] * l.entries[i];
    return m;
  }
  for (std::size_t i = 0; i < l.order; ++i) {
    const BigInt* ri = &l.entries[i * (i + 1) / 2];
    for (std::size_t j = 0; j <= i; ++j) {
      const BigInt* rj = &l.entries[j * (j + 1) / 2];
      mpz_ptr acc = m.entries[i * (i + 1) / 2 + j].get_mpz_t();
      for (std::size_t k = 0; k <= j; ++k) mpz_addmul(acc, ri[k].get_mpz_t(), rj[k].get_mpz_t());
    }
  }
  return m;
}

BigInt trace_with(const std::vector<SdpEntry>& entries, const std::vector<CertBlock>& gram_blocks) {
  BigInt sum = 0, term;
  for (const auto& e : entries) {
    const BigInt& mij = gram_blocks[e.block - 1].at(e.j - 1, e.i - 1);
    term = mij * e.value;
    if (e.i != e.j) term *= 2;
    sum += term;
  }
  return sum;
}

}  // namespace

VerifiedBound verify_certificate(const SdpProblem& p, const Certificate& c, unsigned threads) {
  if (c.blocks.size() != p.block_sizes.size())
    throw std::invalid_argument("certificate has " + std::to_string(c.blocks.size()) + " blocks, problem has " +
                                std::to_string(p.block_sizes.size()));
  if (c.D <= 0) throw std::invalid_argument("certificate D must be positive");
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    const auto& blk = c.blocks[b];
    if (blk.order != p.block_order(b) || blk.diagonal != p.block_diagonal(b))
      throw std::invalid_argument("certificate block " + std::to_string(b + 1) + " does not match the problem");
    const std::size_t want = blk.diagonal ? blk.order : blk.order * (blk.order + 1) / 2;
    if (blk.entries.size() != want) throw std::invalid_argument("certificate block " + std::to_string(b + 1) + " has the wrong entry count");
    for (std::size_t i = 0; i < blk.order; ++i)
      if (blk.at(i, i) <= 0)
        throw std::invalid_argument("certificate rejected: diagonal entry " + std::to_string(i + 1) + " of block " +
                                    std::to_string(b + 1) + " is not positive");
  }

  std::vector<CertBlock> m(c.blocks.size());
  for (std::size_t b = 0; b < c.blocks.size(); ++b) m[b] = gram(c.blocks[b]);

  const BigInt d2 = c.D * c.D;
  std::vector<BigInt> violation(p.m());
  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t j = from; j < to; ++j) {
      violation[j] = trace_with(p.constraints[j], m) - BigInt(static_cast<long>(p.a[j])) * d2;
      violation[j] = abs(violation[j]);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work(0, p.m());
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, p.m() * t / threads, p.m() * (t + 1) / threads);
    for (auto& th : pool) th.join();
  }

  VerifiedBound v;
  v.trace_CM = trace_with(p.c, m);
  BigInt worst = 0;
  for (std::size_t j = 0; j < p.m(); ++j)
    if (violation[j] > worst || j == 0) {
      worst = violation[j];
      v.max_violation_index = j + 1;
    }
  v.epsilon = make_rational(worst, d2);
  v.bound = make_rational(v.trace_CM - worst, d2 * p.scale);
  v.min_diagonal = c.min_diagonal();
  return v;
}

void write_certificate(std::ostream& out, const Certificate& c) {
  out << "MONOCERT v1\n";
  out << "s=" << c.s << " D=" << c.D << " blocks=" << c.blocks.size() << "\n";
  if (c.delta) out << "# delta=" << *c.delta << "\n";
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    const auto& blk = c.blocks[b];
    out << "block " << b + 1 << ' ' << blk.order << ' ' << (blk.diagonal ? "diag" : "lower") << "\n";
    if (blk.diagonal) {
      for (const auto& v : blk.entries) out << v << "\n";
      continue;
    }
    for (std::size_t i = 0; i < blk.order; ++i) {
      for (std::size_t j = 0; j <= i; ++j) out << (j ? " " : "") << blk.at(i, j);
      out << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed while emitting certificate");
}

namespace {

std::string value_after(const std::string& field, const std::string& name) {
  if (field.rfind(name + "=", 0) != 0) throw std::runtime_error("expected " + name + "=, got '" + field + "'");
  return field.substr(name.size() + 1);
}

}  // namespace

Certificate read_certificate(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("MONOCERT v1", 0) != 0) throw std::runtime_error("not a MONOCERT v1 file");
  Certificate c;
  std::string fs, fd, fb;
  if (!std::getline(in, line)) throw std::runtime_error("certificate header truncated");
  {
    std::istringstream h(line);
    if (!(h >> fs >> fd >> fb)) throw std::runtime_error("bad certificate header line");
    c.s = static_cast<std::uint32_t>(std::stoul(value_after(fs, "s")));
    c.D = BigInt(value_after(fd, "D"));
  }
  const std::size_t count = std::stoul(value_after(fb, "blocks"));

  std::stringstream body;
  while (std::getline(in, line)) {
    if (line.rfind("# delta=", 0) == 0) {
      c.delta = line.substr(8);
      continue;
    }
    if (!line.empty() && line[0] == '#') continue;
    body << line << '\n';
  }
  for (std::size_t b = 0; b < count; ++b) {
    std::string word, kind;
    std::size_t idx = 0, order = 0;
    if (!(body >> word >> idx >> order >> kind) || word != "block" || idx != b + 1 || (kind != "diag" && kind != "lower"))
      throw std::runtime_error("bad header for certificate block " + std::to_string(b + 1));
    CertBlock blk = CertBlock::zeros(order, kind == "diag");
    for (auto& v : blk.entries) {
      std::string tok;
      if (!(body >> tok)) throw std::runtime_error("certificate block " + std::to_string(b + 1) + " truncated");
      if (v.set_str(tok, 10) != 0) throw std::runtime_error("non-integer certificate entry '" + tok + "'");
    }
    c.blocks.push_back(std::move(blk));
  }
  std::string extra;
  if (body >> extra) throw std::runtime_error("trailing data after the last certificate block");
  return c;
}

Certificate read_external_certificate(std::istream& in, const SdpProblem& p, const BigInt& D) {
  Certificate c;
  c.s = p.s;
  c.D = D;
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) c.blocks.push_back(CertBlock::zeros(p.block_order(b), p.block_diagonal(b)));

  std::vector<std::vector<std::string>> rows;
  std::size_t tokens = 0;
  std::string line;
  while (std::getline(in, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == '[' || ch == ']' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    std::istringstream ls(line);
    std::vector<std::string> row;
    for (std::string t; ls >> t;) row.push_back(t);
    if (row.empty() || row[0][0] == '#' || row[0][0] == '"') continue;
    tokens += row.size();
    rows.push_back(std::move(row));
  }
  auto to_int = [](const std::string& t) {
    BigInt v;
    if (v.set_str(t, 10) == 0) return v;
    Rational q = parse_rational(t);
    if (q.get_den() != 1) throw std::runtime_error("non-integer certificate entry '" + t + "'");
    return BigInt(q.get_num());
  };

  std::size_t dense_total = 0;
  for (const auto& blk : c.blocks) dense_total += blk.entries.size();
  const bool sparse = std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return r.size() == 4 || r.size() == 5; }) &&
                      tokens != dense_total;
  if (sparse) {
    for (const auto& r : rows) {
      const std::size_t off = r.size() - 4;
      const std::size_t b = std::stoul(r[off]), i = std::stoul(r[off + 1]), j = std::stoul(r[off + 2]);
      if (b < 1 || b > c.blocks.size()) throw std::runtime_error("certificate block out of range");
      c.blocks[b - 1].at(std::max(i, j) - 1, std::min(i, j) - 1) = to_int(r[off + 3]);
    }
    return c;
  }
  if (tokens != dense_total)
    throw std::runtime_error("unrecognised certificate layout: " + std::to_string(tokens) + " numbers, expected " +
                             std::to_string(dense_total));
  std::size_t b = 0, k = 0;
  for (const auto& r : rows)
    for (const auto& t : r) {
      while (k == c.blocks[b].entries.size()) {
        ++b;
        k = 0;
      }
      c.blocks[b].entries[k++] = to_int(t);
    }
  return c;
}

std::string verification_report(const VerifiedBound& v, const Certificate& c) {
  nlohmann::ordered_json j;
  j["s"] = c.s;
  j["D"] = c.D.get_str();
  j["trace_CM"] = v.trace_CM.get_str();
  j["epsilon"] = to_fraction_string(v.epsilon);
  j["bound"] = {{"fraction", to_fraction_string(v.bound)}, {"decimal", to_decimal_string(v.bound, 10)}};
  j["max_violation_index"] = v.max_violation_index;
  j["min_diagonal"] = v.min_diagonal.get_str();
  if (c.delta) j["delta"] = *c.delta;
  return j.dump(2);
}

}  // namespace monoflag

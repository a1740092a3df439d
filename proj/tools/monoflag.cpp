// monoflag command line: counting, constructions, h_s, word graphs, flags,
// SDP generation, certificate rounding and verification, brute force.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "monoflag/certificate.hpp"
#include "monoflag/constructions.hpp"
#include "monoflag/flags.hpp"
#include "monoflag/hs_poly.hpp"
#include "monoflag/oracle.hpp"
#include "monoflag/sdp.hpp"
#include "monoflag/word.hpp"
#include "monoflag/word_graph.hpp"

using namespace monoflag;
using nlohmann::ordered_json;

namespace {

ordered_json big(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct ProblemArgs {
  std::string file;
  std::uint32_t s = 0;
  std::size_t l = 7;
  bool allow_any = false;
};

SdpProblem load_problem(const ProblemArgs& args, unsigned threads) {
  if (!args.file.empty()) return parse_sdpa_sparse_file(args.file);
  if (args.s == 0) throw std::invalid_argument("give --problem FILE or --s");
  SdpProblem p = assemble_problem_cached(args.s, args.l, {.threads = threads, .allow_any = args.allow_any});
  return p;
}

void add_problem_options(CLI::App* cmd, ProblemArgs& args) {
  cmd->add_option("--problem", args.file, "SDPA sparse file of the problem");
  cmd->add_option("--s", args.s, "assemble the problem for this alphabet size instead");
  cmd->add_option("--l", args.l, "host order when assembling")->capture_default_str();
  cmd->add_flag("--allow-any", args.allow_any, "allow s outside {4,5,6} or l != 7");
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone subword densities: constructions, flag-algebra SDPs and certificates"};
  app.require_subcommand(1);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // count
  auto* count = app.add_subcommand("count", "monotone k-subword counts of a word");
  std::string word_text;
  std::size_t k = 3;
  std::uint32_t alphabet = 0;
  count->add_option("--word", word_text, "digits, or comma separated letters")->required();
  count->add_option("--k", k, "subword length")->required();
  count->add_option("--alphabet", alphabet, "alphabet size (default: smallest that fits)");

  // construct
  auto* construct = app.add_subcommand("construct", "explicit word families");
  construct->require_subcommand(1);
  std::size_t n = 0, y = 0;
  std::uint32_t s = 0;
  std::string x_text, perm_text;
  auto* c_alt = construct->add_subcommand("alternating", "0101...");
  c_alt->add_option("--n", n)->required();
  auto* c_proper = construct->add_subcommand("proper", "1^y 0202...20 1^y");
  c_proper->add_option("--n", n)->required();
  c_proper->add_option("--y", y)->required();
  auto* c_folded = construct->add_subcommand("folded", "palindromic folded form F_s(x)");
  c_folded->add_option("--s", s)->required();
  c_folded->add_option("--x", x_text, "comma separated fractions, e.g. 0.2,0.25 or 1/5,1/4")->required();
  c_folded->add_option("--n", n)->required();
  auto* c_bucket = construct->add_subcommand("bucketed", "word from a permutation by value buckets");
  c_bucket->add_option("--s", s)->required();
  c_bucket->add_option("--perm", perm_text, "one-line notation, comma separated; default: a minimiser for --n, --k");
  c_bucket->add_option("--n", n);
  c_bucket->add_option("--k", k);

  // hs
  auto* hs = app.add_subcommand("hs", "the polynomial h_s");
  bool minimize = false;
  hs->add_option("--s", s)->required();
  hs->add_flag("--minimize", minimize, "also minimise over the simplex");

  // graphs
  auto* graphs = app.add_subcommand("graphs", "word graph enumeration");
  std::size_t l = 7;
  bool count_only = false, table2 = false;
  std::string out_path;
  graphs->add_option("--s", s);
  graphs->add_option("--l", l)->capture_default_str();
  graphs->add_flag("--count-only", count_only);
  graphs->add_flag("--table2", table2, "|G(s,l)| for s = 2..7 and l = 2..L");
  graphs->add_option("--out", out_path);

  // flags
  auto* flags = app.add_subcommand("flags", "flag list sizes of the nine types");
  flags->add_option("--s", s)->required();
  flags->add_option("--l", l)->capture_default_str();

  // gen-sdp
  auto* gen = app.add_subcommand("gen-sdp", "emit the SDP in SDPA sparse format");
  bool allow_any = false, header = false;
  gen->add_option("--s", s)->required();
  gen->add_option("--l", l)->capture_default_str();
  gen->add_option("--out", out_path);
  gen->add_flag("--allow-any", allow_any, "allow s outside {4,5,6} or l != 7");
  gen->add_flag("--header", header, "write a provenance comment line");

  // round
  auto* round = app.add_subcommand("round", "integer certificate from a solver's primal matrix");
  ProblemArgs round_problem;
  std::string solution_path, D_text = "1000000", delta;
  add_problem_options(round, round_problem);
  round->add_option("--solution", solution_path, "CSDP/SDPA solution file")->required();
  round->add_option("--D", D_text)->capture_default_str();
  round->add_option("--delta", delta, "solver tolerance, recorded as metadata");
  round->add_option("--out", out_path);

  // verify
  auto* verify = app.add_subcommand("verify", "exact verification of a certificate");
  ProblemArgs verify_problem;
  std::string cert_path;
  bool external = false;
  add_problem_options(verify, verify_problem);
  verify->add_option("--cert", cert_path)->required();
  verify->add_flag("--external", external, "read a factor file in a foreign layout");
  verify->add_option("--D", D_text, "scale of an external factor file")->capture_default_str();

  // brute
  auto* brute = app.add_subcommand("brute", "exhaustive minimum of m(k,w)");
  double guard = 2e7;
  brute->add_option("--s", s)->required();
  brute->add_option("--k", k)->required();
  brute->add_option("--n", n)->required();
  brute->add_option("--guard", guard)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*count) {
      const Word w = Word::parse(word_text, alphabet);
      const MonotoneCount c = count_monotone(w, k);
      ordered_json j;
      j["word"] = w.str();
      j["k"] = k;
      j["nondecreasing"] = big(c.nondecreasing);
      j["nonincreasing"] = big(c.nonincreasing);
      j["constant"] = big(c.constant);
      j["total"] = big(c.total);
      j["density"] = to_fraction_string(monotone_density(w, k));
      std::cout << j.dump() << "\n";
    } else if (*construct) {
      Word w;
      if (*c_alt) {
        w = alternating_word(n);
      } else if (*c_proper) {
        w = proper_form_word(n, y);
      } else if (*c_folded) {
        std::vector<Rational> x;
        for (const auto& item : split_list(x_text)) x.push_back(parse_rational(item));
        w = folded_word(s, x, n);
      } else {
        std::vector<std::size_t> pi;
        if (!perm_text.empty()) {
          for (const auto& item : split_list(perm_text)) pi.push_back(std::stoul(item));
        } else {
          if (n == 0) throw std::invalid_argument("give --perm or --n and --k");
          pi = min_monotone_permutation(n, k).permutation;
        }
        w = bucketed_word(pi, s);
      }
      std::cout << w.str() << "\n";
    } else if (*hs) {
      const MultiPoly p = generate_hs(s);
      std::cout << p.str() << "\n";
      if (minimize) {
        const SimplexMin m = minimize_simplex(p);
        ordered_json j;
        j["s"] = s;
        j["point"] = m.point;
        j["value"] = m.value;
        j["gradient_norm_at_point"] = m.gradient_norm_at_point;
        j["zero_coordinates"] = m.zero_coordinates;
        j["sum_at_bound"] = m.sum_at_bound;
        std::cout << j.dump() << "\n";
      }
    } else if (*graphs) {
      if (table2) {
        std::cout << "s\\l";
        for (std::size_t col = 2; col <= l; ++col) std::cout << ' ' << col;
        std::cout << "\n";
        for (std::uint32_t row = 2; row <= 7; ++row) {
          std::cout << row;
          for (std::size_t col = 2; col <= l; ++col)
            std::cout << ' ' << enumerate_word_graphs(row, col, {.max_order = 8, .threads = threads}).size();
          std::cout << "\n";
        }
      } else {
        if (s == 0) throw std::invalid_argument("--s is required");
        const auto set = enumerate_word_graphs(s, l, {.max_order = 8, .threads = threads});
        std::ofstream file;
        std::ostream& out = open_out(out_path, file);
        if (count_only) out << set.size() << "\n";
        else write_graph_set(out, s, l, set);
      }
    } else if (*flags) {
      ordered_json j;
      j["s"] = s;
      j["l"] = l;
      j["sizes"] = ordered_json::array();
      for (const auto& spec : default_types(s, l)) {
        const std::size_t order = spec.flag_order;
        j["sizes"].push_back(enumerate_flags(spec.type, order, s).size());
      }
      std::cout << j.dump() << "\n";
    } else if (*gen) {
      const SdpProblem p = assemble_problem(s, l, {.threads = threads, .allow_any = allow_any});
      std::ofstream file;
      std::ostream& out = open_out(out_path, file);
      write_sdpa_sparse(out, p, header);
      out.flush();
      if (!out) throw std::runtime_error("write failed");
    } else if (*round) {
      const SdpProblem p = load_problem(round_problem, threads);
      std::ifstream in(solution_path);
      if (!in) throw std::runtime_error("cannot open " + solution_path);
      Certificate c = round_solution(read_csdp_solution(in, p), BigInt(D_text), p.s);
      if (!delta.empty()) c.delta = delta;
      std::ofstream file;
      std::ostream& out = open_out(out_path, file);
      write_certificate(out, c);
      std::cerr << "min diagonal " << c.min_diagonal() << "\n";
    } else if (*verify) {
      const SdpProblem p = load_problem(verify_problem, threads);
      std::ifstream in(cert_path);
      if (!in) throw std::runtime_error("cannot open " + cert_path);
      const Certificate c = external ? read_external_certificate(in, p, BigInt(D_text)) : read_certificate(in);
      const VerifiedBound v = verify_certificate(p, c, threads);
      std::cout << verification_report(v, c) << "\n";
    } else if (*brute) {
      const BruteResult r = brute_min(s, k, n, {.guard = guard, .threads = threads});
      ordered_json j;
      j["s"] = s;
      j["k"] = k;
      j["n"] = n;
      j["min_count"] = big(r.min_count);
      j["density"] = to_fraction_string(make_rational(r.min_count, binomial(n, k)));
      j["minimizers"] = ordered_json::array();
      for (const auto& w : r.minimizers) j["minimizers"].push_back(w.str());
      std::cout << j.dump() << "\n";
    }
  } catch (const std::exception& e) {
    std::string reason = e.what();
    for (char& ch : reason)
      if (ch == '\n') ch = ' ';
    std::cerr << "error: " << reason << "\n";
    return 1;
  }
  return 0;
}

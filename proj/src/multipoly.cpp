#include "monoflag/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace monoflag {

MultiPoly MultiPoly::constant(std::size_t variables, const Rational& c) {
  MultiPoly p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t variables, std::size_t index) {
  if (index >= variables) throw std::out_of_range("variable index out of range");
  MultiPoly p(variables);
  Exponents e(variables, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

unsigned MultiPoly::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != variables_) throw std::invalid_argument("monomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_arity(other.variables_);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_arity(other.variables_);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_arity(b.variables_);
  MultiPoly out(a.variables_);
  Exponents e(a.variables_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

void MultiPoly::check_arity(std::size_t n) const {
  if (n != variables_)
    throw std::invalid_argument("arity mismatch: polynomial has " + std::to_string(variables_) +
                                " variables, got " + std::to_string(n));
}

Rational MultiPoly::evaluate(std::span<const Rational> x) const {
  check_arity(x.size());
  Rational sum;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned p = 0; p < e[i]; ++p) term *= x[i];
    sum += term;
  }
  return sum;
}

double MultiPoly::evaluate(std::span<const double> x) const {
  check_arity(x.size());
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(x[i], static_cast<int>(e[i]));
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::derivative(std::size_t index) const {
  if (index >= variables_) throw std::out_of_range("variable index out of range");
  MultiPoly out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    --d[index];
    out.add_term(d, c * Rational(e[index]));
  }
  return out;
}

std::vector<Rational> MultiPoly::gradient(std::span<const Rational> x) const {
  check_arity(x.size());
  std::vector<Rational> g;
  g.reserve(variables_);
  for (std::size_t i = 0; i < variables_; ++i) g.push_back(derivative(i).evaluate(x));
  return g;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    unsigned da = std::accumulate(a.first.begin(), a.first.end(), 0u);
    unsigned db = std::accumulate(b.first.begin(), b.first.end(), 0u);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool is_constant = std::all_of(e.begin(), e.end(), [](unsigned p) { return p == 0; });
    std::string monomial;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += "x" + std::to_string(i + 1);
      if (e[i] > 1) monomial += "^" + std::to_string(e[i]);
    }
    if (is_constant) {
      out += to_fraction_string(mag);
    } else if (mag == 1) {
      out += monomial;
    } else {
      out += to_fraction_string(mag) + "*" + monomial;
    }
  }
  return out;
}

std::vector<CompiledPoly::Term> CompiledPoly::lower(const MultiPoly& p) {
  std::vector<Term> out;
  for (const auto& [e, c] : p.terms()) out.push_back({e, c.get_d()});
  return out;
}

CompiledPoly::CompiledPoly(const MultiPoly& p) : n_(p.variables()), value_(lower(p)) {
  for (std::size_t i = 0; i < n_; ++i) {
    MultiPoly di = p.derivative(i);
    gradient_.push_back(lower(di));
    for (std::size_t j = 0; j < n_; ++j) hessian_.push_back(lower(di.derivative(j)));
  }
}

double CompiledPoly::eval_terms(const std::vector<Term>& terms, std::span<const double> x) {
  double sum = 0;
  for (const auto& t : terms) {
    double v = t.coefficient;
    for (std::size_t i = 0; i < t.exponents.size(); ++i)
      for (unsigned p = 0; p < t.exponents[i]; ++p) v *= x[i];
    sum += v;
  }
  return sum;
}

double CompiledPoly::value(std::span<const double> x) const { return eval_terms(value_, x); }

void CompiledPoly::gradient(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < n_; ++i) out[i] = eval_terms(gradient_[i], x);
}

void CompiledPoly::hessian(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < n_ * n_; ++i) out[i] = eval_terms(hessian_[i], x);
}

}  // namespace monoflag

#include "monoflag/exact.hpp"

#include <cctype>
#include <stdexcept>

namespace monoflag {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0)
      throw std::invalid_argument("malformed fraction: " + text);
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return make_rational(num, den);
  }
  // decimal with optional exponent
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false, seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number: " + text);
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw std::invalid_argument("malformed number: " + text);
    try {
      std::size_t used = 0;
      exponent = std::stol(text.substr(pos + 1), &used);
      if (pos + 1 + used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent: " + text);
    }
  }
  BigInt num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - scale;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(num * ten_pow) : make_rational(num, ten_pow);
}

std::string to_decimal_string(const Rational& q, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt num = q.get_num() * scale;
  BigInt den = q.get_den();
  // truncation toward zero
  BigInt quotient;
  mpz_tdiv_q(quotient.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  bool negative = quotient < 0 || (quotient == 0 && q < 0);
  BigInt mag = abs(quotient);
  std::string s = mag.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (negative ? "-" : "") + s;
}

}  // namespace monoflag

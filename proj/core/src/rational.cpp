#include "freeprob/rational.hpp"

#include "freeprob/error.hpp"

#include <cctype>
#include <charconv>

namespace freeprob {

namespace {

BigInt parse_integer(std::string_view digits) {
  if (digits.empty()) {
    throw DomainError("empty integer literal");
  }
  std::size_t start = (digits.front() == '-' || digits.front() == '+') ? 1 : 0;
  if (start == digits.size()) {
    throw DomainError("malformed integer literal");
  }
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
      throw DomainError("malformed integer literal: " + std::string(digits));
    }
  }
  // Leading zeros would make GMP read the literal as octal.
  const bool negative = digits.front() == '-';
  std::string_view body = digits.substr(start);
  while (body.size() > 1 && body.front() == '0') {
    body.remove_prefix(1);
  }
  BigInt value(std::string{body});
  return negative ? BigInt(-value) : value;
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= 10;
  }
  return r;
}

Rational parse_decimal(std::string_view text) {
  int exponent = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string_view::npos) {
    auto exp_text = text.substr(epos + 1);
    if (!exp_text.empty() && exp_text.front() == '+') {
      exp_text.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) {
      throw DomainError("malformed exponent in: " + std::string(text));
    }
    text = text.substr(0, epos);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string digits;
  int frac_len = 0;
  if (dot == std::string_view::npos) {
    digits = std::string(text);
  } else {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_len = static_cast<int>(text.size() - dot - 1);
  }
  if (digits.empty()) {
    throw DomainError("malformed number: " + std::string(text));
  }
  Rational value(parse_integer(digits));
  int scale = exponent - frac_len;
  if (scale >= 0) {
    value *= Rational(pow10(static_cast<unsigned>(scale)));
  } else {
    value /= Rational(pow10(static_cast<unsigned>(-scale)));
  }
  return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) {
    throw DomainError("empty rational literal");
  }
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) {
      throw DomainError("zero denominator in: " + std::string(text));
    }
    return Rational(num, den);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) {
    return parse_decimal(text);
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) {
    return numerator(value).str();
  }
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) {
      throw DomainError("zero raised to a negative power");
    }
    return Rational(1) / pow(base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) {
      result *= b;
    }
    b *= b;
    e >>= 1U;
  }
  return result;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) {
    r *= i;
  }
  return r;
}

} // namespace freeprob

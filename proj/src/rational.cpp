#include "covmin/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace covmin {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 magnitude(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

// Decimal literal with optional sign, fraction and exponent.
Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  i128 digits = 0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  constexpr i128 kDigitCap = static_cast<i128>(1) << 100;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) bad_literal(text);
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) break;
    any_digit = true;
    if (digits > kDigitCap) throw std::overflow_error("rational literal has too many digits");
    digits = digits * 10 + (c - '0');
    if (seen_point) --scale;
  }
  if (!any_digit) bad_literal(text);

  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    int exponent = 0;
    bool any_exp_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      any_exp_digit = true;
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 60) throw std::overflow_error("rational literal exponent out of range");
    }
    if (!any_exp_digit) bad_literal(text);
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) bad_literal(text);
  if (scale > 36 || scale < -36) throw std::overflow_error("rational literal exponent out of range");

  i128 power = 1;
  for (int s = 0; s < (scale < 0 ? -scale : scale); ++s) power *= 10;
  // Reduce while still wide, then narrow.
  i128 num = negative ? -digits : digits;
  i128 den = 1;
  if (scale >= 0) {
    num *= power;
  } else {
    den = power;
  }
  u128 g = gcd(magnitude(num), magnitude(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational literal out of 64-bit range");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd(magnitude(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) bad_literal(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational top = parse_decimal(trim(text.substr(0, slash)));
  Rational bottom = parse_decimal(trim(text.substr(slash + 1)));
  if (bottom.num_ == 0) throw std::domain_error("rational literal with zero denominator");
  return top / bottom;
}

std::int64_t Rational::floor() const { return static_cast<std::int64_t>(floor_div(num_, den_)); }

std::int64_t Rational::ceil() const { return static_cast<std::int64_t>(-floor_div(-static_cast<i128>(num_), den_)); }

double Rational::to_double() const {
  // Exact when both parts are below 2^53; long double keeps the remaining
  // cases within one rounding of nearest.
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  if (num_ > -kExact && num_ < kExact && den_ < kExact) {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                    static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                    static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  return static_cast<i128>(lhs.num_) * rhs.den_ <=> static_cast<i128>(rhs.num_) * lhs.den_;
}

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

const Rational& min(const Rational& lhs, const Rational& rhs) { return rhs < lhs ? rhs : lhs; }

const Rational& max(const Rational& lhs, const Rational& rhs) { return lhs < rhs ? rhs : lhs; }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace covmin

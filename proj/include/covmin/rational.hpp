#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace covmin {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Components are 64-bit; every intermediate product is formed in 128 bits
/// and reduced before being narrowed back, so ordinary sample-size work
/// (denominators up to ~1e12) never loses exactness. A result that does not
/// fit after reduction raises std::overflow_error rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);  // NOLINT(google-explicit-constructor)

  /// Accepts "7", "-3/20", "0.05", "1e-3", "2.5E2" and "1.5/4".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  std::int64_t floor() const;
  std::int64_t ceil() const;
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  /// Nearest binary64 value.
  double to_double() const;

  /// Always "num/den", e.g. "5/1" for an integer.
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& value);
const Rational& min(const Rational& lhs, const Rational& rhs);
const Rational& max(const Rational& lhs, const Rational& rhs);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace covmin

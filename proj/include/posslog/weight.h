#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace posslog {

/// An exact rational degree in [0, 1].
///
/// Used both for certainty levels of weighted clauses and for possibility
/// degrees of interpretations. Values are kept in lowest terms, so equality
/// is structural and golden outputs are reproducible bit for bit.
class Weight {
 public:
  Weight() : value_(0) {}

  // Throws DomainError if the value lies outside [0, 1].
  explicit Weight(const mpq_class& value);
  Weight(long num, long den);

  static Weight zero() { return Weight(); }
  static Weight one() { return Weight(mpq_class(1)); }
  // 2^-exponent.
  static Weight power_of_half(std::uint64_t exponent);

  const mpq_class& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  // 1 - w.
  Weight complement() const;
  // a + b - a*b, i.e. 1 - (1-a)(1-b).
  static Weight either(const Weight& a, const Weight& b);
  Weight operator*(const Weight& other) const;
  // Throws DomainError on a zero divisor or a quotient above 1.
  Weight operator/(const Weight& other) const;

  bool operator==(const Weight& other) const { return value_ == other.value_; }
  std::strong_ordering operator<=>(const Weight& other) const;

  // "0", "1", or "num/den".
  std::string to_string() const;
  // Rounded to `digits` fractional digits.
  std::string to_decimal(int digits = 6) const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

// Accepts "num/den", integers and decimals such as "0.7" or ".25".
// Decimals are read exactly (0.7 == 7/10). Throws ParseError with the offset
// of the offending character relative to `text`, shifted by `offset`.
Weight parse_weight(std::string_view text, std::size_t offset = 0);

}  // namespace posslog

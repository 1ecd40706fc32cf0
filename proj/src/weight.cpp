#include "posslog/weight.h"

#include <cctype>
#include <ostream>

#include "posslog/error.h"

namespace posslog {

Weight::Weight(const mpq_class& value) : value_(value) {
  value_.canonicalize();
  if (sgn(value_) < 0 || value_ > 1) {
    throw DomainError("weight " + value_.get_str() + " outside [0,1]");
  }
}

Weight::Weight(long num, long den) : Weight(mpq_class(num, den)) {}

Weight Weight::power_of_half(std::uint64_t exponent) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  return Weight(mpq_class(mpz_class(1), den));
}

Weight Weight::complement() const { return Weight(mpq_class(1 - value_)); }

Weight Weight::either(const Weight& a, const Weight& b) {
  return Weight(mpq_class(a.value_ + b.value_ - a.value_ * b.value_));
}

Weight Weight::operator*(const Weight& other) const {
  return Weight(mpq_class(value_ * other.value_));
}

Weight Weight::operator/(const Weight& other) const {
  if (other.is_zero()) throw DomainError("division by a zero degree");
  return Weight(mpq_class(value_ / other.value_));
}

std::strong_ordering Weight::operator<=>(const Weight& other) const {
  int c = cmp(value_, other.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Weight::to_string() const { return value_.get_str(); }

std::string Weight::to_decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // Round half up: floor((2*num*scale + den) / (2*den)).
  mpz_class scaled = (2 * value_.get_num() * scale + value_.get_den()) /
                     (2 * value_.get_den());
  mpz_class whole = scaled / scale;
  mpz_class frac = scaled % scale;
  std::string f = frac.get_str();
  if (digits == 0) return whole.get_str();
  return whole.get_str() + "." + std::string(digits - f.size(), '0') + f;
}

std::ostream& operator<<(std::ostream& os, const Weight& w) {
  return os << w.to_string();
}

namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::size_t first_non_digit(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace

Weight parse_weight(std::string_view text, std::size_t offset) {
  if (text.empty()) throw ParseError("missing weight", offset);
  mpq_class q;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (num.empty() || !all_digits(num)) {
      throw ParseError("bad weight numerator", offset + first_non_digit(num));
    }
    if (den.empty() || !all_digits(den)) {
      throw ParseError("bad weight denominator",
                       offset + slash + 1 + first_non_digit(den));
    }
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero weight denominator", offset + slash + 1);
    q = mpq_class(mpz_class{std::string(num)}, d);
  } else {
    auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (!all_digits(whole)) {
      throw ParseError("bad weight", offset + first_non_digit(whole));
    }
    if (!all_digits(frac)) {
      throw ParseError("bad weight", offset + dot + 1 + first_non_digit(frac));
    }
    if (whole.empty() && frac.empty()) throw ParseError("bad weight", offset);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
    q = mpq_class(w * scale + f, scale);
  }
  q.canonicalize();
  if (q > 1) throw ParseError("weight above 1", offset);
  return Weight(q);
}

}  // namespace posslog

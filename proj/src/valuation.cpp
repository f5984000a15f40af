#include "adic/valuation.hpp"

#include <ostream>

#include "adic/error.hpp"

namespace adic {

std::int64_t ExtendedValuation::value() const {
  if (infinite_) fail(ErrorKind::DomainError, "valuation is INFINITY");
  return value_;
}

std::string ExtendedValuation::to_string() const {
  return infinite_ ? std::string("INFINITY") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const ExtendedValuation& v) {
  return os << v.to_string();
}

Magnitude::Magnitude(std::int64_t base_q, ExtendedValuation exponent)
    : base_q_(base_q), exponent_(exponent) {
  if (base_q < 2) fail(ErrorKind::InvalidArgument, "magnitude base must be >= 2");
}

void Magnitude::require_same_base(const Magnitude& other) const {
  if (base_q_ != other.base_q_) {
    fail(ErrorKind::MismatchedField,
         "magnitudes over different bases " + std::to_string(base_q_) +
             " and " + std::to_string(other.base_q_));
  }
}

Magnitude Magnitude::operator*(const Magnitude& other) const {
  require_same_base(other);
  return {base_q_, exponent_ + other.exponent_};
}

Magnitude Magnitude::inverse() const {
  if (is_zero()) fail(ErrorKind::DomainError, "inverse of magnitude zero");
  return {base_q_, -exponent_.value()};
}

Magnitude Magnitude::pow(std::int64_t n) const {
  if (is_zero()) {
    if (n > 0) return *this;
    if (n == 0) return one(base_q_);
    fail(ErrorKind::DomainError, "negative power of magnitude zero");
  }
  return {base_q_, exponent_.value() * n};
}

bool operator==(const Magnitude& a, const Magnitude& b) {
  a.require_same_base(b);
  return a.exponent_ == b.exponent_;
}

std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
  a.require_same_base(b);
  return b.exponent_ <=> a.exponent_;
}

Magnitude max(const Magnitude& a, const Magnitude& b) { return a < b ? b : a; }

std::string Magnitude::to_string() const {
  if (is_zero()) return "0";
  return std::to_string(base_q_) + "^" + std::to_string(-exponent_.value());
}

std::ostream& operator<<(std::ostream& os, const Magnitude& m) {
  return os << m.to_string();
}

namespace {

void require_prime(std::int64_t p) {
  if (!is_prime(p)) {
    fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  }
}

std::int64_t strip(std::int64_t p, BigInt& n) {
  std::int64_t count = 0;
  BigInt quotient, remainder;
  const BigInt bp = p;
  for (;;) {
    boost::multiprecision::divide_qr(n, bp, quotient, remainder);
    if (remainder != 0) return count;
    n = quotient;
    ++count;
  }
}

}  // namespace

ExtendedValuation vp(std::int64_t p, const BigInt& x) {
  require_prime(p);
  if (x == 0) return ExtendedValuation::infinity();
  BigInt n = abs(x);
  return strip(p, n);
}

ExtendedValuation vp(std::int64_t p, const Rational& x) {
  require_prime(p);
  if (x == 0) return ExtendedValuation::infinity();
  BigInt num = abs(numerator(x));
  BigInt den = denominator(x);
  return strip(p, num) - strip(p, den);
}

std::int64_t factorial_valuation(std::int64_t p, std::int64_t j) {
  require_prime(p);
  if (j < 0) fail(ErrorKind::InvalidArgument, "factorial of a negative number");
  std::int64_t total = 0;
  for (std::int64_t power = p; power <= j; power *= p) {
    total += j / power;
    if (power > j / p) break;
  }
  return total;
}

}  // namespace adic

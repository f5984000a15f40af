#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adic/bigint.hpp"
#include "adic/valuation.hpp"

namespace adic {

enum class FieldKind { PAdic, Laurent };

/// Which discretely valued field an element lives in: Q_q or F_q((T)).
///
/// The uniformizer has magnitude rho1 = q^(-rho1_exponent); the standard
/// normalization is rho1_exponent = 1.
struct FieldDescriptor {
  FieldKind kind = FieldKind::PAdic;
  std::int64_t q = 2;
  std::int64_t rho1_exponent = 1;

  static FieldDescriptor padic(std::int64_t p, std::int64_t rho1_exponent = 1);
  static FieldDescriptor laurent(std::int64_t q, std::int64_t rho1_exponent = 1);

  std::string uniformizer_symbol() const;
  std::string name() const;

  /// |pi^v| as a magnitude.
  Magnitude magnitude_of_valuation(const ExtendedValuation& v) const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

std::int64_t residue_size(const FieldDescriptor& desc);

struct ResidueElement {
  std::int64_t value = 0;
  std::int64_t q = 2;

  ResidueElement operator+(const ResidueElement& o) const;
  ResidueElement operator*(const ResidueElement& o) const;
  friend bool operator==(const ResidueElement&, const ResidueElement&) = default;
};

/// A finite-precision element pi^v * (d0 + d1*pi + ... + d_{k-1}*pi^(k-1)) +
/// O(pi^N) with d0 != 0, where N = v + k is the absolute precision.
///
/// "Zero to precision N" (valuation INFINITY, no digits) is a distinct
/// state: the element is only known to lie in pi^N O.
class Element {
 public:
  Element() = default;

  static Element zero(const FieldDescriptor& desc, std::int64_t abs_precision);
  static Element one(const FieldDescriptor& desc, std::int64_t abs_precision);
  static Element from_integer(const FieldDescriptor& desc, const BigInt& n,
                              std::int64_t abs_precision);
  static Element from_rational(const FieldDescriptor& desc, const BigInt& numerator,
                               const BigInt& denominator,
                               std::int64_t abs_precision);
  static Element from_rational(const FieldDescriptor& desc, const Rational& x,
                               std::int64_t abs_precision);
  /// pi^exponent, known to the given absolute precision.
  static Element uniformizer_power(const FieldDescriptor& desc, std::int64_t exponent,
                                   std::int64_t abs_precision);
  /// Builds pi^valuation * sum(digits[i] pi^i) + O(pi^abs_precision);
  /// leading zero digits are absorbed into the valuation.
  static Element from_digits(const FieldDescriptor& desc, std::int64_t valuation,
                             std::span<const std::uint32_t> digits,
                             std::int64_t abs_precision);

  const FieldDescriptor& descriptor() const { return desc_; }
  const ExtendedValuation& valuation() const { return valuation_; }
  std::int64_t abs_precision() const { return abs_precision_; }
  /// Number of known unit digits; 0 for zero-to-precision.
  std::int64_t relative_precision() const {
    return static_cast<std::int64_t>(digits_.size());
  }
  const std::vector<std::uint32_t>& unit_digits() const { return digits_; }

  bool is_zero_to_precision() const { return valuation_.is_infinite(); }
  /// Digit at absolute position i (i < abs_precision).
  std::uint32_t digit(std::int64_t i) const;

  /// Lower bound on the valuation: exact when nonzero, abs_precision otherwise.
  std::int64_t valuation_lower_bound() const;
  /// |x|; throws PrecisionExhausted when indistinguishable from zero.
  Magnitude magnitude() const;
  /// Upper bound on |x|; exact for distinguishable elements.
  Magnitude magnitude_bound() const;

  /// Forgets digits at positions >= n (n <= abs_precision).
  Element truncated(std::int64_t n) const;
  /// Treats the known digits as an exact representative and pads with zeros.
  Element lifted(std::int64_t n) const;
  /// truncated() when n is below the current precision, else lifted().
  Element at_precision(std::int64_t n) const;

  Element operator-() const;
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }
  Element pow(std::int64_t n) const;

  /// Representation equality: same field, valuation, digits and precision.
  friend bool operator==(const Element&, const Element&) = default;

  /// True when x - y has valuation at least n (both known to n).
  bool congruent(const Element& other, std::int64_t n) const;

  std::string to_string() const;

 private:
  Element(FieldDescriptor desc, ExtendedValuation valuation,
          std::vector<std::uint32_t> digits, std::int64_t abs_precision)
      : desc_(desc), valuation_(valuation), digits_(std::move(digits)),
        abs_precision_(abs_precision) {}

  void require_same_field(const Element& other) const;
  static Element normalized(const FieldDescriptor& desc, std::int64_t base_valuation,
                            std::vector<std::uint32_t> digits,
                            std::int64_t abs_precision);

  FieldDescriptor desc_;
  ExtendedValuation valuation_ = ExtendedValuation::infinity();
  std::vector<std::uint32_t> digits_;
  std::int64_t abs_precision_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Element& x);

enum class ArithOp { Add, Sub, Mul, Div };

Element field_arithmetic(ArithOp op, const Element& x, const Element& y);

/// n * a for an exact integer n, keeping the precision of a. Integers that
/// vanish in the field give zero to the precision of a.
Element scale(const Element& a, const BigInt& n);

/// 1/(1 - x) for v(x) >= 1, by summing x^j until the terms vanish to
/// abs_precision.
Element invert_one_minus(const Element& x, std::int64_t abs_precision);

/// Multiplicative inverse of a Laurent series to absolute precision.
Element laurent_invert(const Element& f, std::int64_t abs_precision);

ResidueElement residue(const Element& x);

/// Image of x in O/pi^j: an integer in [0, q^j). For Laurent series the
/// first j coefficients are packed as base-q digits.
BigInt reduce_mod(const Element& x, std::int64_t j);

/// sum(digits[i] * q^i) and its inverse, used for canonical orderings.
BigInt digits_to_integer(std::span<const std::uint32_t> digits, std::int64_t q);
std::vector<std::uint32_t> integer_to_digits(BigInt n, std::int64_t q,
                                             std::int64_t length);

}  // namespace adic

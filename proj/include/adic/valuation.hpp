#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "adic/bigint.hpp"

namespace adic {

/// An integer valuation or the symbol INFINITY (the valuation of zero).
///
/// INFINITY absorbs addition and compares above every finite value, so the
/// type is a totally ordered monoid under +.
class ExtendedValuation {
 public:
  constexpr ExtendedValuation() = default;
  constexpr ExtendedValuation(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

  static constexpr ExtendedValuation infinity() {
    ExtendedValuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// The finite value; throws DomainError on INFINITY.
  std::int64_t value() const;

  friend constexpr bool operator==(const ExtendedValuation& a,
                                   const ExtendedValuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedValuation& a,
                                                    const ExtendedValuation& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend constexpr ExtendedValuation operator+(const ExtendedValuation& a,
                                               const ExtendedValuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedValuation(a.value_ + b.value_);
  }

  std::string to_string() const;

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtendedValuation& v);

inline ExtendedValuation min(const ExtendedValuation& a,
                             const ExtendedValuation& b) {
  return b < a ? b : a;
}

/// The real number base_q^(-exponent), kept symbolically. Exponent INFINITY
/// is the magnitude zero. Larger exponents mean smaller magnitudes, so all
/// comparisons are reversed integer comparisons.
class Magnitude {
 public:
  Magnitude(std::int64_t base_q, ExtendedValuation exponent);

  static Magnitude one(std::int64_t base_q) { return {base_q, 0}; }
  static Magnitude zero(std::int64_t base_q) {
    return {base_q, ExtendedValuation::infinity()};
  }

  std::int64_t base() const { return base_q_; }
  const ExtendedValuation& exponent() const { return exponent_; }
  bool is_zero() const { return exponent_.is_infinite(); }

  Magnitude operator*(const Magnitude& other) const;
  Magnitude inverse() const;
  Magnitude operator/(const Magnitude& other) const {
    return *this * other.inverse();
  }
  Magnitude pow(std::int64_t n) const;

  friend bool operator==(const Magnitude& a, const Magnitude& b);
  friend std::strong_ordering operator<=>(const Magnitude& a,
                                          const Magnitude& b);

  std::string to_string() const;

 private:
  void require_same_base(const Magnitude& other) const;

  std::int64_t base_q_;
  ExtendedValuation exponent_;
};

Magnitude max(const Magnitude& a, const Magnitude& b);

std::ostream& operator<<(std::ostream& os, const Magnitude& m);

/// p-adic valuation of a rational number; INFINITY iff x = 0.
ExtendedValuation vp(std::int64_t p, const Rational& x);
ExtendedValuation vp(std::int64_t p, const BigInt& x);

/// Legendre's formula: the exponent of p in j!.
std::int64_t factorial_valuation(std::int64_t p, std::int64_t j);

}  // namespace adic

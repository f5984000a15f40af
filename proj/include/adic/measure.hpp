#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adic/field.hpp"
#include "adic/series.hpp"

namespace adic {

/// The closed ball {y : v(y - center) >= radius_exponent}. The center is kept
/// as its canonical residue: digits below the radius, padded with one zero.
class BallSpec {
 public:
  BallSpec(const Element& center, std::int64_t radius_exponent);
  /// The open ball of radius rho1^radius_exponent, i.e. closed radius + 1.
  static BallSpec open(const Element& center, std::int64_t radius_exponent);

  const FieldDescriptor& descriptor() const { return center_.descriptor(); }
  const Element& center() const { return center_; }
  std::int64_t radius_exponent() const { return radius_; }
  Magnitude radius() const { return descriptor().magnitude_of_valuation(radius_); }
  bool contains(const Element& y) const;

  friend bool operator==(const BallSpec&, const BallSpec&) = default;

  /// `center@radius_exponent`.
  std::string to_string() const;

 private:
  Element center_;
  std::int64_t radius_;
};

using BallFamily = std::vector<BallSpec>;

enum class BallRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

std::string_view relation_name(BallRelation r);

BallRelation ball_relation(const BallSpec& a, const BallSpec& b);

/// The maximal balls of the family: pairwise disjoint, same union, sorted by
/// radius exponent and then by center residue.
BallFamily maximal_disjointify(const BallFamily& family);

/// Haar measure of the union, normalized so the unit ball has measure 1.
Rational haar_union_measure(const BallFamily& family);

struct ScaledFamily {
  BallFamily family;
  Rational ratio;  // q^(-v(c))
};

/// The family c * F and the factor by which its measure changes.
ScaledFamily scale_family(const Element& c, const BallFamily& family);

/// log(count_base) / log(scale_base), with a floating approximation.
struct DimensionValue {
  BigInt count_base;
  BigInt scale_base;
  double approx = 0.0;

  std::string to_string() const;
};

DimensionValue make_dimension(const BigInt& count_base, const BigInt& scale_base);

/// The alpha with rho1^(-alpha) = q after replacing the metric d by d^a.
DimensionValue hausdorff_alpha(const FieldDescriptor& desc, const Rational& snowflake_a);

/// An exponent beta: rational, or a log ratio log(c)/log(s).
using Exponent = std::variant<Rational, DimensionValue>;

/// count * p^(-beta n), kept symbolic so that comparisons stay exact.
struct ContentEstimate {
  BigInt count;
  std::int64_t p = 2;
  std::int64_t n = 1;
  Exponent beta;

  /// The value when it is rational.
  std::optional<Rational> exact_value() const;
  std::string to_string() const;
};

/// Sign of a - b; both must share p and beta.
int compare(const ContentEstimate& a, const ContentEstimate& b);

struct DigitSetReport {
  BigInt ball_count;
  ContentEstimate content;
  DimensionValue dimension;
};

/// The compact set of elements of Z_p whose digits all lie in S, covered at
/// depth n by balls of radius p^(-n).
DigitSetReport digit_set_analysis(std::int64_t p, const std::vector<std::int64_t>& digits,
                                  std::int64_t n, const Exponent& beta);

struct AdmissibleResult {
  bool certified = false;
  std::optional<BallSpec> image;
  Magnitude lhs{2, 0};  // t * M_2(r')
  Magnitude rhs{2, 0};  // |f'(center)|
  std::int64_t derivative_valuation = 0;
};

/// Certifies that f maps B onto a ball by an exact similarity, using
/// t * M_2(r') < |f'(x)| with r' = max(|x|, t). A failed criterion is a
/// refusal, not a disproof.
AdmissibleResult admissible_ball(const TruncatedSeries& f, const BallSpec& ball);

struct ImageMeasure {
  Rational measure;
  BallFamily image;
};

/// Measure of f(E) for E a union of balls inside an admissible ball.
ImageMeasure image_measure(const TruncatedSeries& f, const BallSpec& ball,
                           const BallFamily& subfamily);

}  // namespace adic

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adic/field.hpp"

namespace adic {

/// Certified lower bound on v(a_j) for every coefficient past the stored ones:
///
///   v(a_j) >= ceil((slope * j + intercept) / denom)
///
/// optionally sharpened pointwise by -v_p((j + legendre_shift)!). The affine
/// part makes lb(j) + j*m increasing whenever slope + m*denom > 0, which is
/// what "the radius q^(-m) is admissible" means.
struct TailProfile {
  std::int64_t slope = 0;
  std::int64_t intercept = 0;
  std::int64_t denom = 1;
  std::int64_t legendre_p = 0;  // 0 = no pointwise bound
  std::int64_t legendre_shift = 0;
  std::string name;  // "exp", "geom" or empty

  static TailProfile exponential(std::int64_t p);
  static TailProfile geometric();
  static TailProfile affine(std::int64_t slope, std::int64_t intercept, std::int64_t denom);

  std::int64_t affine_bound(std::int64_t j) const;
  std::int64_t lower_bound(std::int64_t j) const;
  bool admits(std::int64_t m) const { return slope + m * denom > 0; }
  /// Least m with admits(m).
  std::int64_t threshold() const;
  /// Bound for the coefficients of the derivative: index j reads a_{j+1}.
  TailProfile shifted() const;

  std::string to_string() const;

  friend bool operator==(const TailProfile&, const TailProfile&) = default;
};

/// f(X) = sum a_j X^j with a_0..a_M stored; without a tail every a_j with
/// j > M is exactly zero.
struct TruncatedSeries {
  FieldDescriptor desc;
  std::vector<Element> coeffs;
  std::optional<TailProfile> tail;

  static TruncatedSeries polynomial(const FieldDescriptor& desc, std::vector<Element> coeffs);
  /// Polynomial with rational coefficients, all at absolute precision `prec`.
  static TruncatedSeries from_rationals(const FieldDescriptor& desc,
                                        const std::vector<Rational>& coeffs,
                                        std::int64_t prec);

  bool is_polynomial() const { return !tail.has_value(); }
  std::int64_t stored_degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
  /// Minimum absolute precision over the stored coefficients.
  std::int64_t working_precision() const;
  /// Certified lower bound on v(a_j) for any j >= 0.
  ExtendedValuation coefficient_bound(std::int64_t j) const;

  std::string to_string() const;
};

/// M_k(r) = max_{j >= k} |a_j| r^(j-k) for r = rho1^m.
Magnitude sup_term(const TruncatedSeries& f, std::int64_t m, std::int64_t k);

/// f(x) modulo pi^target.
Element eval(const TruncatedSeries& f, const Element& x, std::int64_t target);

/// f(x) to whatever precision the stored data determines, at most `cap`.
Element eval_available(const TruncatedSeries& f, const Element& x, std::int64_t cap);

TruncatedSeries derivative(const TruncatedSeries& f);

TruncatedSeries cauchy_product(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_sum(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_scale(const TruncatedSeries& f, const Element& c);

/// Coefficients of W -> f(W + x0) for |x0| <= rho1^m.
TruncatedSeries recenter(const TruncatedSeries& f, const Element& x0, std::int64_t m);

/// g0 with f(x) - f(x0) = (x - x0) g0(x) on |x| <= rho1^m.
TruncatedSeries deflate(const TruncatedSeries& f, const Element& x0, std::int64_t m);

/// Least valuation e with every v(x) >= e admissible; nullopt means every x
/// is admissible (polynomials).
std::optional<std::int64_t> convergence_threshold(const TruncatedSeries& f);

struct IsometryReport {
  bool certified = false;
  Magnitude m2{2, 0};
  Magnitude derivative{2, 0};  // |f'(y)|, zero when indistinguishable from zero
};

/// Whether M_2(r) * rho1^separation < |f'(y)|, which certifies
/// |f(x) - f(y)| = |f'(y)| |x - y| whenever |x - y| <= rho1^separation.
IsometryReport isometry_criterion(const TruncatedSeries& f, std::int64_t m, const Element& y,
                                  std::int64_t separation);

}  // namespace adic

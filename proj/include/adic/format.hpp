#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "adic/field.hpp"
#include "adic/series.hpp"

namespace adic {

/// Parses an element literal such as `3 + 1*7 + 2*7^2 + O(7^3)`,
/// `7^-2 * (1 + 3*7 + O(7^5))`, `-1/6` or `1 + T^2 + O(T^4)`.
///
/// The uniformizer may be written as the prime itself, as `p`, or as `T` for
/// Laurent series. Without an O-term the value is known exactly and is
/// returned at absolute precision `default_prec`.
Element parse_element(const FieldDescriptor& desc, std::string_view text,
                      std::int64_t default_prec);

/// Parses a series literal: an expression in X over element literals, with
/// `exp` for the exponential series and optional trailing
/// `+ tail:exp | tail:geom | tail:affine(A,B,D)` declaring a tail profile
/// for the coefficients past the written ones.
TruncatedSeries parse_series(const FieldDescriptor& desc, std::string_view text,
                             std::int64_t default_prec);

/// A plain rational `a` or `a/b`.
Rational parse_rational(std::string_view text);

std::string rational_to_string(const Rational& r);

}  // namespace adic

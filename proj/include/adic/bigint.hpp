#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace adic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt ipow(const BigInt& base, std::int64_t exponent);

/// Non-negative remainder of a modulo m (m > 0).
BigInt mod_floor(const BigInt& a, const BigInt& m);

/// Floor and ceiling of n/d for d > 0, correct for negative n.
std::int64_t floor_div(std::int64_t n, std::int64_t d);
std::int64_t ceil_div(std::int64_t n, std::int64_t d);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::int64_t small_mod_inverse(std::int64_t a, std::int64_t m);

bool is_prime(std::int64_t n);

/// Parses an optionally signed decimal integer, rejecting anything else.
bool parse_bigint(const std::string& text, BigInt& out);

}  // namespace adic

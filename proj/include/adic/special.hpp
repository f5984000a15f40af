#pragma once

#include <cstdint>

#include "adic/field.hpp"
#include "adic/series.hpp"

namespace adic {

/// Least valuation in the convergence domain of E: 1 for p >= 3, 2 for p = 2.
std::int64_t exp_min_valuation(std::int64_t p);

/// E(X) = sum X^j / j! over Q_p, with coefficients at absolute precision
/// `prec` and enough of them stored to evaluate anywhere in the domain to
/// that precision. Coefficient tables are cached per (p, prec).
TruncatedSeries exp_series(std::int64_t p, std::int64_t prec);

/// E(x) modulo p^target.
Element exp_eval(const Element& x, std::int64_t target);

/// E(x + y) == E(x) E(y) modulo p^target.
bool exp_functional_check(const Element& x, const Element& y, std::int64_t target);

/// The unique x in the domain with E(x) = z, modulo p^target.
Element log_solve(const Element& z, std::int64_t target);

}  // namespace adic

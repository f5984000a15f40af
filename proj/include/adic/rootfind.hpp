#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adic/field.hpp"
#include "adic/series.hpp"

namespace adic {

/// Solve f(x) = z for x near x0, with f considered on |x| <= rho1^m.
struct HenselProblem {
  TruncatedSeries f;
  Element x0;
  Element z;
  std::int64_t m = 0;
  std::int64_t target = 0;
};

struct HypothesisReport {
  bool h_close = false;      // |z - f(x0)| <= |f'(x0)| r
  bool h_quadratic = false;  // M_2(r) |z - f(x0)| < |f'(x0)|^2
  bool h_single = false;     // M_1(r)/r |z - f(x0)| < |f'(x0)|^2
  Magnitude residual{2, 0};  // upper bound on |z - f(x0)|
  Magnitude derivative{2, 0};
  Magnitude m2{2, 0};
  Magnitude m1_prime{2, 0};
};

struct RootCertificate {
  Element root;
  /// f(root) = z + O(pi^residual_prec).
  std::int64_t residual_prec = 0;
  /// The root is the only solution with v(x - x0) >= uniqueness_exponent.
  std::int64_t uniqueness_exponent = 0;
  /// b_l = M_2 |f'(x0)|^-2 |z - f(x_l)| for each step with a nonzero residual.
  std::vector<Magnitude> b_trace;
  /// |f'(root)|, equal to |f'(x0)|.
  Magnitude derivative{2, 0};
  int iterations = 0;
};

struct StrassmannReport {
  std::int64_t bound_N = 0;
  std::int64_t attaining_index = 0;
  Magnitude max_term{2, 0};
  /// Largest attainer of max_{j >= 1} |a_j| r^j: bounds the solutions of
  /// f(x) = z for every z. Empty when undecidable or f is constant.
  std::optional<std::int64_t> preimage_bound;
};

HypothesisReport check_hypotheses(const HenselProblem& problem);

/// Newton iteration x <- x + (z - f(x)) / f'(x) at full working precision.
RootCertificate hensel_solve(const HenselProblem& problem);

/// Iterates the contraction h(x) = x + (z - f(x)) / f'(x0).
RootCertificate fixed_point_solve(const HenselProblem& problem);

StrassmannReport strassmann_bound(const TruncatedSeries& f, std::int64_t m);

/// All roots of f with v(x) >= m, to absolute precision `target`, found by
/// splitting the ball into residue classes down to depth scan_depth and
/// deciding each class by its Strassmann bound. Sorted by residue.
std::vector<RootCertificate> enumerate_roots(const TruncatedSeries& f, std::int64_t m,
                                             std::int64_t scan_depth, std::int64_t target);

}  // namespace adic

#include "adic/series.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "adic/error.hpp"

namespace adic {

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

void require_same(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (!(a == b)) fail(ErrorKind::MismatchedField, "series over " + a.name() + " and " + b.name());
}

void require_admissible(const TruncatedSeries& f, std::int64_t m) {
  if (f.tail && !f.tail->admits(m)) {
    fail(ErrorKind::DomainError,
         "radius exponent " + std::to_string(m) + " is outside the convergence domain (need >= " +
             std::to_string(f.tail->threshold()) + ")");
  }
}

// Largest c with v(a_j) * denom >= slope * j + c for every j, stored or not.
// Requires slope/denom <= the tail's own slope.
std::int64_t intercept_for(const TruncatedSeries& f, std::int64_t slope, std::int64_t denom) {
  Rational best = kUnbounded;
  for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
    const Rational c = Rational(f.coeffs[j].valuation_lower_bound()) -
                       Rational(slope * static_cast<std::int64_t>(j), denom);
    best = std::min(best, c);
  }
  if (f.tail) best = std::min(best, Rational(f.tail->intercept, f.tail->denom));
  const Rational scaled = best * denom;
  BigInt fl = numerator(scaled) / denominator(scaled);
  if (fl * denominator(scaled) > numerator(scaled)) fl -= 1;
  return static_cast<std::int64_t>(fl);
}

// Common slope for a combination of series: the least slope among the tails.
std::optional<std::pair<std::int64_t, std::int64_t>> common_slope(const TruncatedSeries& f,
                                                                  const TruncatedSeries& g) {
  if (!f.tail && !g.tail) return std::nullopt;
  if (!g.tail) return std::make_pair(f.tail->slope, f.tail->denom);
  if (!f.tail) return std::make_pair(g.tail->slope, g.tail->denom);
  const std::int64_t d = std::lcm(f.tail->denom, g.tail->denom);
  const std::int64_t s = std::min(f.tail->slope * (d / f.tail->denom),
                                  g.tail->slope * (d / g.tail->denom));
  return std::make_pair(s, d);
}

std::size_t stored_count(const TruncatedSeries& f, const TruncatedSeries& g,
                         std::size_t polynomial_count) {
  std::size_t n = polynomial_count;
  if (f.tail) n = std::min(n, f.coeffs.size());
  if (g.tail) n = std::min(n, g.coeffs.size());
  return n;
}

Element coefficient_or_zero(const TruncatedSeries& f, std::size_t j, std::int64_t prec) {
  if (j < f.coeffs.size()) return f.coeffs[j];
  return Element::zero(f.desc, prec);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Element power_sum(const TruncatedSeries& f, const Element& x, std::int64_t cap) {
  const auto& desc = f.desc;
  const std::int64_t vx = x.valuation_lower_bound();
  Element sum = Element::zero(desc, cap);
  Element pw = Element::one(desc, std::max<std::int64_t>(cap - std::min<std::int64_t>(vx, 0) *
                                                                   f.stored_degree(),
                                                         1));
  for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
    if (j > 0) pw = pw * x;
    const Element& a = f.coeffs[j];
    const std::int64_t lb = a.valuation_lower_bound() + pw.valuation_lower_bound();
    if (lb >= cap && j > 0 && vx >= 0) continue;
    sum = sum + a * pw;
  }
  return sum;
}

}  // namespace

TailProfile TailProfile::exponential(std::int64_t p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  TailProfile t{-1, 1, p - 1, p, 0, "exp"};
  return t;
}

TailProfile TailProfile::geometric() { return {0, 0, 1, 0, 0, "geom"}; }

TailProfile TailProfile::affine(std::int64_t slope, std::int64_t intercept, std::int64_t denom) {
  if (denom <= 0) fail(ErrorKind::InvalidArgument, "tail denominator must be positive");
  return {slope, intercept, denom, 0, 0, ""};
}

std::int64_t TailProfile::affine_bound(std::int64_t j) const {
  return ceil_div(slope * j + intercept, denom);
}

std::int64_t TailProfile::lower_bound(std::int64_t j) const {
  std::int64_t b = affine_bound(j);
  if (legendre_p != 0) b = std::max(b, -factorial_valuation(legendre_p, j + legendre_shift));
  return b;
}

std::int64_t TailProfile::threshold() const { return floor_div(-slope, denom) + 1; }

TailProfile TailProfile::shifted() const {
  TailProfile t = *this;
  t.intercept = slope + intercept;
  t.legendre_shift = legendre_shift + 1;
  t.name.clear();
  return t;
}

std::string TailProfile::to_string() const {
  if (name == "exp" || name == "geom") return "tail:" + name;
  return "tail:affine(" + std::to_string(slope) + "," + std::to_string(intercept) + "," +
         std::to_string(denom) + ")";
}

TruncatedSeries TruncatedSeries::polynomial(const FieldDescriptor& desc,
                                            std::vector<Element> coeffs) {
  for (const auto& c : coeffs) require_same(desc, c.descriptor());
  return {desc, std::move(coeffs), std::nullopt};
}

TruncatedSeries TruncatedSeries::from_rationals(const FieldDescriptor& desc,
                                                const std::vector<Rational>& coeffs,
                                                std::int64_t prec) {
  std::vector<Element> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(Element::from_rational(desc, c, prec));
  return polynomial(desc, std::move(out));
}

std::int64_t TruncatedSeries::working_precision() const {
  std::int64_t w = kUnbounded;
  for (const auto& c : coeffs) w = std::min(w, c.abs_precision());
  return w;
}

ExtendedValuation TruncatedSeries::coefficient_bound(std::int64_t j) const {
  if (j < 0) fail(ErrorKind::InvalidArgument, "negative coefficient index");
  if (j <= stored_degree()) return coeffs[static_cast<std::size_t>(j)].valuation_lower_bound();
  if (tail) return tail->lower_bound(j);
  return ExtendedValuation::infinity();
}

std::string TruncatedSeries::to_string() const {
  std::string out;
  const std::int64_t w = working_precision();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const Element& c = coeffs[j];
    if (c.is_zero_to_precision() && c.abs_precision() >= w && coeffs.size() > 1) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (j == 1) out += "*X";
    if (j > 1) out += "*X^" + std::to_string(j);
  }
  if (out.empty()) out = "0";
  if (tail) out += " + " + tail->to_string();
  return out;
}

Magnitude sup_term(const TruncatedSeries& f, std::int64_t m, std::int64_t k) {
  require_admissible(f, m);
  ExtendedValuation best = ExtendedValuation::infinity();
  for (std::int64_t j = std::max<std::int64_t>(k, 0); j <= f.stored_degree(); ++j) {
    best = min(best, f.coeffs[static_cast<std::size_t>(j)].valuation_lower_bound() + (j - k) * m);
  }
  if (f.tail) {
    const std::int64_t s = std::max(k, f.stored_degree() + 1);
    best = min(best, f.tail->affine_bound(s) + (s - k) * m);
  }
  return f.desc.magnitude_of_valuation(best);
}

Element eval_available(const TruncatedSeries& f, const Element& x, std::int64_t cap) {
  require_same(f.desc, x.descriptor());
  const std::int64_t vx = x.valuation_lower_bound();
  if (f.tail) {
    require_admissible(f, vx);
    const std::int64_t next = f.stored_degree() + 1;
    cap = std::min(cap, f.tail->affine_bound(next) + next * vx);
  }
  Element s = power_sum(f, x, cap);
  return s.truncated(std::min(cap, s.abs_precision()));
}

Element eval(const TruncatedSeries& f, const Element& x, std::int64_t target) {
  require_same(f.desc, x.descriptor());
  if (f.tail) {
    const std::int64_t vx = x.valuation_lower_bound();
    require_admissible(f, vx);
    const std::int64_t next = f.stored_degree() + 1;
    if (f.tail->affine_bound(next) + next * vx < target) {
      fail(ErrorKind::PrecisionExhausted,
           "the " + std::to_string(next) + " stored terms do not reach precision " +
               std::to_string(target) + " at v(x) = " + std::to_string(vx));
    }
  }
  Element s = power_sum(f, x, target);
  if (s.abs_precision() < target) {
    fail(ErrorKind::PrecisionExhausted, "f(x) is only known to " + f.desc.uniformizer_symbol() +
                                            "^" + std::to_string(s.abs_precision()) +
                                            ", wanted " + std::to_string(target));
  }
  return s.truncated(target);
}

TruncatedSeries derivative(const TruncatedSeries& f) {
  TruncatedSeries d{f.desc, {}, f.tail ? std::optional(f.tail->shifted()) : std::nullopt};
  for (std::size_t j = 1; j < f.coeffs.size(); ++j) {
    d.coeffs.push_back(scale(f.coeffs[j], static_cast<std::int64_t>(j)));
  }
  if (d.coeffs.empty()) {
    const std::int64_t w = f.coeffs.empty() ? 0 : f.working_precision();
    d.coeffs.push_back(d.tail ? Element::zero(f.desc, d.tail->lower_bound(0))
                              : Element::zero(f.desc, w));
  }
  return d;
}

TruncatedSeries series_sum(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same(f.desc, g.desc);
  const std::size_t n = stored_count(f, g, std::max(f.coeffs.size(), g.coeffs.size()));
  const std::int64_t w = std::min(f.working_precision(), g.working_precision());
  TruncatedSeries out{f.desc, {}, std::nullopt};
  for (std::size_t j = 0; j < n; ++j) {
    out.coeffs.push_back(coefficient_or_zero(f, j, w) + coefficient_or_zero(g, j, w));
  }
  if (auto sd = common_slope(f, g)) {
    const auto [s, d] = *sd;
    out.tail = TailProfile::affine(s, std::min(intercept_for(f, s, d), intercept_for(g, s, d)), d);
    if (f.tail && g.tail && *f.tail == *g.tail) out.tail = f.tail;
  }
  return out;
}

TruncatedSeries series_scale(const TruncatedSeries& f, const Element& c) {
  require_same(f.desc, c.descriptor());
  TruncatedSeries out{f.desc, {}, std::nullopt};
  for (const auto& a : f.coeffs) out.coeffs.push_back(a * c);
  if (f.tail) {
    const std::int64_t vc = c.valuation_lower_bound();
    TailProfile t = *f.tail;
    t.intercept += vc * t.denom;
    if (vc != 0) {
      t.name.clear();
      t.legendre_p = 0;
    }
    out.tail = t;
  }
  return out;
}

TruncatedSeries cauchy_product(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same(f.desc, g.desc);
  const std::size_t full = f.coeffs.empty() || g.coeffs.empty()
                               ? 0
                               : f.coeffs.size() + g.coeffs.size() - 1;
  const std::size_t n = stored_count(f, g, full);
  const std::int64_t w = std::min(f.working_precision(), g.working_precision());
  TruncatedSeries out{f.desc, {}, std::nullopt};
  for (std::size_t k = 0; k < n; ++k) {
    Element c = Element::zero(f.desc, kUnbounded / 2);
    bool any = false;
    for (std::size_t j = 0; j <= k; ++j) {
      if (j >= f.coeffs.size() || k - j >= g.coeffs.size()) continue;
      const Element t = f.coeffs[j] * g.coeffs[k - j];
      c = any ? c + t : t;
      any = true;
    }
    out.coeffs.push_back(any ? c.at_precision(std::min(c.abs_precision(), w))
                             : Element::zero(f.desc, w));
  }
  if (auto sd = common_slope(f, g)) {
    const auto [s, d] = *sd;
    out.tail = TailProfile::affine(s, intercept_for(f, s, d) + intercept_for(g, s, d), d);
  }
  if (out.coeffs.empty()) out.coeffs.push_back(Element::zero(f.desc, w));
  return out;
}

TruncatedSeries recenter(const TruncatedSeries& f, const Element& x0, std::int64_t m) {
  require_same(f.desc, x0.descriptor());
  require_admissible(f, m);
  if (x0.valuation_lower_bound() < m) {
    fail(ErrorKind::DomainError, "center " + x0.to_string() + " lies outside the ball of radius "
                                     "exponent " + std::to_string(m));
  }
  const std::int64_t top = f.stored_degree();
  const std::int64_t w = f.working_precision();
  std::vector<Element> powers;
  powers.push_back(Element::one(f.desc, w - std::min<std::int64_t>(m, 0) * top));
  for (std::int64_t i = 1; i <= top; ++i) powers.push_back(powers.back() * x0);

  TruncatedSeries out{f.desc, {}, f.tail};
  for (std::int64_t j = 0; j <= top; ++j) {
    Element c = f.coeffs[static_cast<std::size_t>(j)];
    for (std::int64_t l = j + 1; l <= top; ++l) {
      c = c + scale(f.coeffs[static_cast<std::size_t>(l)] * powers[static_cast<std::size_t>(l - j)],
                    binomial(l, j));
    }
    if (f.tail) {
      const std::int64_t cap = f.tail->affine_bound(top + 1) + (top + 1 - j) * m;
      if (cap < c.abs_precision()) c = c.truncated(cap);
    }
    out.coeffs.push_back(c);
  }
  return out;
}

TruncatedSeries deflate(const TruncatedSeries& f, const Element& x0, std::int64_t m) {
  require_same(f.desc, x0.descriptor());
  require_admissible(f, m);
  if (x0.valuation_lower_bound() < m) {
    fail(ErrorKind::DomainError, "center " + x0.to_string() + " lies outside the ball of radius "
                                     "exponent " + std::to_string(m));
  }
  const std::int64_t top = f.stored_degree();
  TruncatedSeries out{f.desc, {}, f.tail ? std::optional(f.tail->shifted()) : std::nullopt};
  if (top <= 0) {
    out.coeffs.push_back(Element::zero(f.desc, f.working_precision()));
    return out;
  }
  std::vector<Element> b(static_cast<std::size_t>(top), Element::zero(f.desc, 0));
  b[static_cast<std::size_t>(top - 1)] = f.coeffs[static_cast<std::size_t>(top)];
  for (std::int64_t l = top - 2; l >= 0; --l) {
    b[static_cast<std::size_t>(l)] =
        f.coeffs[static_cast<std::size_t>(l + 1)] + x0 * b[static_cast<std::size_t>(l + 1)];
  }
  if (f.tail) {
    for (std::int64_t l = 0; l < top; ++l) {
      const std::int64_t cap = f.tail->affine_bound(top + 1) + (top - l) * m;
      auto& c = b[static_cast<std::size_t>(l)];
      if (cap < c.abs_precision()) c = c.truncated(cap);
    }
  }
  out.coeffs = std::move(b);
  return out;
}

std::optional<std::int64_t> convergence_threshold(const TruncatedSeries& f) {
  if (!f.tail) return std::nullopt;
  return f.tail->threshold();
}

IsometryReport isometry_criterion(const TruncatedSeries& f, std::int64_t m, const Element& y,
                                  std::int64_t separation) {
  if (y.valuation_lower_bound() < m) {
    fail(ErrorKind::DomainError, "point lies outside the ball of radius exponent " +
                                     std::to_string(m));
  }
  IsometryReport r;
  r.m2 = sup_term(f, m, 2);
  const TruncatedSeries df = derivative(f);
  const Element d = eval_available(df, y, df.working_precision());
  r.derivative = d.is_zero_to_precision() ? Magnitude::zero(f.desc.q) : d.magnitude();
  const Magnitude lhs = r.m2 * f.desc.magnitude_of_valuation(separation);
  r.certified = !r.derivative.is_zero() && lhs < r.derivative;
  return r;
}

}  // namespace adic

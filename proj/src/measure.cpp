#include "adic/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "adic/error.hpp"
#include "adic/format.hpp"

namespace adic {

namespace {

Element canonical_center(const Element& c, std::int64_t j) {
  if (c.abs_precision() < j) {
    fail(ErrorKind::InsufficientPrecision,
         "center " + c.to_string() + " is not known modulo " +
             c.descriptor().uniformizer_symbol() + "^" + std::to_string(j));
  }
  return c.truncated(j).lifted(j + 1);
}

void require_same(const BallSpec& a, const BallSpec& b) {
  if (!(a.descriptor() == b.descriptor())) {
    fail(ErrorKind::MismatchedField,
         "balls in " + a.descriptor().name() + " and " + b.descriptor().name());
  }
}

// Exact representative term list, without an O-term.
std::string exact_digits(const Element& x) {
  if (x.is_zero_to_precision()) return "0";
  const std::string sym = x.descriptor().uniformizer_symbol();
  const std::int64_t v = x.valuation().value();
  std::string out;
  const auto& d = x.unit_digits();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    const std::int64_t e = v + static_cast<std::int64_t>(i);
    if (!out.empty()) out += " + ";
    out += std::to_string(d[i]);
    if (e == 1) out += "*" + sym;
    else if (e != 0) out += "*" + sym + "^" + std::to_string(e);
  }
  return out;
}

BigInt center_key(const BallSpec& b, std::int64_t lo) {
  std::vector<std::uint32_t> d;
  for (std::int64_t i = lo; i < b.radius_exponent(); ++i) d.push_back(b.center().digit(i));
  return digits_to_integer(d, b.descriptor().q);
}

void canonical_sort(BallFamily& family) {
  if (family.empty()) return;
  std::int64_t lo = 0;
  for (const auto& b : family) lo = std::min(lo, b.center().valuation_lower_bound());
  std::sort(family.begin(), family.end(), [lo](const BallSpec& a, const BallSpec& b) {
    if (a.radius_exponent() != b.radius_exponent()) {
      return a.radius_exponent() < b.radius_exponent();
    }
    return center_key(a, lo) < center_key(b, lo);
  });
}

Rational q_power(std::int64_t q, std::int64_t e) {
  if (e >= 0) return Rational(ipow(q, e));
  return Rational(BigInt(1), ipow(q, -e));
}

double to_double(const Rational& r) { return static_cast<double>(r); }

// Exact a^e for a rational base and integer exponent.
Rational rpow(const Rational& a, std::int64_t e) {
  if (e >= 0) return Rational(ipow(numerator(a), e), ipow(denominator(a), e));
  return Rational(ipow(denominator(a), -e), ipow(numerator(a), -e));
}

// For beta = log(c)/log(p^k): c and k. Rejects scale bases that are not
// powers of p.
std::pair<BigInt, std::int64_t> log_exponent(const DimensionValue& d, std::int64_t p) {
  const auto k = vp(p, d.scale_base);
  if (d.scale_base <= 1 || k.is_infinite() || ipow(p, k.value()) != d.scale_base) {
    fail(ErrorKind::InvalidArgument, "log-ratio exponent needs a scale base that is a power of " +
                                         std::to_string(p));
  }
  return {d.count_base, k.value()};
}

// count * p^(-beta n) raised to a positive power so that it is rational.
Rational lifted_value(const ContentEstimate& e, std::int64_t& power) {
  if (const auto* r = std::get_if<Rational>(&e.beta)) {
    power = static_cast<std::int64_t>(denominator(*r));
    const auto u = static_cast<std::int64_t>(numerator(*r));
    return rpow(Rational(e.count), power) * q_power(e.p, -u * e.n);
  }
  const auto [c, k] = log_exponent(std::get<DimensionValue>(e.beta), e.p);
  power = k;
  return rpow(Rational(e.count), k) / rpow(Rational(c), e.n);
}

}  // namespace

BallSpec::BallSpec(const Element& center, std::int64_t radius_exponent)
    : center_(canonical_center(center, radius_exponent)), radius_(radius_exponent) {}

BallSpec BallSpec::open(const Element& center, std::int64_t radius_exponent) {
  return BallSpec(center, radius_exponent + 1);
}

bool BallSpec::contains(const Element& y) const {
  if (!(y.descriptor() == descriptor())) {
    fail(ErrorKind::MismatchedField, "point and ball in different fields");
  }
  if (y.abs_precision() < radius_) {
    fail(ErrorKind::InsufficientPrecision, "point is not known to the ball radius");
  }
  return (y.truncated(radius_) - center_.truncated(radius_)).valuation_lower_bound() >= radius_;
}

std::string BallSpec::to_string() const {
  return exact_digits(center_) + "@" + std::to_string(radius_);
}

std::string_view relation_name(BallRelation r) {
  switch (r) {
    case BallRelation::Disjoint: return "DISJOINT";
    case BallRelation::Equal: return "EQUAL";
    case BallRelation::FirstInsideSecond: return "FIRST_INSIDE_SECOND";
    case BallRelation::SecondInsideFirst: return "SECOND_INSIDE_FIRST";
  }
  return "UNKNOWN";
}

BallRelation ball_relation(const BallSpec& a, const BallSpec& b) {
  require_same(a, b);
  const std::int64_t ja = a.radius_exponent();
  const std::int64_t jb = b.radius_exponent();
  const std::int64_t top = std::max(ja, jb) + 1;
  const std::int64_t delta =
      (a.center().lifted(top) - b.center().lifted(top)).valuation_lower_bound();
  if (delta < std::min(ja, jb)) return BallRelation::Disjoint;
  if (ja == jb) return BallRelation::Equal;
  return ja < jb ? BallRelation::SecondInsideFirst : BallRelation::FirstInsideSecond;
}

BallFamily maximal_disjointify(const BallFamily& family) {
  BallFamily sorted = family;
  std::stable_sort(sorted.begin(), sorted.end(), [](const BallSpec& a, const BallSpec& b) {
    return a.radius_exponent() < b.radius_exponent();
  });
  BallFamily kept;
  for (const auto& ball : sorted) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const BallSpec& k) {
      const BallRelation r = ball_relation(ball, k);
      return r == BallRelation::Equal || r == BallRelation::FirstInsideSecond;
    });
    if (!covered) kept.push_back(ball);
  }
  canonical_sort(kept);
  return kept;
}

Rational haar_union_measure(const BallFamily& family) {
  Rational total = 0;
  for (const auto& b : maximal_disjointify(family)) {
    total += q_power(b.descriptor().q, -b.radius_exponent());
  }
  return total;
}

ScaledFamily scale_family(const Element& c, const BallFamily& family) {
  if (c.is_zero_to_precision()) {
    fail(ErrorKind::DomainError, "scaling by " + c.to_string() + ", which may be zero");
  }
  const std::int64_t vc = c.valuation().value();
  ScaledFamily out{{}, q_power(c.descriptor().q, -vc)};
  for (const auto& b : family) {
    if (!(b.descriptor() == c.descriptor())) {
      fail(ErrorKind::MismatchedField, "scalar and ball in different fields");
    }
    const std::int64_t j = b.radius_exponent() + vc;
    const Element center = b.center().lifted(std::max(b.center().abs_precision(), j - vc + 1));
    out.family.emplace_back(center * c, j);
  }
  return out;
}

namespace {

// g with g^k = n, if any.
std::optional<BigInt> exact_root(const BigInt& n, unsigned k) {
  BigInt lo = 1, hi = n;
  while (lo <= hi) {
    const BigInt mid = (lo + hi) / 2;
    const BigInt v = boost::multiprecision::pow(mid, k);
    if (v == n) return mid;
    if (v < n) lo = mid + 1;
    else hi = mid - 1;
  }
  return std::nullopt;
}

// log(c)/log(s) when both are powers of a common base.
std::optional<Rational> rational_log_ratio(const BigInt& c, const BigInt& s) {
  if (c == 1) return Rational(0);
  const auto bits = static_cast<unsigned>(boost::multiprecision::msb(s)) + 1;
  for (unsigned k = bits; k >= 1; --k) {
    const auto g = exact_root(s, k);
    if (!g || *g < 2) continue;
    BigInt n = c;
    std::int64_t a = 0;
    while (n % *g == 0) {
      n /= *g;
      ++a;
    }
    if (n == 1) return Rational(a, k);
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::string DimensionValue::to_string() const {
  if (const auto r = rational_log_ratio(count_base, scale_base)) {
    return numerator(*r).str() + (denominator(*r) == 1 ? "" : "/" + denominator(*r).str());
  }
  return "log(" + count_base.str() + ")/log(" + scale_base.str() + ")";
}

DimensionValue make_dimension(const BigInt& count_base, const BigInt& scale_base) {
  if (count_base < 1 || scale_base < 2) {
    fail(ErrorKind::InvalidArgument, "dimension needs count >= 1 and scale >= 2");
  }
  DimensionValue d{count_base, scale_base, 0.0};
  // log of a big integer via its decimal length keeps the ratio accurate.
  auto big_log = [](const BigInt& n) {
    const std::string s = n.str();
    if (s.size() <= 15) return std::log(static_cast<double>(n));
    const double lead = std::stod(s.substr(0, 17)) / 1e16;
    return std::log(lead) + static_cast<double>(s.size() - 1) * std::log(10.0);
  };
  d.approx = big_log(count_base) / big_log(scale_base);
  return d;
}

DimensionValue hausdorff_alpha(const FieldDescriptor& desc, const Rational& a) {
  if (a <= 0) fail(ErrorKind::InvalidArgument, "snowflake exponent must be positive");
  // alpha = 1 / (a e) = w / (u e) for a = u / w.
  const auto u = static_cast<std::int64_t>(numerator(a));
  const auto w = static_cast<std::int64_t>(denominator(a));
  DimensionValue d = make_dimension(ipow(desc.q, w), ipow(desc.q, u * desc.rho1_exponent));
  d.approx = to_double(Rational(w, u * desc.rho1_exponent));
  return d;
}

std::optional<Rational> ContentEstimate::exact_value() const {
  if (const auto* r = std::get_if<Rational>(&beta)) {
    const Rational e = *r * n;
    if (denominator(e) != 1) return std::nullopt;
    return Rational(count) * q_power(p, -static_cast<std::int64_t>(numerator(e)));
  }
  const auto [c, k] = log_exponent(std::get<DimensionValue>(beta), p);
  if (n % k != 0) return std::nullopt;
  return Rational(count) / rpow(Rational(c), n / k);
}

std::string ContentEstimate::to_string() const {
  if (auto v = exact_value()) return rational_to_string(*v);
  std::string b;
  if (const auto* r = std::get_if<Rational>(&beta)) b = rational_to_string(*r);
  else b = std::get<DimensionValue>(beta).to_string();
  return count.str() + " * " + std::to_string(p) + "^(-(" + b + ")*" + std::to_string(n) + ")";
}

int compare(const ContentEstimate& a, const ContentEstimate& b) {
  if (a.p != b.p) fail(ErrorKind::InvalidArgument, "content estimates over different primes");
  std::int64_t pa = 0, pb = 0;
  const Rational va = lifted_value(a, pa);
  const Rational vb = lifted_value(b, pb);
  if (pa != pb) fail(ErrorKind::InvalidArgument, "content estimates with different exponents");
  if (va < vb) return -1;
  return va > vb ? 1 : 0;
}

DigitSetReport digit_set_analysis(std::int64_t p, const std::vector<std::int64_t>& digits,
                                  std::int64_t n, const Exponent& beta) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (digits.empty()) fail(ErrorKind::InvalidArgument, "digit set must be nonempty");
  if (n < 1) fail(ErrorKind::InvalidArgument, "depth must be at least 1");
  std::set<std::int64_t> s;
  for (auto d : digits) {
    if (d < 0 || d >= p) {
      fail(ErrorKind::InvalidArgument, "digit " + std::to_string(d) + " is not in [0, p)");
    }
    s.insert(d);
  }
  const auto size = static_cast<std::int64_t>(s.size());
  DigitSetReport r{ipow(size, n), ContentEstimate{ipow(size, n), p, n, beta},
                   make_dimension(size, p)};
  if (size == 1) r.dimension.approx = 0.0;
  return r;
}

AdmissibleResult admissible_ball(const TruncatedSeries& f, const BallSpec& ball) {
  if (!(f.desc == ball.descriptor())) {
    fail(ErrorKind::MismatchedField, "series and ball in different fields");
  }
  const auto& desc = f.desc;
  const std::int64_t w = f.working_precision();
  const std::int64_t j = ball.radius_exponent();
  const Element x = ball.center().lifted(std::max(w, j + 1));
  const std::int64_t outer = std::min(x.valuation_lower_bound(), j);
  AdmissibleResult r;
  const Element d = eval_available(derivative(f), x, w);
  r.lhs = desc.magnitude_of_valuation(j) * sup_term(f, outer, 2);
  if (d.is_zero_to_precision()) {
    r.rhs = Magnitude::zero(desc.q);
    return r;
  }
  r.rhs = d.magnitude();
  r.derivative_valuation = d.valuation().value();
  if (!(r.lhs < r.rhs)) return r;
  const std::int64_t image_radius = j + r.derivative_valuation;
  const Element fx = eval_available(f, x, w);
  if (fx.abs_precision() < image_radius) {
    fail(ErrorKind::InsufficientPrecision,
         "f(center) is known only to " + desc.uniformizer_symbol() + "^" +
             std::to_string(fx.abs_precision()) + ", the image ball needs " +
             std::to_string(image_radius));
  }
  r.certified = true;
  r.image = BallSpec(fx, image_radius);
  return r;
}

ImageMeasure image_measure(const TruncatedSeries& f, const BallSpec& ball,
                           const BallFamily& subfamily) {
  const AdmissibleResult adm = admissible_ball(f, ball);
  if (!adm.certified) {
    fail(ErrorKind::NotCertified,
         "ball " + ball.to_string() + " is not certified admissible: t*M2 = " +
             adm.lhs.to_string() + ", |f'| = " + adm.rhs.to_string());
  }
  const auto& desc = f.desc;
  ImageMeasure out;
  for (const auto& sub : subfamily) {
    const BallRelation rel = ball_relation(sub, ball);
    if (rel != BallRelation::Equal && rel != BallRelation::FirstInsideSecond) {
      fail(ErrorKind::DomainError, "ball " + sub.to_string() + " is not inside " +
                                       ball.to_string());
    }
    const AdmissibleResult part = admissible_ball(f, sub);
    if (!part.certified || part.derivative_valuation != adm.derivative_valuation) {
      throw std::logic_error("sub-ball of an admissible ball failed its own certificate");
    }
    out.image.push_back(*part.image);
  }
  out.measure = q_power(desc.q, -adm.derivative_valuation) * haar_union_measure(subfamily);
  if (haar_union_measure(out.image) != out.measure) {
    throw std::logic_error("image measure disagrees with the mapped family");
  }
  out.image = maximal_disjointify(out.image);
  return out;
}

}  // namespace adic

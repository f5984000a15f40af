#include "adic/field.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "adic/error.hpp"

namespace adic {

namespace {

// Largest number of digits any single element may carry.
constexpr std::int64_t kMaxWindow = 1 << 16;

void require_window(std::int64_t length) {
  if (length > kMaxWindow) {
    fail(ErrorKind::PrecisionExhausted,
         "precision window of " + std::to_string(length) + " digits exceeds the limit " +
             std::to_string(kMaxWindow));
  }
}

using Poly = std::vector<std::uint32_t>;

// Polynomials over F_q truncated mod T^k.

Poly poly_add(const Poly& a, const Poly& b, std::size_t k, std::int64_t q) {
  Poly r(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t s = 0;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r[i] = static_cast<std::uint32_t>(s % static_cast<std::uint64_t>(q));
  }
  return r;
}

Poly poly_neg(const Poly& a, std::size_t k, std::int64_t q) {
  Poly r(k, 0);
  for (std::size_t i = 0; i < k && i < a.size(); ++i) {
    r[i] = a[i] == 0 ? 0 : static_cast<std::uint32_t>(q - a[i]);
  }
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b, std::size_t k, std::int64_t q) {
  std::vector<std::uint64_t> acc(k, 0);
  const std::uint64_t uq = static_cast<std::uint64_t>(q);
  for (std::size_t i = 0; i < a.size() && i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < k; ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % uq;
    }
  }
  return Poly(acc.begin(), acc.end());
}

// Inverse of a unit mod T^k: invert the constant term, then Newton doubling.
Poly poly_unit_inverse(const Poly& u, std::size_t k, std::int64_t q) {
  Poly inv(1, static_cast<std::uint32_t>(small_mod_inverse(u.at(0), q)));
  std::size_t prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    Poly e = poly_neg(poly_mul(u, inv, prec, q), prec, q);
    e[0] = static_cast<std::uint32_t>((e[0] + 2) % q);
    inv = poly_mul(inv, e, prec, q);
  }
  inv.resize(k, 0);
  return inv;
}

BigInt int_unit_inverse(const BigInt& u, std::int64_t p, std::int64_t k) {
  const BigInt modulus = ipow(p, k);
  const std::int64_t d0 = static_cast<std::int64_t>(mod_floor(u, p));
  BigInt inv = small_mod_inverse(d0, p);
  std::int64_t prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    const BigInt m = ipow(p, prec);
    inv = mod_floor(inv * (2 - mod_floor(u * inv, m)), m);
  }
  return mod_floor(inv, modulus);
}

// Digits of x shifted to start at absolute position base, as a window of
// `length` digits.
Poly window(const Element& x, std::int64_t base, std::int64_t length) {
  Poly out(static_cast<std::size_t>(std::max<std::int64_t>(length, 0)), 0);
  if (x.is_zero_to_precision()) return out;
  const std::int64_t v = x.valuation().value();
  const auto& d = x.unit_digits();
  for (std::int64_t i = 0; i < length; ++i) {
    const std::int64_t idx = base + i - v;
    if (idx >= 0 && idx < static_cast<std::int64_t>(d.size())) out[i] = d[idx];
  }
  return out;
}

}  // namespace

FieldDescriptor FieldDescriptor::padic(std::int64_t p, std::int64_t rho1_exponent) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (rho1_exponent < 1) fail(ErrorKind::InvalidArgument, "rho1 exponent must be >= 1");
  return {FieldKind::PAdic, p, rho1_exponent};
}

FieldDescriptor FieldDescriptor::laurent(std::int64_t q, std::int64_t rho1_exponent) {
  if (!is_prime(q)) fail(ErrorKind::InvalidArgument, std::to_string(q) + " is not prime");
  if (rho1_exponent < 1) fail(ErrorKind::InvalidArgument, "rho1 exponent must be >= 1");
  return {FieldKind::Laurent, q, rho1_exponent};
}

std::string FieldDescriptor::uniformizer_symbol() const {
  return kind == FieldKind::PAdic ? std::to_string(q) : std::string("T");
}

std::string FieldDescriptor::name() const {
  return kind == FieldKind::PAdic ? "Q_" + std::to_string(q)
                                  : "F_" + std::to_string(q) + "((T))";
}

Magnitude FieldDescriptor::magnitude_of_valuation(const ExtendedValuation& v) const {
  if (v.is_infinite()) return Magnitude::zero(q);
  return {q, v.value() * rho1_exponent};
}

std::int64_t residue_size(const FieldDescriptor& desc) { return desc.q; }

ResidueElement ResidueElement::operator+(const ResidueElement& o) const {
  if (q != o.q) fail(ErrorKind::MismatchedField, "residues over different fields");
  return {(value + o.value) % q, q};
}

ResidueElement ResidueElement::operator*(const ResidueElement& o) const {
  if (q != o.q) fail(ErrorKind::MismatchedField, "residues over different fields");
  return {(value * o.value) % q, q};
}

Element Element::normalized(const FieldDescriptor& desc, std::int64_t base_valuation,
                            std::vector<std::uint32_t> digits,
                            std::int64_t abs_precision) {
  const std::int64_t length = abs_precision - base_valuation;
  digits.resize(static_cast<std::size_t>(std::max<std::int64_t>(length, 0)), 0);
  auto first = std::find_if(digits.begin(), digits.end(), [](std::uint32_t d) { return d != 0; });
  if (first == digits.end()) return zero(desc, abs_precision);
  const std::int64_t shift = first - digits.begin();
  digits.erase(digits.begin(), first);
  return Element(desc, base_valuation + shift, std::move(digits), abs_precision);
}

Element Element::zero(const FieldDescriptor& desc, std::int64_t abs_precision) {
  return Element(desc, ExtendedValuation::infinity(), {}, abs_precision);
}

Element Element::one(const FieldDescriptor& desc, std::int64_t abs_precision) {
  return uniformizer_power(desc, 0, abs_precision);
}

Element Element::uniformizer_power(const FieldDescriptor& desc, std::int64_t exponent,
                                   std::int64_t abs_precision) {
  if (exponent >= abs_precision) return zero(desc, abs_precision);
  require_window(abs_precision - exponent);
  std::vector<std::uint32_t> d(static_cast<std::size_t>(abs_precision - exponent), 0);
  d[0] = 1;
  return Element(desc, exponent, std::move(d), abs_precision);
}

Element Element::from_digits(const FieldDescriptor& desc, std::int64_t valuation,
                             std::span<const std::uint32_t> digits,
                             std::int64_t abs_precision) {
  if (valuation >= abs_precision) return zero(desc, abs_precision);
  require_window(abs_precision - valuation);
  for (auto d : digits) {
    if (d >= desc.q) fail(ErrorKind::InvalidArgument, "digit out of range");
  }
  return normalized(desc, valuation, std::vector<std::uint32_t>(digits.begin(), digits.end()),
                    abs_precision);
}

Element Element::from_integer(const FieldDescriptor& desc, const BigInt& n,
                              std::int64_t abs_precision) {
  return from_rational(desc, n, BigInt(1), abs_precision);
}

Element Element::from_rational(const FieldDescriptor& desc, const Rational& x,
                               std::int64_t abs_precision) {
  return from_rational(desc, numerator(x), denominator(x), abs_precision);
}

Element Element::from_rational(const FieldDescriptor& desc, const BigInt& num,
                               const BigInt& den, std::int64_t abs_precision) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  const std::int64_t q = desc.q;
  if (desc.kind == FieldKind::Laurent) {
    const std::int64_t d = static_cast<std::int64_t>(mod_floor(den, q));
    if (d == 0) {
      fail(ErrorKind::DivisionByIndistinguishableZero,
           "denominator vanishes in the residue field F_" + std::to_string(q));
    }
    const std::int64_t n = static_cast<std::int64_t>(mod_floor(num, q));
    const std::int64_t c = n * small_mod_inverse(d, q) % q;
    if (c == 0 || abs_precision <= 0) return zero(desc, abs_precision);
    require_window(abs_precision);
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(abs_precision), 0);
    digits[0] = static_cast<std::uint32_t>(c);
    return Element(desc, 0, std::move(digits), abs_precision);
  }
  if (num == 0) return zero(desc, abs_precision);
  BigInt a = num, b = den;
  if (b < 0) {
    a = -a;
    b = -b;
  }
  const std::int64_t va = vp(q, a).value();
  const std::int64_t vb = vp(q, b).value();
  const std::int64_t v = va - vb;
  if (v >= abs_precision) return zero(desc, abs_precision);
  const std::int64_t k = abs_precision - v;
  require_window(k);
  a /= ipow(q, va);
  b /= ipow(q, vb);
  const BigInt modulus = ipow(q, k);
  const BigInt unit = mod_floor(mod_floor(a, modulus) * int_unit_inverse(b, q, k), modulus);
  return Element(desc, v, integer_to_digits(unit, q, k), abs_precision);
}

std::uint32_t Element::digit(std::int64_t i) const {
  if (i >= abs_precision_) {
    fail(ErrorKind::PrecisionExhausted, "digit " + std::to_string(i) + " is beyond precision " +
                                            std::to_string(abs_precision_));
  }
  if (is_zero_to_precision()) return 0;
  const std::int64_t idx = i - valuation_.value();
  return idx < 0 ? 0 : digits_[static_cast<std::size_t>(idx)];
}

std::int64_t Element::valuation_lower_bound() const {
  return is_zero_to_precision() ? abs_precision_ : valuation_.value();
}

Magnitude Element::magnitude() const {
  if (is_zero_to_precision()) {
    fail(ErrorKind::PrecisionExhausted, "element is indistinguishable from zero at precision " +
                                            std::to_string(abs_precision_));
  }
  return desc_.magnitude_of_valuation(valuation_);
}

Magnitude Element::magnitude_bound() const {
  return desc_.magnitude_of_valuation(valuation_lower_bound());
}

Element Element::truncated(std::int64_t n) const {
  if (n > abs_precision_) {
    fail(ErrorKind::PrecisionExhausted, "cannot truncate to " + std::to_string(n) +
                                            " beyond precision " +
                                            std::to_string(abs_precision_));
  }
  if (is_zero_to_precision() || valuation_.value() >= n) return zero(desc_, n);
  const std::int64_t v = valuation_.value();
  std::vector<std::uint32_t> d(digits_.begin(), digits_.begin() + (n - v));
  return Element(desc_, v, std::move(d), n);
}

Element Element::lifted(std::int64_t n) const {
  if (n < abs_precision_) return truncated(n);
  if (is_zero_to_precision()) return zero(desc_, n);
  const std::int64_t v = valuation_.value();
  require_window(n - v);
  std::vector<std::uint32_t> d = digits_;
  d.resize(static_cast<std::size_t>(n - v), 0);
  return Element(desc_, v, std::move(d), n);
}

Element Element::at_precision(std::int64_t n) const {
  return n <= abs_precision_ ? truncated(n) : lifted(n);
}

void Element::require_same_field(const Element& other) const {
  if (!(desc_ == other.desc_)) {
    fail(ErrorKind::MismatchedField,
         "elements of " + desc_.name() + " and " + other.desc_.name());
  }
}

Element Element::operator-() const {
  if (is_zero_to_precision()) return *this;
  const std::int64_t v = valuation_.value();
  const std::size_t k = digits_.size();
  if (desc_.kind == FieldKind::Laurent) {
    return Element(desc_, v, poly_neg(digits_, k, desc_.q), abs_precision_);
  }
  const BigInt modulus = ipow(desc_.q, static_cast<std::int64_t>(k));
  const BigInt u = digits_to_integer(digits_, desc_.q);
  return Element(desc_, v, integer_to_digits(mod_floor(-u, modulus), desc_.q,
                                             static_cast<std::int64_t>(k)),
                 abs_precision_);
}

Element Element::operator+(const Element& o) const {
  require_same_field(o);
  const std::int64_t n = std::min(abs_precision_, o.abs_precision_);
  const std::int64_t base =
      std::min({valuation_lower_bound(), o.valuation_lower_bound(), n});
  const std::int64_t length = n - base;
  if (length <= 0) return zero(desc_, n);
  require_window(length);
  const Poly a = window(*this, base, length);
  const Poly b = window(o, base, length);
  if (desc_.kind == FieldKind::Laurent) {
    return normalized(desc_, base, poly_add(a, b, length, desc_.q), n);
  }
  const BigInt modulus = ipow(desc_.q, length);
  const BigInt s = mod_floor(digits_to_integer(a, desc_.q) + digits_to_integer(b, desc_.q),
                             modulus);
  return normalized(desc_, base, integer_to_digits(s, desc_.q, length), n);
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const {
  require_same_field(o);
  const std::int64_t n = std::min(abs_precision_ + o.valuation_lower_bound(),
                                  o.abs_precision_ + valuation_lower_bound());
  if (is_zero_to_precision() || o.is_zero_to_precision()) return zero(desc_, n);
  const std::int64_t v = valuation_.value() + o.valuation_.value();
  const std::int64_t k = std::min(relative_precision(), o.relative_precision());
  if (desc_.kind == FieldKind::Laurent) {
    return Element(desc_, v, poly_mul(digits_, o.digits_, k, desc_.q), n);
  }
  const BigInt modulus = ipow(desc_.q, k);
  const BigInt prod =
      mod_floor(digits_to_integer(digits_, desc_.q) * digits_to_integer(o.digits_, desc_.q),
                modulus);
  return Element(desc_, v, integer_to_digits(prod, desc_.q, k), n);
}

namespace {

Element unit_inverse(const Element& y) {
  const auto& desc = y.descriptor();
  const std::int64_t v = y.valuation().value();
  const std::int64_t k = y.relative_precision();
  std::vector<std::uint32_t> inv;
  if (desc.kind == FieldKind::Laurent) {
    inv = poly_unit_inverse(y.unit_digits(), static_cast<std::size_t>(k), desc.q);
  } else {
    inv = integer_to_digits(int_unit_inverse(digits_to_integer(y.unit_digits(), desc.q),
                                             desc.q, k),
                            desc.q, k);
  }
  return Element::from_digits(desc, -v, inv, k - v);
}

}  // namespace

Element Element::operator/(const Element& o) const {
  require_same_field(o);
  if (o.is_zero_to_precision()) {
    fail(ErrorKind::DivisionByIndistinguishableZero,
         "divisor is O(" + desc_.uniformizer_symbol() + "^" +
             std::to_string(o.abs_precision_) + ")");
  }
  return *this * unit_inverse(o);
}

Element Element::pow(std::int64_t n) const {
  if (n < 0) return one(desc_, relative_precision()) / *this;
  if (n == 0) {
    return one(desc_, is_zero_to_precision() ? std::max<std::int64_t>(abs_precision_, 0)
                                             : relative_precision());
  }
  Element result = *this;
  Element base = *this;
  --n;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

bool Element::congruent(const Element& other, std::int64_t n) const {
  if (n > abs_precision_ || n > other.abs_precision_) {
    fail(ErrorKind::PrecisionExhausted,
         "congruence mod " + desc_.uniformizer_symbol() + "^" + std::to_string(n) +
             " needs both operands known that far");
  }
  return (*this - other).valuation_lower_bound() >= n;
}

namespace {

std::string power_term(const std::string& sym, std::int64_t e) {
  if (e == 1) return sym;
  return sym + "^" + std::to_string(e);
}

std::string digit_series(const std::string& sym, std::int64_t start,
                         const std::vector<std::uint32_t>& digits, std::int64_t prec) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    const std::int64_t e = start + static_cast<std::int64_t>(i);
    if (!out.empty()) out += " + ";
    out += std::to_string(digits[i]);
    if (e != 0) out += "*" + power_term(sym, e);
  }
  if (!out.empty()) out += " + ";
  out += "O(" + power_term(sym, prec) + ")";
  return out;
}

}  // namespace

std::string Element::to_string() const {
  const std::string sym = desc_.uniformizer_symbol();
  if (is_zero_to_precision()) return "O(" + power_term(sym, abs_precision_) + ")";
  const std::int64_t v = valuation_.value();
  if (v >= 0) return digit_series(sym, v, digits_, abs_precision_);
  return sym + "^" + std::to_string(v) + " * (" +
         digit_series(sym, 0, digits_, relative_precision()) + ")";
}

std::ostream& operator<<(std::ostream& os, const Element& x) { return os << x.to_string(); }

Element field_arithmetic(ArithOp op, const Element& x, const Element& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  fail(ErrorKind::InvalidArgument, "unknown operation");
}

Element scale(const Element& a, const BigInt& n) {
  const auto& desc = a.descriptor();
  const bool vanishes = desc.kind == FieldKind::Laurent ? mod_floor(n, desc.q) == 0 : n == 0;
  if (vanishes || a.is_zero_to_precision()) return Element::zero(desc, a.abs_precision());
  const std::int64_t extra = desc.kind == FieldKind::PAdic ? vp(desc.q, n).value() : 0;
  const std::int64_t room = a.relative_precision() + extra + 1;
  return (a * Element::from_integer(desc, n, room)).at_precision(a.abs_precision());
}

Element invert_one_minus(const Element& x, std::int64_t abs_precision) {
  if (x.valuation_lower_bound() <= 0) {
    fail(ErrorKind::DomainError, "1/(1 - x) needs v(x) >= 1, got v(x) = " +
                                     x.valuation().to_string());
  }
  const std::int64_t n = std::min(abs_precision, x.abs_precision());
  const Element xn = x.truncated(std::min(n, x.abs_precision()));
  Element sum = Element::one(x.descriptor(), n);
  Element term = xn;
  while (term.valuation_lower_bound() < n) {
    sum += term;
    term = (term * xn).at_precision(n);
  }
  return sum;
}

Element laurent_invert(const Element& f, std::int64_t abs_precision) {
  if (f.descriptor().kind != FieldKind::Laurent) {
    fail(ErrorKind::InvalidArgument, "laurent_invert needs an element of F_q((T))");
  }
  if (f.is_zero_to_precision()) {
    fail(ErrorKind::DivisionByIndistinguishableZero,
         "series is O(T^" + std::to_string(f.abs_precision()) + ")");
  }
  const Element inv = Element::one(f.descriptor(), f.relative_precision()) / f;
  return inv.truncated(std::min(abs_precision, inv.abs_precision()));
}

ResidueElement residue(const Element& x) {
  const std::int64_t q = x.descriptor().q;
  if (!x.is_zero_to_precision() && x.valuation().value() < 0) {
    fail(ErrorKind::DomainError, "residue of an element with negative valuation");
  }
  if (x.abs_precision() < 1) {
    fail(ErrorKind::PrecisionExhausted, "residue needs precision at least 1");
  }
  return {static_cast<std::int64_t>(x.digit(0)), q};
}

BigInt reduce_mod(const Element& x, std::int64_t j) {
  if (j < 1) fail(ErrorKind::InvalidArgument, "reduction exponent must be positive");
  if (!x.is_zero_to_precision() && x.valuation().value() < 0) {
    fail(ErrorKind::DomainError, "reduction of an element with negative valuation");
  }
  if (j > x.abs_precision()) {
    fail(ErrorKind::PrecisionExhausted, "cannot reduce mod " +
                                            x.descriptor().uniformizer_symbol() + "^" +
                                            std::to_string(j) + " at precision " +
                                            std::to_string(x.abs_precision()));
  }
  std::vector<std::uint32_t> d(static_cast<std::size_t>(j));
  for (std::int64_t i = 0; i < j; ++i) d[i] = x.digit(i);
  return digits_to_integer(d, x.descriptor().q);
}

BigInt digits_to_integer(std::span<const std::uint32_t> digits, std::int64_t q) {
  BigInt n = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    n *= q;
    n += *it;
  }
  return n;
}

std::vector<std::uint32_t> integer_to_digits(BigInt n, std::int64_t q, std::int64_t length) {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(std::max<std::int64_t>(length, 0)), 0);
  const BigInt bq = q;
  BigInt quotient, remainder;
  for (std::int64_t i = 0; i < length && n != 0; ++i) {
    boost::multiprecision::divide_qr(n, bq, quotient, remainder);
    out[i] = static_cast<std::uint32_t>(remainder);
    n = quotient;
  }
  return out;
}

}  // namespace adic

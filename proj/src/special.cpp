#include "adic/special.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

#include "adic/error.hpp"
#include "adic/rootfind.hpp"

namespace adic {

namespace {

class ExpCache {
 public:
  std::shared_ptr<const TruncatedSeries> get(std::int64_t p, std::int64_t prec) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find({p, prec});
      if (it != table_.end()) return it->second;
    }
    auto built = std::make_shared<const TruncatedSeries>(build(p, prec));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.emplace(std::make_pair(p, prec), built);
    return it->second;
  }

 private:
  static TruncatedSeries build(std::int64_t p, std::int64_t prec) {
    const auto desc = FieldDescriptor::padic(p);
    const TailProfile tail = TailProfile::exponential(p);
    const std::int64_t e = exp_min_valuation(p);
    // Store a_0..a_M with every later term below p^prec on the domain.
    std::int64_t top = 0;
    while (tail.affine_bound(top + 1) + (top + 1) * e < prec) ++top;
    TruncatedSeries f{desc, {}, tail};
    Rational inverse_factorial = 1;
    for (std::int64_t j = 0; j <= top; ++j) {
      if (j > 0) inverse_factorial /= j;
      f.coeffs.push_back(Element::from_rational(desc, inverse_factorial, prec));
    }
    return f;
  }

  std::shared_mutex mutex_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const TruncatedSeries>> table_;
};

ExpCache& cache() {
  static ExpCache instance;
  return instance;
}

void require_padic(const Element& x) {
  if (x.descriptor().kind != FieldKind::PAdic) {
    fail(ErrorKind::InvalidArgument, "the exponential is defined here only over Q_p");
  }
}

void require_domain(const Element& x) {
  const std::int64_t e = exp_min_valuation(x.descriptor().q);
  if (x.valuation_lower_bound() < e) {
    fail(ErrorKind::DomainError, "E(x) diverges: v(x) = " + x.valuation().to_string() +
                                     " but the domain needs v(x) >= " + std::to_string(e));
  }
}

}  // namespace

std::int64_t exp_min_valuation(std::int64_t p) { return TailProfile::exponential(p).threshold(); }

TruncatedSeries exp_series(std::int64_t p, std::int64_t prec) { return *cache().get(p, prec); }

Element exp_eval(const Element& x, std::int64_t target) {
  require_padic(x);
  require_domain(x);
  const auto f = cache().get(x.descriptor().q, target);
  return eval(*f, x, target);
}

bool exp_functional_check(const Element& x, const Element& y, std::int64_t target) {
  const Element lhs = exp_eval(x + y, target);
  const Element rhs = exp_eval(x, target) * exp_eval(y, target);
  return lhs.congruent(rhs, target);
}

Element log_solve(const Element& z, std::int64_t target) {
  require_padic(z);
  const auto& desc = z.descriptor();
  const Element shifted = z - Element::one(desc, z.abs_precision());
  const std::int64_t e = exp_min_valuation(desc.q);
  if (shifted.valuation_lower_bound() < e) {
    fail(ErrorKind::DomainError, "log needs v(z - 1) >= " + std::to_string(e) + ", got " +
                                     shifted.valuation().to_string());
  }
  if (z.abs_precision() < target) {
    fail(ErrorKind::PrecisionExhausted, "z is only known to " + desc.uniformizer_symbol() + "^" +
                                            std::to_string(z.abs_precision()));
  }
  if (shifted.valuation_lower_bound() >= target) return Element::zero(desc, target);
  const std::int64_t m = shifted.valuation().value();
  HenselProblem pb{exp_series(desc.q, target), Element::zero(desc, target), z.truncated(target), m,
                   target};
  return hensel_solve(pb).root;
}

}  // namespace adic

#include "adic/rootfind.hpp"

#include <algorithm>
#include <limits>

#include "adic/error.hpp"

namespace adic {

namespace {

void require_in_ball(const Element& x0, std::int64_t m) {
  if (x0.valuation_lower_bound() < m) {
    fail(ErrorKind::DomainError, "starting point " + x0.to_string() +
                                     " lies outside the ball of radius exponent " +
                                     std::to_string(m));
  }
}

std::int64_t working_precision(const HenselProblem& pb) {
  return std::min(pb.f.working_precision(), pb.z.abs_precision());
}

Element derivative_at(const TruncatedSeries& df, const Element& x, std::int64_t cap) {
  const Element d = eval_available(df, x, cap);
  if (d.is_zero_to_precision()) {
    fail(ErrorKind::DerivativeIndistinguishableFromZero,
         "f'(x0) = " + d.to_string() + " is indistinguishable from zero");
  }
  return d;
}

struct Setup {
  TruncatedSeries df;
  Element d;        // f'(x0)
  Element residual; // z - f(x0)
  std::int64_t w = 0;
  std::int64_t vd = 0;
};

Setup prepare(const HenselProblem& pb) {
  require_in_ball(pb.x0, pb.m);
  if (!(pb.f.desc == pb.x0.descriptor()) || !(pb.f.desc == pb.z.descriptor())) {
    fail(ErrorKind::MismatchedField, "problem mixes elements of different fields");
  }
  Setup s{derivative(pb.f), Element(), Element(), working_precision(pb), 0};
  const Element x0 = pb.x0.lifted(std::max(s.w, pb.x0.abs_precision()));
  s.d = derivative_at(s.df, x0, s.w);
  s.vd = s.d.valuation().value();
  s.residual = pb.z - eval_available(pb.f, x0, s.w);
  return s;
}

void require_room(const HenselProblem& pb, const Setup& s) {
  if (s.w < pb.target + s.vd) {
    fail(ErrorKind::PrecisionExhausted,
         "working precision " + std::to_string(s.w) + " cannot certify a root to " +
             pb.f.desc.uniformizer_symbol() + "^" + std::to_string(pb.target) +
             " (needs " + std::to_string(pb.target + s.vd) + ")");
  }
}

RootCertificate finish(const HenselProblem& pb, const Setup& s, const Element& x,
                       const Element& residual, int iterations) {
  RootCertificate cert;
  cert.root = x.truncated(std::min(pb.target, x.abs_precision()));
  cert.residual_prec = residual.valuation_lower_bound();
  cert.uniqueness_exponent = s.residual.valuation_lower_bound() - s.vd;
  const Element d_root = eval_available(s.df, x, s.w);
  cert.derivative = d_root.magnitude_bound();
  cert.iterations = iterations;
  return cert;
}

}  // namespace

HypothesisReport check_hypotheses(const HenselProblem& pb) {
  const Setup s = prepare(pb);
  HypothesisReport r;
  const auto& desc = pb.f.desc;
  const Magnitude radius = desc.magnitude_of_valuation(pb.m);
  r.residual = s.residual.magnitude_bound();
  r.derivative = s.d.magnitude();
  r.m2 = sup_term(pb.f, pb.m, 2);
  r.m1_prime = sup_term(pb.f, pb.m, 1) / radius;
  const Magnitude d2 = r.derivative * r.derivative;
  r.h_close = r.residual <= r.derivative * radius;
  r.h_quadratic = r.m2 * r.residual < d2;
  r.h_single = r.m1_prime * r.residual < d2;
  return r;
}

RootCertificate hensel_solve(const HenselProblem& pb) {
  const HypothesisReport hyp = check_hypotheses(pb);
  if (!(hyp.h_close && hyp.h_quadratic) && !hyp.h_single) {
    fail(ErrorKind::HypothesesFail,
         "|z - f(x0)| = " + hyp.residual.to_string() + ", |f'(x0)| = " +
             hyp.derivative.to_string() + ", M2 = " + hyp.m2.to_string());
  }
  const Setup s = prepare(pb);
  require_room(pb, s);
  const Magnitude scale = hyp.m2 / (hyp.derivative * hyp.derivative);
  const std::int64_t goal = pb.target + s.vd;

  RootCertificate trace;
  Element x = pb.x0.lifted(std::max(s.w, pb.x0.abs_precision())).at_precision(s.w);
  Element residual = s.residual;
  int iterations = 0;
  const int limit = 8 + 2 * static_cast<int>(std::max<std::int64_t>(s.w, 1));
  while (residual.valuation_lower_bound() < goal) {
    if (!residual.is_zero_to_precision()) trace.b_trace.push_back(scale * residual.magnitude());
    if (++iterations > limit) {
      fail(ErrorKind::PrecisionExhausted, "Newton iteration stalled at residual " +
                                              residual.to_string());
    }
    const Element d = derivative_at(s.df, x, s.w);
    x = (x + residual / d).lifted(s.w);
    residual = pb.z - eval_available(pb.f, x, s.w);
  }
  RootCertificate cert = finish(pb, s, x, residual, iterations);
  cert.b_trace = std::move(trace.b_trace);
  return cert;
}

RootCertificate fixed_point_solve(const HenselProblem& pb) {
  const Setup s = prepare(pb);
  const auto& desc = pb.f.desc;
  const Magnitude alpha = s.d.magnitude();
  const Magnitude t = s.residual.magnitude_bound() / alpha;
  const Magnitude m2 = sup_term(pb.f, pb.m, 2);
  const Magnitude radius = desc.magnitude_of_valuation(pb.m);
  if (!(t * m2 < alpha) || t > radius) {
    fail(ErrorKind::ContractionFails,
         "t = " + t.to_string() + ", M2 = " + m2.to_string() + ", |f'(x0)| = " +
             alpha.to_string() + ", r = " + radius.to_string());
  }
  require_room(pb, s);
  const std::int64_t goal = pb.target + s.vd;

  Element x = pb.x0.lifted(std::max(s.w, pb.x0.abs_precision())).at_precision(s.w);
  Element residual = s.residual;
  int iterations = 0;
  const int limit = 8 + 2 * static_cast<int>(std::max<std::int64_t>(s.w, 1));
  while (residual.valuation_lower_bound() < goal) {
    if (++iterations > limit) {
      fail(ErrorKind::PrecisionExhausted, "contraction stalled at residual " +
                                              residual.to_string());
    }
    x = (x + residual / s.d).lifted(s.w);
    residual = pb.z - eval_available(pb.f, x, s.w);
  }
  return finish(pb, s, x, residual, iterations);
}

StrassmannReport strassmann_bound(const TruncatedSeries& f, std::int64_t m) {
  if (f.tail && !f.tail->admits(m)) {
    fail(ErrorKind::DomainError, "radius exponent " + std::to_string(m) +
                                     " is outside the convergence domain");
  }
  const std::int64_t top = f.stored_degree();
  auto weighted = [&](std::int64_t j) {
    return f.coeffs[static_cast<std::size_t>(j)].valuation_lower_bound() + j * m;
  };

  // Largest attainer over j >= from among distinguishable coefficients, or
  // nullopt when the remaining data cannot rule out a later attainer.
  struct Attainer {
    std::int64_t index;
    std::int64_t weight;
    bool conclusive;
  };
  auto attainer = [&](std::int64_t from) -> std::optional<Attainer> {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::int64_t idx = -1;
    for (std::int64_t j = from; j <= top; ++j) {
      if (f.coeffs[static_cast<std::size_t>(j)].is_zero_to_precision()) continue;
      if (weighted(j) <= best) {
        best = weighted(j);
        idx = j;
      }
    }
    if (idx < 0) return std::nullopt;
    for (std::int64_t j = idx + 1; j <= top; ++j) {
      if (weighted(j) <= best) return Attainer{idx, best, false};
    }
    if (f.tail && f.tail->affine_bound(top + 1) + (top + 1) * m <= best) {
      return Attainer{idx, best, false};
    }
    return Attainer{idx, best, true};
  };

  const auto main = attainer(0);
  if (!main) {
    fail(ErrorKind::AllCoefficientsIndistinguishableFromZero,
         "no stored coefficient is distinguishable from zero");
  }
  if (!main->conclusive) {
    fail(ErrorKind::TailInconclusive,
         "coefficients past index " + std::to_string(main->index) +
             " are not known to be strictly smaller on the ball");
  }
  StrassmannReport r;
  r.bound_N = main->index;
  r.attaining_index = main->index;
  r.max_term = f.desc.magnitude_of_valuation(main->weight);
  const auto pre = attainer(1);
  if (pre && pre->conclusive) r.preimage_bound = pre->index;
  return r;
}

namespace {

struct Search {
  const TruncatedSeries& f;
  std::int64_t m;
  std::int64_t scan_depth;
  std::int64_t target;
  std::vector<RootCertificate> roots;

  void visit(const Element& center, std::int64_t depth) {
    const std::int64_t radius = m + depth;
    const TruncatedSeries g = recenter(f, center, m);
    std::optional<std::int64_t> n;
    try {
      n = strassmann_bound(g, radius).bound_N;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TailInconclusive &&
          e.kind() != ErrorKind::AllCoefficientsIndistinguishableFromZero) {
        throw;
      }
    }
    if (n && *n == 0) return;
    if (n && *n == 1) {
      const auto& desc = f.desc;
      const std::int64_t w = g.working_precision();
      HenselProblem pb{g, Element::zero(desc, w), Element::zero(desc, w), radius, target};
      RootCertificate cert = hensel_solve(pb);
      cert.root = (center + cert.root).truncated(target);
      roots.push_back(std::move(cert));
      return;
    }
    if (depth >= scan_depth) {
      fail(ErrorKind::UndecidedMultipleRoot,
           "residue class " + center.to_string() + " at depth " + std::to_string(depth) +
               " may hold several roots");
    }
    const auto& desc = f.desc;
    const std::int64_t w = center.abs_precision();
    for (std::int64_t d = 0; d < desc.q; ++d) {
      const Element step = Element::from_integer(desc, d, w) *
                           Element::uniformizer_power(desc, radius, w);
      visit((center + step).at_precision(w), depth + 1);
    }
  }
};

BigInt residue_key(const Element& x, std::int64_t m) {
  std::vector<std::uint32_t> d;
  for (std::int64_t i = m; i < x.abs_precision(); ++i) d.push_back(x.digit(i));
  return digits_to_integer(d, x.descriptor().q);
}

}  // namespace

std::vector<RootCertificate> enumerate_roots(const TruncatedSeries& f, std::int64_t m,
                                             std::int64_t scan_depth, std::int64_t target) {
  if (scan_depth < 0) fail(ErrorKind::InvalidArgument, "scan depth must be non-negative");
  if (target <= m) {
    fail(ErrorKind::InvalidArgument, "target precision must exceed the radius exponent");
  }
  Search search{f, m, scan_depth, target, {}};
  search.visit(Element::zero(f.desc, std::max(f.working_precision(), target)), 0);
  auto& roots = search.roots;
  std::sort(roots.begin(), roots.end(), [m](const RootCertificate& a, const RootCertificate& b) {
    return residue_key(a.root, m) < residue_key(b.root, m);
  });
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](const RootCertificate& a, const RootCertificate& b) {
                            return a.root.congruent(b.root, a.root.abs_precision());
                          }),
              roots.end());
  return roots;
}

}  // namespace adic

#include "adic/cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adic/error.hpp"
#include "adic/format.hpp"
#include "adic/measure.hpp"
#include "adic/rootfind.hpp"
#include "adic/series.hpp"
#include "adic/special.hpp"
#include "adic/valuation.hpp"

namespace adic {

namespace {

using nlohmann::json;

struct Config {
  std::int64_t prime = 0;
  bool laurent = false;
  std::int64_t precision = 16;
  bool json_output = false;

  FieldDescriptor field() const {
    if (prime == 0) throw ParseError(0, "missing -p <prime>");
    return laurent ? FieldDescriptor::laurent(prime) : FieldDescriptor::padic(prime);
  }
  // Precision for exact inputs of solvers, leaving room above the target.
  std::int64_t solver_precision() const { return 2 * precision + 8; }
};

json big_json(const BigInt& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(n);
  }
  return n.str();
}

json valuation_json(const ExtendedValuation& v) {
  if (v.is_infinite()) return "INFINITY";
  return v.value();
}

json rational_json(const Rational& r) {
  return {{"numerator", big_json(numerator(r))}, {"denominator", big_json(denominator(r))}};
}

json element_json(const Element& x) {
  return {{"text", x.to_string()},
          {"valuation", valuation_json(x.valuation())},
          {"abs_precision", x.abs_precision()},
          {"unit_digits", x.unit_digits()}};
}

json magnitude_json(const Magnitude& m) {
  return {{"base", m.base()}, {"exponent", valuation_json(m.exponent())}, {"text", m.to_string()}};
}

json series_json(const TruncatedSeries& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(element_json(c));
  return {{"text", f.to_string()},
          {"coefficients", coeffs},
          {"tail", f.tail ? json(f.tail->to_string()) : json(nullptr)}};
}

json ball_json(const BallSpec& b) {
  return {{"text", b.to_string()},
          {"center", element_json(b.center())},
          {"radius_exponent", b.radius_exponent()}};
}

json family_json(const BallFamily& f) {
  json a = json::array();
  for (const auto& b : f) a.push_back(ball_json(b));
  return a;
}

json certificate_json(const RootCertificate& c) {
  json trace = json::array();
  for (const auto& b : c.b_trace) trace.push_back(magnitude_json(b));
  return {{"root", element_json(c.root)},
          {"residual_prec", c.residual_prec},
          {"uniqueness_exponent", c.uniqueness_exponent},
          {"derivative", magnitude_json(c.derivative)},
          {"iterations", c.iterations},
          {"b_trace", trace}};
}

json dimension_json(const DimensionValue& d) {
  return {{"count_base", big_json(d.count_base)},
          {"scale_base", big_json(d.scale_base)},
          {"approx", d.approx},
          {"text", d.to_string()}};
}

std::string approx_text(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

BallSpec parse_ball(const FieldDescriptor& desc, const std::string& text, std::int64_t prec) {
  const auto at = text.rfind('@');
  if (at == std::string::npos) throw ParseError(text.size(), "ball literal needs '@radius'");
  BigInt j;
  if (!parse_bigint(text.substr(at + 1), j) || abs(j) > BigInt(1) << 30) {
    throw ParseError(at + 1, "malformed radius exponent");
  }
  const auto radius = static_cast<std::int64_t>(j);
  const Element center = parse_element(desc, text.substr(0, at), std::max(prec, radius + 1));
  return BallSpec(center, radius);
}

BallFamily parse_family(const FieldDescriptor& desc, const std::vector<std::string>& items,
                        std::int64_t prec) {
  BallFamily out;
  for (const auto& s : items) out.push_back(parse_ball(desc, s, prec));
  return out;
}

std::string family_text(const BallFamily& f) {
  std::string s;
  for (const auto& b : f) s += (s.empty() ? "" : " ") + b.to_string();
  return s;
}

Exponent parse_beta(const std::string& text) {
  if (text.rfind("log(", 0) == 0) {
    // log(c)/log(s)
    const auto close1 = text.find(')');
    const auto open2 = text.find("/log(");
    if (close1 == std::string::npos || open2 != close1 + 1 || text.back() != ')') {
      throw ParseError(0, "expected log(c)/log(s)");
    }
    BigInt c, s;
    if (!parse_bigint(text.substr(4, close1 - 4), c)) throw ParseError(4, "malformed count base");
    const std::string tail = text.substr(open2 + 5, text.size() - open2 - 6);
    if (!parse_bigint(tail, s)) throw ParseError(open2 + 5, "malformed scale base");
    return make_dimension(c, s);
  }
  return parse_rational(text);
}

std::vector<std::int64_t> parse_digit_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
    BigInt d;
    if (!parse_bigint(item, d) || abs(d) > BigInt(1) << 40) {
      throw ParseError(start, "malformed digit '" + item + "'");
    }
    out.push_back(static_cast<std::int64_t>(d));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

class Emitter {
 public:
  Emitter(std::ostream& out, const bool& json) : out_(out), json_(json) {}
  void emit(const std::string& text, const json& value) {
    if (json_) out_ << value.dump() << '\n';
    else out_ << text << '\n';
  }

 private:
  std::ostream& out_;
  const bool& json_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic in Q_p and F_q((T))", "adic"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("-p,--prime", cfg.prime, "residue field size (a prime)");
  app.add_flag("--laurent", cfg.laurent, "work in F_q((T)) instead of Q_p");
  app.add_option("-N,--precision", cfg.precision, "absolute precision (default 16)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json_output, "JSON output");

  Emitter em(out, cfg.json_output);
  std::function<void()> action;

  // val
  std::string val_x;
  auto* val = app.add_subcommand("val", "p-adic valuation of a rational");
  val->add_option("x", val_x)->required();
  val->callback([&] {
    action = [&] {
      const ExtendedValuation v = vp(cfg.prime, parse_rational(val_x));
      em.emit(v.to_string(), {{"valuation", valuation_json(v)}});
    };
  });

  // factval
  std::int64_t fv_j = 0;
  auto* factval = app.add_subcommand("factval", "exponent of p in j!");
  factval->add_option("j", fv_j)->required();
  factval->callback([&] {
    action = [&] {
      const std::int64_t r = factorial_valuation(cfg.prime, fv_j);
      em.emit(std::to_string(r), {{"factorial_valuation", r}});
    };
  });

  // elem
  std::vector<std::string> elem_args;
  auto* elem = app.add_subcommand("elem", "element arithmetic: add|sub|mul|div|inv|show|residue|reduce");
  elem->add_option("args", elem_args, "operation and operands")->required();
  elem->callback([&] {
    action = [&] {
      const auto desc = cfg.field();
      const std::string& op = elem_args.at(0);
      auto operand = [&](std::size_t i) {
        if (i >= elem_args.size()) throw ParseError(0, "elem " + op + " needs more operands");
        return parse_element(desc, elem_args[i], cfg.precision);
      };
      auto emit_elem = [&](const Element& x) { em.emit(x.to_string(), element_json(x)); };
      if (op == "add") emit_elem(operand(1) + operand(2));
      else if (op == "sub") emit_elem(operand(1) - operand(2));
      else if (op == "mul") emit_elem(operand(1) * operand(2));
      else if (op == "div") emit_elem(operand(1) / operand(2));
      else if (op == "show") emit_elem(operand(1));
      else if (op == "inv") {
        const Element x = operand(1);
        emit_elem(desc.kind == FieldKind::Laurent
                      ? laurent_invert(x, cfg.precision)
                      : Element::one(desc, x.relative_precision()) / x);
      } else if (op == "residue") {
        const ResidueElement r = residue(operand(1));
        em.emit(std::to_string(r.value), {{"residue", r.value}, {"residue_size", r.q}});
      } else if (op == "reduce") {
        if (elem_args.size() < 3) throw ParseError(0, "elem reduce needs <x> <j>");
        BigInt j;
        if (!parse_bigint(elem_args[2], j) || j > BigInt(1) << 30) {
          throw ParseError(0, "malformed exponent '" + elem_args[2] + "'");
        }
        const BigInt r = reduce_mod(operand(1), static_cast<std::int64_t>(j));
        em.emit(r.str(), {{"reduction", big_json(r)}});
      } else {
        throw ParseError(0, "unknown elem operation '" + op + "'");
      }
    };
  });

  // inv1m
  std::string inv_x;
  auto* inv1m = app.add_subcommand("inv1m", "1/(1 - x) by the geometric series");
  inv1m->add_option("x", inv_x)->required();
  inv1m->callback([&] {
    action = [&] {
      const Element r = invert_one_minus(parse_element(cfg.field(), inv_x, cfg.precision),
                                         cfg.precision);
      em.emit(r.to_string(), element_json(r));
    };
  });

  // hensel
  std::string h_f, h_x0, h_z = "0", h_method = "newton";
  std::int64_t h_m = 0;
  auto* hensel = app.add_subcommand("hensel", "solve f(x) = z near x0");
  hensel->add_option("--f", h_f, "series literal")->required();
  hensel->add_option("--x0", h_x0, "starting point")->required();
  hensel->add_option("--z", h_z, "right-hand side (default 0)");
  hensel->add_option("--m", h_m, "domain radius exponent (default 0)");
  hensel->add_option("--method", h_method, "newton or fixed")
      ->check(CLI::IsMember({"newton", "fixed"}));
  hensel->callback([&] {
    action = [&] {
      const auto desc = cfg.field();
      const std::int64_t w = cfg.solver_precision();
      HenselProblem pb{parse_series(desc, h_f, w), parse_element(desc, h_x0, w),
                       parse_element(desc, h_z, w), h_m, cfg.precision};
      const RootCertificate c = h_method == "fixed" ? fixed_point_solve(pb) : hensel_solve(pb);
      em.emit(c.root.to_string(), certificate_json(c));
    };
  });

  // roots
  std::string r_f;
  std::int64_t r_m = 0, r_depth = 4;
  auto* roots = app.add_subcommand("roots", "all roots in the ball v(x) >= m");
  roots->add_option("--f", r_f, "series literal")->required();
  roots->add_option("--m", r_m, "radius exponent (default 0)");
  roots->add_option("--depth", r_depth, "scan depth (default 4)");
  roots->callback([&] {
    action = [&] {
      const auto desc = cfg.field();
      const auto found =
          enumerate_roots(parse_series(desc, r_f, cfg.solver_precision()), r_m, r_depth,
                          cfg.precision);
      std::string text;
      json arr = json::array();
      for (const auto& c : found) {
        text += (text.empty() ? "" : "\n") + c.root.to_string();
        arr.push_back(certificate_json(c));
      }
      if (cfg.json_output) out << json{{"roots", arr}}.dump() << '\n';
      else if (!text.empty()) out << text << '\n';
    };
  });

  // strassmann
  std::string s_f;
  std::int64_t s_m = 0;
  auto* strass = app.add_subcommand("strassmann", "bound on the number of zeros in v(x) >= m");
  strass->add_option("--f", s_f, "series literal")->required();
  strass->add_option("--m", s_m, "radius exponent (default 0)");
  strass->callback([&] {
    action = [&] {
      const auto r = strassmann_bound(parse_series(cfg.field(), s_f, cfg.precision), s_m);
      em.emit(std::to_string(r.bound_N),
              {{"bound_N", r.bound_N},
               {"attaining_index", r.attaining_index},
               {"max_term", magnitude_json(r.max_term)},
               {"preimage_bound", r.preimage_bound ? json(*r.preimage_bound) : json(nullptr)}});
    };
  });

  // exp / log
  std::string exp_x, log_z;
  auto* exp = app.add_subcommand("exp", "the exponential E(x)");
  exp->add_option("x", exp_x)->required();
  exp->callback([&] {
    action = [&] {
      const Element r = exp_eval(parse_element(cfg.field(), exp_x, cfg.precision), cfg.precision);
      em.emit(r.to_string(), element_json(r));
    };
  });
  auto* log = app.add_subcommand("log", "the x in the domain with E(x) = z");
  log->add_option("z", log_z)->required();
  log->callback([&] {
    action = [&] {
      const Element r = log_solve(parse_element(cfg.field(), log_z, cfg.precision), cfg.precision);
      em.emit(r.to_string(), element_json(r));
    };
  });

  // recenter / deflate
  std::string rc_f, rc_x0;
  std::int64_t rc_m = 0;
  auto* rec = app.add_subcommand("recenter", "coefficients of f(W + x0)");
  auto* defl = app.add_subcommand("deflate", "g0 with f(x) - f(x0) = (x - x0) g0(x)");
  for (auto* sub : {rec, defl}) {
    sub->add_option("--f", rc_f, "series literal")->required();
    sub->add_option("--x0", rc_x0, "center")->required();
    sub->add_option("--m", rc_m, "radius exponent (default 0)");
  }
  auto series_action = [&](bool deflating) {
    return [&, deflating] {
      action = [&, deflating] {
        const auto desc = cfg.field();
        const TruncatedSeries f = parse_series(desc, rc_f, cfg.precision);
        const Element x0 = parse_element(desc, rc_x0, cfg.precision);
        const TruncatedSeries g = deflating ? deflate(f, x0, rc_m) : recenter(f, x0, rc_m);
        em.emit(g.to_string(), series_json(g));
      };
    };
  };
  rec->callback(series_action(false));
  defl->callback(series_action(true));

  // measure
  auto* measure = app.add_subcommand("measure", "Haar measure of ball families");
  measure->require_subcommand(1);
  std::vector<std::string> mu_balls, ms_balls, mi_balls, mr_balls;
  std::string ms_c, mi_f, mi_ball;
  auto* m_union = measure->add_subcommand("union", "measure of a union of balls");
  m_union->add_option("balls", mu_balls, "center@radius_exponent ...");
  m_union->callback([&] {
    action = [&] {
      const auto desc = cfg.field();
      const BallFamily fam = parse_family(desc, mu_balls, cfg.precision);
      const Rational h = haar_union_measure(fam);
      em.emit(rational_to_string(h),
              {{"measure", rational_json(h)}, {"maximal", family_json(maximal_disjointify(fam))}});
    };
  });
  auto* m_disjoint = measure->add_subcommand("disjoint", "maximal balls of a family");
  m_disjoint->add_option("balls", mr_balls, "center@radius_exponent ...");
  m_disjoint->callback([&] {
    action = [&] {
      const BallFamily fam = maximal_disjointify(parse_family(cfg.field(), mr_balls, cfg.precision));
      em.emit(family_text(fam), {{"family", family_json(fam)}});
    };
  });
  auto* m_relation = measure->add_subcommand("relation", "how two balls meet");
  std::vector<std::string> rel_balls;
  m_relation->add_option("balls", rel_balls, "two balls")->required()->expected(2);
  m_relation->callback([&] {
    action = [&] {
      const auto desc = cfg.field();
      const BallRelation r = ball_relation(parse_ball(desc, rel_balls.at(0), cfg.precision),
                                           parse_ball(desc, rel_balls.at(1), cfg.precision));
      em.emit(std::string(relation_name(r)), {{"relation", relation_name(r)}});
    };
  });
  auto* m_scale = measure->add_subcommand("scale", "the family c*F");
  m_scale->add_option("--c", ms_c, "nonzero scalar")->required();
  m_scale->add_option("balls", ms_balls, "center@radius_exponent ...");
  m_scale->callback([&] {
    action = [&] {
      const auto desc = cfg.field();
      const ScaledFamily s =
          scale_family(parse_element(desc, ms_c, cfg.precision), parse_family(desc, ms_balls,
                                                                               cfg.precision));
      em.emit("family: " + family_text(s.family) + "\nratio: " + rational_to_string(s.ratio),
              {{"family", family_json(s.family)}, {"ratio", rational_json(s.ratio)}});
    };
  });
  auto* m_image = measure->add_subcommand("image", "measure of f(E) for E inside an admissible ball");
  m_image->add_option("--f", mi_f, "series literal")->required();
  m_image->add_option("--ball", mi_ball, "admissible ball")->required();
  m_image->add_option("balls", mi_balls, "sub-balls of the admissible ball");
  m_image->callback([&] {
    action = [&] {
      const auto desc = cfg.field();
      const TruncatedSeries f = parse_series(desc, mi_f, cfg.solver_precision());
      const BallSpec ball = parse_ball(desc, mi_ball, cfg.precision);
      BallFamily sub = parse_family(desc, mi_balls, cfg.precision);
      if (sub.empty()) sub.push_back(ball);
      const ImageMeasure r = image_measure(f, ball, sub);
      em.emit(rational_to_string(r.measure),
              {{"measure", rational_json(r.measure)}, {"image", family_json(r.image)}});
    };
  });

  // dim
  auto* dim = app.add_subcommand("dim", "Hausdorff dimension computations");
  dim->require_subcommand(1);
  std::string dd_digits, dd_beta;
  std::int64_t dd_depth = 1;
  auto* d_digits = dim->add_subcommand("digits", "digit-set cover at depth n");
  d_digits->add_option("--digits", dd_digits, "comma separated digits")->required();
  d_digits->add_option("--depth", dd_depth, "depth n")->required();
  d_digits->add_option("--beta", dd_beta, "exponent: a/b or log(c)/log(s); default the dimension");
  d_digits->callback([&] {
    action = [&] {
      if (cfg.prime == 0) throw ParseError(0, "missing -p <prime>");
      const auto digits = parse_digit_list(dd_digits);
      std::set<std::int64_t> distinct(digits.begin(), digits.end());
      const Exponent beta =
          dd_beta.empty()
              ? Exponent(make_dimension(static_cast<std::int64_t>(distinct.size()), cfg.prime))
              : parse_beta(dd_beta);
      const DigitSetReport r = digit_set_analysis(cfg.prime, digits, dd_depth, beta);
      const auto exact = r.content.exact_value();
      em.emit("ball_count: " + r.ball_count.str() + "\ncontent: " + r.content.to_string() +
                  "\ndimension: " + r.dimension.to_string() + " ~ " +
                  approx_text(r.dimension.approx),
              {{"ball_count", big_json(r.ball_count)},
               {"content", {{"text", r.content.to_string()},
                            {"exact", exact ? rational_json(*exact) : json(nullptr)}}},
               {"dimension", dimension_json(r.dimension)}});
    };
  });
  std::string da_a = "1";
  std::int64_t da_rho = 1;
  auto* d_alpha = dim->add_subcommand("alpha", "alpha with rho1^(-alpha) = q under d^a");
  d_alpha->add_option("--a", da_a, "snowflake exponent (default 1)");
  d_alpha->add_option("--rho1", da_rho, "rho1 = q^(-rho1) (default 1)");
  d_alpha->callback([&] {
    action = [&] {
      if (cfg.prime == 0) throw ParseError(0, "missing -p <prime>");
      const FieldDescriptor desc = cfg.laurent ? FieldDescriptor::laurent(cfg.prime, da_rho)
                                               : FieldDescriptor::padic(cfg.prime, da_rho);
      const Rational a = parse_rational(da_a);
      const DimensionValue d = hausdorff_alpha(desc, a);
      const Rational exact = a > 0 ? Rational(1) / (a * da_rho) : Rational(0);
      em.emit(rational_to_string(exact),
              {{"alpha", rational_json(exact)}, {"dimension", dimension_json(d)}});
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  } catch (const ParseError& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return 1;
  }

  try {
    if (!action) throw ParseError(0, "no command given");
    if (cfg.prime != 0 && !is_prime(cfg.prime)) {
      err << "error: InvalidArgument: " << cfg.prime << " is not prime\n";
      return 1;
    }
    action();
  } catch (const ParseError& e) {
    if (cfg.json_output) {
      out << json{{"error", "ParseError"}, {"position", e.position()}, {"message", e.what()}}.dump()
          << '\n';
    }
    err << "error: ParseError: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    if (cfg.json_output) {
      out << json{{"error", std::string(e.name())}, {"message", e.what()}}.dump() << '\n';
    }
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace adic

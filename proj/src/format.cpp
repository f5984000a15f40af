#include "adic/format.hpp"

#include <cctype>
#include <memory>

#include "adic/error.hpp"
#include "adic/special.hpp"

namespace adic {

namespace {

enum class NodeKind { Int, Sym, Var, Exp, BigO, Add, Sub, Mul, Div, Neg, Pow, Tail };

struct Node {
  NodeKind kind;
  std::size_t pos = 0;
  BigInt value;            // Int
  std::int64_t n = 0;      // BigO exponent, Pow exponent
  TailProfile tail;        // Tail
  std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(NodeKind k, std::size_t pos) {
  auto node = std::make_unique<Node>();
  node->kind = k;
  node->pos = pos;
  return node;
}

class Parser {
 public:
  Parser(const FieldDescriptor& desc, std::string_view text, bool series)
      : desc_(desc), text_(text), series_(series) {}

  NodePtr parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, "empty literal");
    NodePtr root = parse_expr();
    skip_space();
    if (pos_ < text_.size()) {
      throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(pos_, std::string("expected '") + c + "'" +
                                 (pos_ < text_.size() ? std::string(", found '") + text_[pos_] + "'"
                                                      : std::string(" at end of input")));
    }
  }

  BigInt parse_int() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected an integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::int64_t parse_small_int() {
    const std::size_t at = pos_;
    bool neg = accept('-');
    BigInt v = parse_int();
    if (v > BigInt(1) << 40) throw ParseError(at, "exponent too large");
    auto r = static_cast<std::int64_t>(v);
    return neg ? -r : r;
  }

  std::int64_t parse_exponent() {
    if (accept('(')) {
      const std::int64_t e = parse_small_int();
      expect(')');
      return e;
    }
    return parse_small_int();
  }

  std::string parse_ident() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ':' ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    for (;;) {
      const std::size_t at = (skip_space(), pos_);
      NodeKind k;
      if (accept('+')) k = NodeKind::Add;
      else if (accept('-')) k = NodeKind::Sub;
      else return left;
      NodePtr node = make(k, at);
      node->a = std::move(left);
      node->b = parse_term();
      left = std::move(node);
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_unary();
    for (;;) {
      const std::size_t at = (skip_space(), pos_);
      NodeKind k;
      if (accept('*')) k = NodeKind::Mul;
      else if (accept('/')) k = NodeKind::Div;
      else return left;
      NodePtr node = make(k, at);
      node->a = std::move(left);
      node->b = parse_unary();
      left = std::move(node);
    }
  }

  NodePtr parse_unary() {
    const std::size_t at = (skip_space(), pos_);
    if (accept('-')) {
      NodePtr node = make(NodeKind::Neg, at);
      node->a = parse_unary();
      return node;
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    const std::size_t at = (skip_space(), pos_);
    if (accept('^')) {
      NodePtr node = make(NodeKind::Pow, at);
      node->n = parse_exponent();
      node->a = std::move(base);
      return node;
    }
    return base;
  }

  // Exponent N of O(pi^N).
  std::int64_t parse_big_o_argument() {
    skip_space();
    const std::size_t at = pos_;
    std::int64_t base_exp;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const BigInt v = parse_int();
      if (v == 1) {
        base_exp = 0;
      } else if (desc_.kind == FieldKind::PAdic && v > 1 && vp(desc_.q, v).is_finite() &&
                 ipow(desc_.q, vp(desc_.q, v).value()) == v) {
        base_exp = vp(desc_.q, v).value();
      } else {
        throw ParseError(at, "O-term must be a power of the uniformizer");
      }
    } else {
      const std::string id = parse_ident();
      if (!is_uniformizer(id)) throw ParseError(at, "O-term must be a power of the uniformizer");
      base_exp = 1;
    }
    if (accept('^')) return base_exp * parse_exponent();
    return base_exp;
  }

  bool is_uniformizer(const std::string& id) const {
    return desc_.kind == FieldKind::PAdic ? id == "p" : id == "T";
  }

  NodePtr parse_atom() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      NodePtr node = make(NodeKind::Int, at);
      node->value = parse_int();
      return node;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError(at, std::string("unexpected '") + c + "'");
    }
    const std::string id = parse_ident();
    if (is_uniformizer(id)) return make(NodeKind::Sym, at);
    if (id == "O") {
      expect('(');
      NodePtr node = make(NodeKind::BigO, at);
      node->n = parse_big_o_argument();
      expect(')');
      return node;
    }
    if (series_ && id == "X") return make(NodeKind::Var, at);
    if (series_ && id == "exp") {
      if (desc_.kind != FieldKind::PAdic) {
        throw ParseError(at, "the exponential series needs a p-adic field");
      }
      return make(NodeKind::Exp, at);
    }
    if (series_ && id.rfind("tail:", 0) == 0) {
      NodePtr node = make(NodeKind::Tail, at);
      if (id == "tail:exp") {
        if (desc_.kind != FieldKind::PAdic) {
          throw ParseError(at, "tail:exp needs a p-adic field");
        }
        node->tail = TailProfile::exponential(desc_.q);
      } else if (id == "tail:geom") {
        node->tail = TailProfile::geometric();
      } else if (id == "tail:affine") {
        expect('(');
        const std::int64_t a = parse_small_int();
        expect(',');
        const std::int64_t b = parse_small_int();
        expect(',');
        const std::size_t dpos = pos_;
        const std::int64_t d = parse_small_int();
        expect(')');
        if (d <= 0) throw ParseError(dpos, "tail denominator must be positive");
        node->tail = TailProfile::affine(a, b, d);
      } else {
        throw ParseError(at, "unknown tail profile '" + id + "'");
      }
      return node;
    }
    throw ParseError(at, "unknown symbol '" + id + "'");
  }

  const FieldDescriptor& desc_;
  std::string_view text_;
  bool series_;
  std::size_t pos_ = 0;
};

struct Shape {
  std::int64_t weight = 0;
  std::int64_t max_o = 0;
  bool has_o = false;
};

void measure_shape(const Node& node, const FieldDescriptor& desc, Shape& shape,
                   std::int64_t& weight) {
  std::int64_t wa = 0, wb = 0;
  if (node.a) measure_shape(*node.a, desc, shape, wa);
  if (node.b) measure_shape(*node.b, desc, shape, wb);
  switch (node.kind) {
    case NodeKind::Int:
      weight = desc.kind == FieldKind::PAdic && node.value != 0
                   ? vp(desc.q, node.value).value()
                   : 0;
      break;
    case NodeKind::Sym: weight = 1; break;
    case NodeKind::BigO:
      shape.has_o = true;
      shape.max_o = std::max(shape.max_o, node.n < 0 ? -node.n : node.n);
      weight = 0;
      break;
    case NodeKind::Pow: weight = wa * (node.n < 0 ? -node.n : node.n); break;
    default: weight = wa + wb; break;
  }
}

Element eval_element(const Node& node, const FieldDescriptor& desc, std::int64_t L) {
  switch (node.kind) {
    case NodeKind::Int: return Element::from_integer(desc, node.value, L);
    case NodeKind::Sym: return Element::uniformizer_power(desc, 1, L);
    case NodeKind::BigO: return Element::zero(desc, node.n);
    case NodeKind::Add: return eval_element(*node.a, desc, L) + eval_element(*node.b, desc, L);
    case NodeKind::Sub: return eval_element(*node.a, desc, L) - eval_element(*node.b, desc, L);
    case NodeKind::Mul: return eval_element(*node.a, desc, L) * eval_element(*node.b, desc, L);
    case NodeKind::Div: return eval_element(*node.a, desc, L) / eval_element(*node.b, desc, L);
    case NodeKind::Neg: return -eval_element(*node.a, desc, L);
    case NodeKind::Pow: {
      const Element base = eval_element(*node.a, desc, L);
      if (node.n == 0) return Element::one(desc, L);
      if (node.n > 0) return base.pow(node.n);
      return Element::one(desc, L) / base.pow(-node.n);
    }
    default: throw ParseError(node.pos, "series syntax in an element literal");
  }
}

TruncatedSeries constant(const Element& c) {
  return TruncatedSeries::polynomial(c.descriptor(), {c});
}

bool is_constant(const TruncatedSeries& f) { return f.is_polynomial() && f.coeffs.size() == 1; }

TruncatedSeries eval_series(const Node& node, const FieldDescriptor& desc, std::int64_t L,
                            std::int64_t D) {
  switch (node.kind) {
    case NodeKind::Var:
      return TruncatedSeries::polynomial(desc, {Element::zero(desc, L), Element::one(desc, L)});
    case NodeKind::Exp: return exp_series(desc.q, D);
    case NodeKind::Tail: throw ParseError(node.pos, "a tail profile must be a trailing summand");
    case NodeKind::Add:
      return series_sum(eval_series(*node.a, desc, L, D), eval_series(*node.b, desc, L, D));
    case NodeKind::Sub:
      return series_sum(eval_series(*node.a, desc, L, D),
                        series_scale(eval_series(*node.b, desc, L, D),
                                     -Element::one(desc, L)));
    case NodeKind::Neg:
      return series_scale(eval_series(*node.a, desc, L, D), -Element::one(desc, L));
    case NodeKind::Mul: {
      TruncatedSeries f = eval_series(*node.a, desc, L, D);
      TruncatedSeries g = eval_series(*node.b, desc, L, D);
      if (is_constant(f)) return series_scale(g, f.coeffs[0]);
      if (is_constant(g)) return series_scale(f, g.coeffs[0]);
      return cauchy_product(f, g);
    }
    case NodeKind::Div: {
      TruncatedSeries f = eval_series(*node.a, desc, L, D);
      TruncatedSeries g = eval_series(*node.b, desc, L, D);
      if (!is_constant(g)) throw ParseError(node.pos, "division by a non-constant series");
      return series_scale(f, Element::one(desc, L) / g.coeffs[0]);
    }
    case NodeKind::Pow: {
      TruncatedSeries f = eval_series(*node.a, desc, L, D);
      if (is_constant(f)) {
        return constant(node.n >= 0 ? (node.n == 0 ? Element::one(desc, L) : f.coeffs[0].pow(node.n))
                                    : Element::one(desc, L) / f.coeffs[0].pow(-node.n));
      }
      if (node.n < 0) throw ParseError(node.pos, "negative power of a non-constant series");
      TruncatedSeries r = constant(Element::one(desc, L));
      for (std::int64_t i = 0; i < node.n; ++i) r = cauchy_product(r, f);
      return r;
    }
    default: return constant(eval_element(node, desc, L));
  }
}

// Detaches trailing `+ tail:...` summands from the top-level sum.
std::optional<TailProfile> detach_tail(NodePtr& root) {
  std::optional<TailProfile> tail;
  if (root->kind == NodeKind::Tail) {
    throw ParseError(root->pos, "a tail profile needs at least one written coefficient");
  }
  while (root->kind == NodeKind::Add && root->b->kind == NodeKind::Tail) {
    if (tail) throw ParseError(root->b->pos, "more than one tail profile");
    tail = root->b->tail;
    root = std::move(root->a);
    if (root->kind == NodeKind::Tail) {
      throw ParseError(root->pos, "a tail profile needs at least one written coefficient");
    }
  }
  return tail;
}

constexpr int kAttempts = 6;

bool retryable(const Error& e) {
  return e.kind() == ErrorKind::DivisionByIndistinguishableZero ||
         e.kind() == ErrorKind::PrecisionExhausted;
}

}  // namespace

Element parse_element(const FieldDescriptor& desc, std::string_view text,
                      std::int64_t default_prec) {
  Parser parser(desc, text, false);
  NodePtr root = parser.parse();
  Shape shape;
  measure_shape(*root, desc, shape, shape.weight);
  std::int64_t L = default_prec + shape.weight + shape.max_o + 8;
  for (int attempt = 0;; ++attempt) {
    try {
      Element x = eval_element(*root, desc, L);
      if (shape.has_o) return x;
      if (x.abs_precision() >= default_prec) return x.truncated(default_prec);
      if (attempt + 1 >= kAttempts) return x;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      if (!retryable(e) || attempt + 1 >= kAttempts) throw;
    }
    L = 2 * L + 16;
  }
}

TruncatedSeries parse_series(const FieldDescriptor& desc, std::string_view text,
                             std::int64_t default_prec) {
  Parser parser(desc, text, true);
  NodePtr root = parser.parse();
  std::optional<TailProfile> tail = detach_tail(root);
  Shape shape;
  measure_shape(*root, desc, shape, shape.weight);
  std::int64_t L = default_prec + shape.weight + shape.max_o + 8;
  for (int attempt = 0;; ++attempt) {
    try {
      TruncatedSeries f = eval_series(*root, desc, L, default_prec);
      bool short_of_target = false;
      if (!shape.has_o) {
        for (auto& c : f.coeffs) {
          if (c.abs_precision() >= default_prec) c = c.truncated(default_prec);
          else short_of_target = true;
        }
      }
      if (!short_of_target || attempt + 1 >= kAttempts) {
        if (tail) {
          if (f.tail) throw ParseError(0, "series already carries a tail profile");
          f.tail = tail;
        }
        return f;
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      if (!retryable(e) || attempt + 1 >= kAttempts) throw;
    }
    L = 2 * L + 16;
  }
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw ParseError(0, "empty rational");
  s = s.substr(first, last - first + 1);
  const auto slash = s.find('/');
  BigInt num, den = 1;
  if (!parse_bigint(s.substr(0, slash), num)) throw ParseError(first, "malformed integer");
  if (slash != std::string::npos) {
    if (!parse_bigint(s.substr(slash + 1), den)) {
      throw ParseError(first + slash + 1, "malformed denominator");
    }
    if (den == 0) throw ParseError(first + slash + 1, "zero denominator");
  }
  return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace adic

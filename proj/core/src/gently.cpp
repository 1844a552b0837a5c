#include "wpa/gently.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "wpa/error.hpp"

namespace wpa {

struct GentlyGrowingFn::Node {
  enum class Kind { Term, Const, Max, Sum } kind = Kind::Term;
  mpq_class alpha = 1, beta = 1, c = 0;
  unsigned j = 1;
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using Node = GentlyGrowingFn::Node;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return n;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("bad function '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  mpq_class rational() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
                                s_[pos_] == '.' || s_[pos_] == '-'))
      ++pos_;
    std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty()) fail("expected a number");
    mpq_class q;
    auto dot = tok.find('.');
    if (dot != std::string::npos) {
      std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, tok.size() - dot - 1);
      if (digits.empty() || digits == "-" || mpz_class().set_str(digits, 10) != 0) fail("bad decimal '" + tok + "'");
      q = mpq_class(mpz_class(digits), den);
    } else if (q.set_str(tok, 10) != 0) {
      fail("bad rational '" + tok + "'");
    }
    q.canonicalize();
    return q;
  }

  NodePtr expr() {
    std::string name = ident();
    auto node = std::make_shared<Node>();
    if (name == "log2" || name == "loglog2" || name == "logloglog2") {
      node->j = name == "log2" ? 1 : name == "loglog2" ? 2 : 3;
      return node;
    }
    if (name == "root") {
      expect(':');
      mpq_class h = rational();
      if (h <= 0 || h.get_den() != 1) fail("root:h needs a positive integer h");
      node->beta = 1 / h;
      return node;
    }
    if (name == "const") {
      expect(':');
      node->kind = Node::Kind::Const;
      node->c = rational();
      if (node->c <= 0) fail("constant must be positive");
      return node;
    }
    if (name == "term") {
      expect('(');
      node->alpha = rational();
      expect(',');
      mpq_class j = rational();
      expect(',');
      node->beta = rational();
      expect(')');
      if (node->alpha <= 0 || node->beta <= 0) fail("alpha and beta must be positive");
      if (j < 1 || j.get_den() != 1 || j > 16) fail("j must be an integer in 1..16");
      node->j = static_cast<unsigned>(j.get_num().get_ui());
      return node;
    }
    if (name == "max" || name == "sum") {
      node->kind = name == "max" ? Node::Kind::Max : Node::Kind::Sum;
      expect('(');
      do {
        node->children.push_back(expr());
      } while (eat(','));
      expect(')');
      return node;
    }
    fail(name.empty() ? "expected a function name" : "unknown function '" + name + "'");
  }
};

Magnitude eval_node(const Node& n, const Magnitude& x) {
  switch (n.kind) {
    case Node::Kind::Const: return Magnitude::of(n.c);
    case Node::Kind::Term: {
      Magnitude v = x;
      for (unsigned i = 0; i < n.j; ++i) v = v.log2();
      v = max(v, Magnitude::of(0L));
      if (n.beta != 1) v = pow(v, Magnitude::of(n.beta));
      if (n.alpha != 1) v = mul(Magnitude::of(n.alpha), v);
      return v;
    }
    case Node::Kind::Max: {
      Magnitude acc = eval_node(*n.children.front(), x);
      for (std::size_t i = 1; i < n.children.size(); ++i) acc = max(acc, eval_node(*n.children[i], x));
      return acc;
    }
    case Node::Kind::Sum: {
      Magnitude acc = eval_node(*n.children.front(), x);
      for (std::size_t i = 1; i < n.children.size(); ++i) acc = add(acc, eval_node(*n.children[i], x));
      return acc;
    }
  }
  return {};
}

// Lower-bound points are encoded as Magnitudes with lo == hi.
Magnitude lower_point(const Magnitude& m) { return {m.depth(), m.lo(), m.lo()}; }

Magnitude inverse_node(const Node& n, const Magnitude& T) {
  const Magnitude zero = Magnitude::of(0L);
  switch (n.kind) {
    case Node::Kind::Const: {
      Ordering o = compare(Magnitude::of(n.c), T);
      if (o == Ordering::Less) return Magnitude(0, Real::pos_inf(), Real::pos_inf());
      return zero;
    }
    case Node::Kind::Term: {
      Magnitude u = n.alpha == 1 ? T : mul(Magnitude::of(mpq_class(1 / n.alpha)), T);
      if (u.upper_value().sign() <= 0) return zero;
      u = max(u, zero);
      if (n.beta != 1) u = pow(u, Magnitude::of(mpq_class(1 / n.beta)));
      Magnitude x = lower_point(u);
      for (unsigned i = 0; i < n.j; ++i) x = x.exp2();
      return x;
    }
    case Node::Kind::Max:
    case Node::Kind::Sum: {
      Magnitude t = T;
      if (n.kind == Node::Kind::Sum)
        t = mul(Magnitude::of(mpq_class(1, static_cast<unsigned long>(n.children.size()))), T);
      Magnitude acc = inverse_node(*n.children.front(), t);
      for (std::size_t i = 1; i < n.children.size(); ++i) acc = min(acc, inverse_node(*n.children[i], t));
      return lower_point(acc);
    }
  }
  return zero;
}

bool constant_node(const Node& n) {
  if (n.kind == Node::Kind::Const) return true;
  if (n.kind == Node::Kind::Term) return false;
  for (const auto& c : n.children)
    if (!constant_node(*c)) return false;
  return true;
}

}  // namespace

GentlyGrowingFn GentlyGrowingFn::parse(std::string_view text) {
  GentlyGrowingFn f;
  f.root_ = Parser(text).parse_all();
  f.text_ = std::string(text);
  return f;
}

GentlyGrowingFn GentlyGrowingFn::term(const mpq_class& alpha, unsigned j, const mpq_class& beta) {
  return parse("term(" + alpha.get_str() + "," + std::to_string(j) + "," + beta.get_str() + ")");
}

Magnitude GentlyGrowingFn::eval(const Magnitude& x) const { return eval_node(*root_, x); }

mpq_class GentlyGrowingFn::eval_floor(const mpz_class& x) const {
  Real lo = eval(x).lower_value();
  if (!lo.is_finite()) throw PreconditionError("f(" + x.get_str() + ") has no finite lower enclosure");
  Real scaled = mul(lo, Real::from_mpz(mpz_class(1) << 32, Round::Down), Round::Down);
  mpq_class q(scaled.floor(), mpz_class(1) << 32);
  q.canonicalize();
  return q;
}

Magnitude GentlyGrowingFn::inverse_lower(const Magnitude& T) const { return inverse_node(*root_, T); }

bool GentlyGrowingFn::is_constant() const { return constant_node(*root_); }

nlohmann::ordered_json GentlyReport::to_json() const {
  return {{"positive", positive},       {"monotone", monotone},   {"unbounded_trend", unbounded_trend},
          {"inequality", inequality},   {"samples", samples},     {"undecided", undecided},
          {"verdict", refuted() ? "refuted" : "not refuted"}, {"witness", witness}};
}

GentlyReport check_gently_growing(const GentlyGrowingFn& f, unsigned k_lo, unsigned k_hi) {
  GentlyReport rep;
  std::vector<mpz_class> xs;
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    xs.push_back(mpz_class(1) << k);
    xs.push_back(mpz_class(3) << k);
  }
  std::sort(xs.begin(), xs.end());
  auto note = [&](const std::string& w) {
    if (rep.witness.empty()) rep.witness = w;
  };
  std::vector<Magnitude> fx;
  for (const auto& x : xs) fx.push_back(f.eval(x));
  rep.samples = xs.size();

  std::optional<std::size_t> first_at_N;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i + 1 < xs.size() && compare(fx[i], fx[i + 1]) == Ordering::Greater) {
      rep.monotone = false;
      note("f(" + xs[i].get_str() + ") > f(" + xs[i + 1].get_str() + ")");
    }
    if (xs[i] < f.N) continue;
    if (!first_at_N) first_at_N = i;
    if (fx[i].upper_value().sign() <= 0) {
      rep.positive = false;
      note("f(" + xs[i].get_str() + ") <= 0");
    }
    // x^(lg x) has lg equal to (lg x)^2.
    const Magnitude lgx = Magnitude::of(xs[i]).log2();
    const Magnitude y = mul(lgx, lgx).exp2();
    const Ordering o = compare(f.eval(y), mul(Magnitude::of(f.A), fx[i]));
    if (o == Ordering::Greater) {
      rep.inequality = false;
      note("f(x^lg x) > A f(x) at x = " + xs[i].get_str());
    } else if (o == Ordering::Indeterminate) {
      ++rep.undecided;
    }
  }
  if (first_at_N && *first_at_N + 1 < xs.size()) {
    const Ordering o = compare(fx.back(), fx[*first_at_N]);
    if (o == Ordering::Less || o == Ordering::Equal) {
      rep.unbounded_trend = false;
      note("f does not grow between x = " + xs[*first_at_N].get_str() + " and x = " + xs.back().get_str());
    }
  } else if (f.is_constant()) {
    rep.unbounded_trend = false;
    note("constant function");
  }
  if (f.is_constant() && rep.unbounded_trend) {
    rep.unbounded_trend = false;
    note("constant function");
  }
  return rep;
}

}  // namespace wpa

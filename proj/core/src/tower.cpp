#include "wpa/tower.hpp"

#include <cmath>

#include "wpa/error.hpp"

namespace wpa {
namespace {

thread_local std::size_t g_exact_bits = kDefaultExactBits;

std::size_t bits_of(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

// Approximate log2 of a positive integer; only used to decide whether an
// exact power is cheap enough to materialize.
double approx_log2(const mpz_class& v) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

std::string atom(const TowerInt& x) {
  if (x.is_exact()) {
    if (bits_of(x.exact()) <= 200) return x.exact().get_str();
    if (!x.expression().empty()) return "(" + x.expression() + ")";
    return "<" + std::to_string(bits_of(x.exact())) + "-bit integer>";
  }
  return "(" + x.expression() + ")";
}

std::string bare(const TowerInt& x) {
  if (x.is_exact() && bits_of(x.exact()) <= 200) return x.exact().get_str();
  if (!x.expression().empty()) return x.expression();
  return atom(x);
}

TowerInt from_exact(mpz_class v, std::string expr) {
  if (bits_of(v) <= g_exact_bits) {
    return TowerInt(v);
  }
  return TowerInt(Magnitude::of(v), std::move(expr));
}

}  // namespace

std::size_t exact_bits_threshold() { return g_exact_bits; }

ScopedExactBits::ScopedExactBits(std::size_t bits) : saved_(g_exact_bits) { g_exact_bits = bits; }
ScopedExactBits::~ScopedExactBits() { g_exact_bits = saved_; }

TowerInt::TowerInt(long v) : TowerInt(mpz_class(v)) {}

TowerInt::TowerInt(const mpz_class& v) {
  if (v < 0) throw PreconditionError("TowerInt holds natural numbers only");
  if (bits_of(v) <= g_exact_bits)
    value_ = v;
  else
    value_ = Magnitude::of(v);
}

TowerInt::TowerInt(Magnitude m, std::string expression) : value_(std::move(m)), expr_(std::move(expression)) {}

const mpz_class& TowerInt::exact() const {
  if (!is_exact()) throw PreconditionError("value " + render() + " is not held exactly");
  return std::get<mpz_class>(value_);
}

Magnitude TowerInt::magnitude() const {
  if (is_exact()) return Magnitude::of(std::get<mpz_class>(value_));
  return std::get<Magnitude>(value_);
}

std::string TowerInt::decimal() const { return exact().get_str(); }

std::string TowerInt::render() const {
  if (is_exact()) {
    const auto& v = std::get<mpz_class>(value_);
    if (bits_of(v) <= 200) return v.get_str();
    std::string head = expr_.empty() ? "<" + std::to_string(bits_of(v)) + "-bit integer>" : expr_;
    return head + " {exact, " + std::to_string(bits_of(v)) + " bits}";
  }
  return (expr_.empty() ? std::string("<certified>") : expr_) + " {" + std::get<Magnitude>(value_).describe() + "}";
}

TowerInt TowerInt::bit_length_lower() const {
  if (is_exact()) return TowerInt(mpz_class(static_cast<unsigned long>(bits_of(exact()))));
  Magnitude lg = magnitude().log2();
  if (lg.depth() == 0 && lg.lo().is_finite() &&
      (lg.lo().sign() <= 0 || mpfr_get_exp(lg.lo().get()) < static_cast<mpfr_exp_t>(g_exact_bits))) {
    mpz_class b = lg.lo().floor() + 1;
    return TowerInt(b < 1 ? mpz_class(1) : b);
  }
  return TowerInt(lg, "log2(" + bare(*this) + ")");
}

TowerInt TowerInt::pow(const TowerInt& base, const TowerInt& exponent) {
  std::string expr = atom(base) + "^(" + bare(exponent) + ")";
  if (base.is_exact() && exponent.is_exact()) {
    const mpz_class& b = base.exact();
    const mpz_class& e = exponent.exact();
    if (e == 0) return TowerInt(1L);
    if (b <= 1) return TowerInt(b);
    if (e.fits_ulong_p()) {
      double est = e.get_d() * approx_log2(b);
      if (est <= static_cast<double>(g_exact_bits) - 1.0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e.get_ui());
        TowerInt t = from_exact(std::move(r), expr);
        if (!t.is_exact() || bits_of(t.exact()) > 200) t.expr_ = expr;
        return t;
      }
    }
  }
  return TowerInt(wpa::pow(base.magnitude(), exponent.magnitude()), expr);
}

TowerInt operator*(const TowerInt& a, const TowerInt& b) {
  std::string expr = atom(a) + "*" + atom(b);
  if (a.is_exact() && b.is_exact()) {
    TowerInt t = from_exact(a.exact() * b.exact(), expr);
    if (!t.is_exact() || bits_of(t.exact()) > 200) t.expr_ = expr;
    return t;
  }
  return TowerInt(mul(a.magnitude(), b.magnitude()), expr);
}

TowerInt operator+(const TowerInt& a, const TowerInt& b) {
  std::string expr = bare(a) + " + " + bare(b);
  if (a.is_exact() && b.is_exact()) {
    TowerInt t = from_exact(a.exact() + b.exact(), expr);
    if (!t.is_exact() || bits_of(t.exact()) > 200) t.expr_ = expr;
    return t;
  }
  return TowerInt(add(a.magnitude(), b.magnitude()), expr);
}

Ordering compare(const TowerInt& x, const TowerInt& y) {
  if (x.is_exact() && y.is_exact()) {
    int c = cmp(x.exact(), y.exact());
    return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
  }
  return compare(x.magnitude(), y.magnitude());
}

Ordering compare_strict(const TowerInt& x, const TowerInt& y, const std::string& what) {
  Ordering o = compare(x, y);
  if (o == Ordering::Indeterminate)
    throw Indeterminate("undecided at desk scale: " + what + " (" + x.render() + " vs " + y.render() + ")");
  return o;
}

std::vector<TowerInt> tower_prefix(const std::vector<mpz_class>& a, std::size_t n) {
  if (n > a.size())
    throw PreconditionError("tower level " + std::to_string(n) + " exceeds the " + std::to_string(a.size()) +
                            "-term sequence");
  for (std::size_t k = 0; k < n; ++k)
    if (a[k] < 2)
      throw PreconditionError("every a_k must be >= 2; a_" + std::to_string(k + 1) + " = " + a[k].get_str());
  std::vector<TowerInt> hat;
  hat.reserve(n + 1);
  hat.emplace_back(1L);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == 1)
      hat.emplace_back(a[0]);
    else
      hat.push_back(TowerInt::pow(TowerInt(a[k - 1]), hat[k - 1]));
  }
  return hat;
}

TowerInt tower_eval(const std::vector<mpz_class>& a, std::size_t n) { return tower_prefix(a, n).back(); }

MLevel find_M(const std::vector<mpz_class>& a, const mpq_class& C) {
  if (C <= 0) throw PreconditionError("find_M needs a positive constant");
  const auto hat = tower_prefix(a, a.size());
  const TowerInt num(mpz_class(C.get_num()));
  const TowerInt den(mpz_class(C.get_den()));
  std::size_t candidate = 0;  // 0: the bound fails at the latest level
  for (std::size_t n = 1; n < hat.size(); ++n) {
    const std::string tag = "C*hat[" + std::to_string(n - 1) + "] <= hat[" + std::to_string(n) + "]";
    Ordering cond = compare_strict(num * hat[n - 1], den * hat[n], tag);
    if (cond == Ordering::Greater) {
      candidate = 0;
      continue;
    }
    if (candidate == 0) candidate = n;
    Ordering persist =
        compare_strict(den * TowerInt::pow(TowerInt(2L), hat[n - 1]), num * hat[n - 1], "persistence at " + tag);
    if (persist != Ordering::Less) return {candidate, n};
  }
  throw PreconditionError("sequence prefix of length " + std::to_string(a.size()) +
                          " is too short to certify M(" + C.get_str() + ")");
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Exact: return "exact";
    case CheckStatus::Certified: return "certified";
    case CheckStatus::Undecided: return "undecided";
  }
  return "?";
}

bool Lemma31Certificate::all_hold() const {
  for (const auto& l : levels) {
    if (l.status == CheckStatus::Undecided) return false;
    if (!l.partial_sum_ok) return false;
    if (l.total_checked && !l.total_sum_ok) return false;
  }
  return true;
}

Lemma31Certificate verify_lemma31(const std::vector<mpz_class>& a, std::size_t n_max) {
  const auto hat = tower_prefix(a, n_max);
  Lemma31Certificate cert;
  cert.M2 = find_M(a, 2).M;
  cert.M_of_M2 = find_M(a, mpq_class(static_cast<unsigned long>(cert.M2))).M;
  cert.N = std::max(cert.M2 + 1, cert.M_of_M2);

  while (cert.exact_reach + 1 < hat.size() && hat[cert.exact_reach + 1].is_exact()) ++cert.exact_reach;

  for (std::size_t n = cert.M2; n <= n_max; ++n) {
    Lemma31Level lvl;
    lvl.n = n;
    lvl.total_checked = n >= cert.N;
    if (n <= cert.exact_reach) {
      mpz_class partial = 0, total = 0;
      for (std::size_t j = 0; j <= n; ++j) {
        total += hat[j].exact();
        if (j >= cert.M2) partial += hat[j].exact();
      }
      lvl.partial_sum_ok = partial <= 2 * hat[n].exact();
      lvl.total_sum_ok = total <= 3 * hat[n].exact();
      lvl.status = CheckStatus::Exact;
    } else {
      cert.partial = true;
      // sum_{j=M}^{n-1} hat_j <= (n-M) hat_{n-1}, so it suffices that this is <= hat_n.
      Ordering p = compare(TowerInt(static_cast<long>(n - cert.M2)) * hat[n - 1], hat[n]);
      Ordering t = compare(TowerInt(static_cast<long>(n)) * hat[n - 1], TowerInt(2L) * hat[n]);
      lvl.partial_sum_ok = p == Ordering::Less || p == Ordering::Equal;
      lvl.total_sum_ok = t == Ordering::Less || t == Ordering::Equal;
      const bool decided = p != Ordering::Indeterminate && (!lvl.total_checked || t != Ordering::Indeterminate);
      lvl.status = decided ? CheckStatus::Certified : CheckStatus::Undecided;
    }
    cert.levels.push_back(lvl);
  }
  return cert;
}

}  // namespace wpa

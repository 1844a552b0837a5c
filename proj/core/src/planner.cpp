#include "wpa/planner.hpp"

#include <sstream>

#include "wpa/error.hpp"

namespace wpa {
namespace {

bool reaches(Ordering o) { return o == Ordering::Greater || o == Ordering::Equal; }

std::size_t bits_of(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

// Finite and below 2^bits in absolute value, so floor/ceil are cheap.
bool fits_bits(const Real& r, std::size_t bits) {
  if (!r.is_finite()) return false;
  if (r.sign() == 0) return true;
  return mpfr_get_exp(r.get()) <= static_cast<mpfr_exp_t>(bits);
}

// Text for a lower-bound point: "2^(2^(36))" when the innermost value is a
// small integer, otherwise the depth and a decimal lower bound.
std::string lower_text(const Magnitude& m) {
  const Real& lo = m.lo();
  std::string inner;
  if (fits_bits(lo, 63) && lo.floor() == lo.ceil())
    inner = lo.floor().get_str();
  else
    inner = lo.to_string(12, Round::Down);
  std::string s = inner;
  for (int d = 0; d < m.depth(); ++d) s = "2^(" + s + ")";
  return s;
}

TowerInt lower_tower(const Magnitude& m) {
  if (m.depth() == 0 && fits_bits(m.lo(), exact_bits_threshold()))
    return TowerInt(m.lo().sign() > 0 ? m.lo().ceil() : mpz_class(0));
  return TowerInt(Magnitude(m.depth(), m.lo(), m.lo()), lower_text(m));
}

Magnitude lower_only(const Magnitude& m) { return {m.depth(), m.lo(), m.lo()}; }

std::string ordering_status(Ordering o, bool want_greater_or_equal) {
  if (o == Ordering::Indeterminate) return "undecided";
  const bool ge = o == Ordering::Greater || o == Ordering::Equal;
  return ge == want_greater_or_equal ? "holds" : "fails";
}

std::string strict_status(Ordering o) {
  if (o == Ordering::Indeterminate) return "undecided";
  return o == Ordering::Greater ? "holds" : "fails";
}

nlohmann::ordered_json step_json(const ChainStep& s) {
  return {{"step", s.text},
          {"order", to_string(s.left_vs_right)},
          {"holds", s.decided() ? nlohmann::ordered_json(s.holds()) : nlohmann::ordered_json("undecided")}};
}

mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Ordering cmp_q(const mpq_class& a, const mpq_class& b) {
  const int c = cmp(a, b);
  return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
}

// Compares x^(1/k) with y for rationals x >= 0, y > 0; exact by raising to the k-th power.
Ordering cmp_root(const mpq_class& x, unsigned long k, const mpq_class& y) {
  mpq_class yk(pow_z(y.get_num(), k), pow_z(y.get_den(), k));
  return cmp_q(x, yk);
}

}  // namespace

PlannerConstants PlannerConstants::parse(const std::string& text) {
  if (text == "standard") return standard();
  if (text == "toy") return toy();
  PlannerConstants c;
  unsigned long v[3];
  std::istringstream is(text);
  char sep1 = 0, sep2 = 0;
  if (!(is >> v[0] >> sep1 >> v[1] >> sep2 >> v[2]) || sep1 != ',' || sep2 != ',' || !is.eof() || v[0] == 0 ||
      v[1] == 0 || v[2] == 0)
    throw ParseError("constants must be 'standard', 'toy' or three positive integers 'k0,k1,k2', got '" + text + "'");
  c.kappa0 = v[0];
  c.kappa1 = v[1];
  c.kappa2 = v[2];
  return c;
}

bool PlannerConstants::is_toy() const {
  return kappa0 < 18 || kappa1 < 9 || kappa2 < 18;
}

std::string PlannerConstants::label() const {
  if (is_standard()) return "standard constants";
  if (is_toy()) return "demonstrative (toy constants)";
  return "custom constants";
}

nlohmann::ordered_json PlannerConstants::to_json() const {
  return {{"kappa0", kappa0}, {"kappa1", kappa1}, {"kappa2", kappa2}, {"label", label()}};
}

bool PrimeCertificate::ok() const {
  for (const auto& c : conditions)
    if (c.status == "fails" || c.status == "undecided") return false;
  return true;
}

bool PrimePlan::ok() const {
  for (const auto& c : certificates)
    if (!c.ok()) return false;
  return true;
}

PrimeSearch search_prime(const GentlyGrowingFn& f, const TowerInt& T, const TowerInt& min_value, std::size_t bitcap) {
  const Magnitude Tm = T.magnitude();
  Magnitude inv = f.inverse_lower(Tm);
  if (inv.lo().is_pos_inf() && inv.depth() == 0)
    throw PreconditionError("f never reaches the threshold " + T.render());
  Magnitude bound = lower_only(max(inv, lower_only(min_value.magnitude())));

  PrimeSearch out;
  auto symbolic = [&](const Magnitude& lower) {
    out.found = false;
    out.lower = lower_tower(lower);
    const Magnitude lg = lower_only(lower.log2());
    out.bits_lower = lower_tower(lg);
    return out;
  };
  if (!min_value.is_exact() || bound.log2().at_depth(0).lo() > Real(static_cast<long>(bitcap))) return symbolic(bound);

  const Magnitude b0 = bound.at_depth(0);
  mpz_class x0 = b0.lo().is_finite() ? mpz_class(b0.lo().ceil()) : mpz_class(0);
  if (x0 < min_value.exact()) x0 = min_value.exact();

  auto ok = [&](const mpz_class& x) {
    const Ordering o = compare(f.eval(x), Tm);
    if (o == Ordering::Indeterminate)
      throw Indeterminate("undecided at desk scale: f(" + x.get_str() + ") vs " + T.render());
    return reaches(o);
  };
  mpz_class lo = x0, hi = x0;
  if (!ok(x0)) {
    mpz_class step = 1;
    while (true) {
      hi = x0 + step;
      if (bits_of(hi) > bitcap) return symbolic(Magnitude::of(mpz_class(lo + 1)));
      if (ok(hi)) break;
      lo = hi;
      step *= 2;
    }
    // f(lo) < T <= f(hi)
    while (hi - lo > 1) {
      mpz_class mid = (lo + hi) / 2;
      if (ok(mid))
        hi = mid;
      else
        lo = mid;
    }
  }
  mpz_class p = next_prime(hi);
  if (bits_of(p) > bitcap) return symbolic(Magnitude::of(hi));
  out.found = true;
  out.p = p;
  out.evidence = test_prime(p);
  out.lower = TowerInt(p);
  out.bits_lower = TowerInt(static_cast<long>(bits_of(p)));
  return out;
}

LemmaPrime find_lemma_prime(const GentlyGrowingFn& f, const mpz_class& m, const mpq_class& B, std::size_t bitcap) {
  if (m < 1) throw PreconditionError("m must be a positive integer");
  LemmaPrime out;
  out.search = search_prime(f, TowerInt(mpz_class(2 * m)), TowerInt(mpz_class(m + 1)), bitcap);
  if (out.search.found) {
    const Magnitude fpm = f.eval(TowerInt::pow(TowerInt(out.search.p), TowerInt(m)));
    out.upper = compare(Magnitude::of(mpz_class(2 * m)), mul(Magnitude::of(B), fpm));
  }
  return out;
}

namespace {

void check_constants(const PlannerConstants& c) {
  if (c.kappa0 == 0 || c.kappa1 == 0 || c.kappa2 == 0) throw PreconditionError("constants must be positive");
  if (!c.is_toy() && c.kappa2 != 2 * c.kappa1)
    throw PreconditionError("kappa2 must equal 2*kappa1 outside toy runs (got " + std::to_string(c.kappa2) + " and " +
                            std::to_string(c.kappa1) + ")");
}

PrimePlan new_plan(const std::string& kind, const GentlyGrowingFn& f, const PlanOptions& opts) {
  PrimePlan plan;
  plan.kind = kind;
  plan.f = f.text();
  plan.constants = opts.constants;
  plan.B = opts.B;
  plan.C = opts.C;
  plan.bitcap = opts.bitcap;
  plan.A = f.A;
  plan.N = f.N;
  if (opts.constants.is_toy()) plan.notes.push_back("demonstrative (toy constants): not the values of the construction");
  plan.notes.push_back("A and N are recorded; no construction step uses them");
  return plan;
}

void set_from_search(PrimeCertificate& cert, const PrimeSearch& s) {
  cert.exact = s.found;
  cert.p_lower = s.lower;
  cert.bits_lower = s.bits_lower;
  if (s.found) {
    cert.p = s.p;
    cert.evidence = std::string(to_string(s.evidence.evidence)) +
                    (s.evidence.evidence == PrimalityEvidence::Deterministic
                         ? " (Miller-Rabin, 12 bases)"
                         : " (" + std::to_string(s.evidence.rounds) + " rounds)");
  }
}

void set_mhat(PrimeCertificate& cert, const std::optional<TowerInt>& mhat_prev, bool prev_lower) {
  const TowerInt omega = cert.p_lower + TowerInt(1L);
  cert.mhat = mhat_prev ? TowerInt::pow(omega, *mhat_prev) : omega;
  cert.mhat_is_lower_bound = !cert.exact || prev_lower;
}

// p_0: least prime >= max(kappa0, C) with f(p_0) >= kappa0.
PrimeCertificate first_prime(const GentlyGrowingFn& f, const PlanOptions& opts, const std::string& rule) {
  const unsigned long k0 = opts.constants.kappa0;
  mpz_class floor_value = k0;
  const mpz_class c_ceil = [&] {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), opts.C.get_num_mpz_t(), opts.C.get_den_mpz_t());
    return q;
  }();
  if (c_ceil > floor_value) floor_value = c_ceil;
  PrimeCertificate cert;
  cert.k = 0;
  cert.rule = rule;
  const PrimeSearch s = search_prime(f, TowerInt(static_cast<long>(k0)), TowerInt(floor_value), opts.bitcap);
  set_from_search(cert, s);
  const std::string k0s = std::to_string(k0);
  if (cert.exact) {
    cert.conditions.push_back({"p_0 >= max(" + k0s + ", C)", s.p >= floor_value ? "holds" : "fails",
                               "p_0 = " + s.p.get_str() + ", max = " + floor_value.get_str()});
    const Ordering o = compare(f.eval(s.p), Magnitude::of(static_cast<long>(k0)));
    cert.conditions.push_back({"f(p_0) >= " + k0s, ordering_status(o, true), "f(p_0) " + f.eval(s.p).describe()});
    cert.conditions.push_back({"p_0 prime", s.evidence.prime ? "holds" : "fails", cert.evidence});
  } else {
    cert.conditions.push_back({"p_0 >= max(" + k0s + ", C)", "required", "max = " + floor_value.get_str()});
    cert.conditions.push_back({"f(p_0) >= " + k0s, "required", "forces p_0 >= " + s.lower.render()});
    cert.conditions.push_back({"p_0 prime", "required", "bit length >= " + s.bits_lower.render()});
  }
  set_mhat(cert, std::nullopt, false);
  return cert;
}

}  // namespace

PrimePlan plan_theoremA(const GentlyGrowingFn& f, const PlanOptions& opts) {
  check_constants(opts.constants);
  const GentlyReport gr = check_gently_growing(f);
  if (gr.refuted()) throw PreconditionError("f = " + f.text() + " is refuted as gently growing: " + gr.witness);
  PrimePlan plan = new_plan("thmA", f, opts);
  const auto& K = opts.constants;
  const std::string k1s = std::to_string(K.kappa1), k2s = std::to_string(K.kappa2);

  plan.certificates.push_back(first_prime(f, opts, "thmA:k=0"));
  for (std::size_t k = 1; k <= opts.k_max; ++k) {
    const PrimeCertificate& prev = plan.certificates.back();
    const TowerInt mprev = prev.mhat;
    const bool prev_lower = prev.mhat_is_lower_bound;
    const std::string ks = std::to_string(k), km = std::to_string(k - 1);

    PrimeCertificate cert;
    cert.k = k;
    cert.rule = "thmA:k=" + ks;
    cert.mhat_prev = mprev;
    const TowerInt floor_t = TowerInt(static_cast<long>(K.kappa1)) * mprev;
    const TowerInt thresh = TowerInt(static_cast<long>(K.kappa2)) * mprev;
    const PrimeSearch s = search_prime(f, thresh, floor_t + TowerInt(1L), prev_lower ? 0 : opts.bitcap);
    set_from_search(cert, s);

    const std::string c1 = "p_" + ks + " > " + k1s + "*mhat_" + km;
    const std::string c2 = "f(p_" + ks + ") >= " + k2s + "*mhat_" + km;
    const std::string c3 = k2s + "*mhat_" + km + " >= B*f(p_" + ks + "^(" + k1s + "*mhat_" + km + "))";
    if (cert.exact) {
      const TowerInt P(s.p);
      cert.conditions.push_back({c1, strict_status(compare(P, floor_t)), "p = " + s.p.get_str()});
      const Magnitude fp = f.eval(P);
      cert.conditions.push_back({c2, ordering_status(compare(fp, thresh.magnitude()), true), "f(p) " + fp.describe()});
      const Magnitude fq = mul(Magnitude::of(opts.B), f.eval(TowerInt::pow(P, floor_t)));
      cert.conditions.push_back({c3, ordering_status(compare(thresh.magnitude(), fq), true), "B*f " + fq.describe()});
    } else {
      const Ordering sanity = compare(s.lower, floor_t);
      cert.conditions.push_back({c1, "required",
                                 std::string("lower bound ") + (sanity == Ordering::Greater ? "exceeds" : "does not exceed") +
                                     " " + k1s + "*mhat_" + km + (prev_lower ? " (mhat_" + km + " is a lower bound)" : "")});
      cert.conditions.push_back({c2, "required", "forces p_" + ks + " >= " + s.lower.render()});
      cert.conditions.push_back({c3, "required", "not checkable from lower bounds"});
      if (!prev_lower && sanity != Ordering::Greater) cert.conditions.back().status = "undecided";
    }
    set_mhat(cert, mprev, prev_lower);
    plan.certificates.push_back(std::move(cert));
  }
  return plan;
}

PrimePlan plan_variation1(const GentlyGrowingFn& f, const PlanOptions& opts) {
  check_constants(opts.constants);
  const GentlyReport gr = check_gently_growing(f);
  if (!gr.unbounded_trend) throw PreconditionError("f = " + f.text() + " is not unbounded: " + gr.witness);
  PrimePlan plan = new_plan("var1", f, opts);
  const auto& K = opts.constants;
  const std::string k1s = std::to_string(K.kappa1), k2s = std::to_string(K.kappa2);

  plan.certificates.push_back(first_prime(f, opts, "var1:k=0"));
  for (std::size_t k = 1; k <= opts.k_max; ++k) {
    const PrimeCertificate& prev = plan.certificates.back();
    const TowerInt mprev = prev.mhat;
    const bool prev_lower = prev.mhat_is_lower_bound;
    const std::string ks = std::to_string(k), km = std::to_string(k - 1);

    PrimeCertificate cert;
    cert.k = k;
    cert.rule = "var1:k=" + ks;
    cert.mhat_prev = mprev;
    const TowerInt min_p = TowerInt::pow(prev.p_lower, TowerInt(static_cast<long>(K.kappa1)) * mprev);
    const TowerInt thresh = TowerInt(static_cast<long>(K.kappa2)) * mprev;
    const bool prev_symbolic = prev_lower || !prev.exact;
    const PrimeSearch s = search_prime(f, thresh, min_p, prev_symbolic ? 0 : opts.bitcap);
    set_from_search(cert, s);
    const std::string c1 = "p_" + ks + " >= p_" + km + "^(" + k1s + "*mhat_" + km + ")";
    const std::string c2 = "f(p_" + ks + ") >= " + k2s + "*mhat_" + km;
    if (cert.exact) {
      const TowerInt P(s.p);
      cert.conditions.push_back({c1, ordering_status(compare(P, min_p), true), "p = " + s.p.get_str()});
      const Magnitude fp = f.eval(P);
      cert.conditions.push_back({c2, ordering_status(compare(fp, thresh.magnitude()), true), "f(p) " + fp.describe()});
    } else {
      cert.conditions.push_back({c1, "required", "p_" + km + "^(" + k1s + "*mhat_" + km + ") >= " + min_p.render()});
      cert.conditions.push_back({c2, "required", "forces p_" + ks + " >= " + s.lower.render()});
    }
    set_mhat(cert, mprev, prev_symbolic);
    plan.certificates.push_back(std::move(cert));
  }
  return plan;
}

PrimePlan plan_variation2(unsigned h, const PlanOptions& opts) {
  if (h < 1) throw PreconditionError("h must be a positive integer");
  check_constants(opts.constants);
  const GentlyGrowingFn f = GentlyGrowingFn::parse("root:" + std::to_string(h));
  PrimePlan plan = new_plan("var2", f, opts);
  plan.h = h;
  plan.notes.push_back("f(n) = (log2 n)^(1/" + std::to_string(h) + "), f_*(n) = (log2 n)^(1/" +
                       std::to_string(h + 1) + ")");
  const auto& K = opts.constants;
  const std::string hs = std::to_string(h), k2s = std::to_string(K.kappa2);

  plan.certificates.push_back(first_prime(f, opts, "var2:h=" + hs + ":k=0"));
  for (std::size_t k = 1; k <= opts.k_max; ++k) {
    const PrimeCertificate& prev = plan.certificates.back();
    const TowerInt mprev = prev.mhat;
    const bool prev_lower = prev.mhat_is_lower_bound;
    const std::string ks = std::to_string(k), km = std::to_string(k - 1);

    PrimeCertificate cert;
    cert.k = k;
    cert.rule = "var2:h=" + hs + ":k=" + ks;
    cert.mhat_prev = mprev;
    const TowerInt base = TowerInt(static_cast<long>(K.kappa2)) * mprev;
    const TowerInt lo = TowerInt::pow(base, TowerInt(static_cast<long>(h)));
    const TowerInt hi = TowerInt(2L) * lo;
    cert.log_window = std::make_pair(lo, hi);

    const std::string c1 = "(" + k2s + "*mhat_" + km + ")^" + hs + " <= log p_" + ks;
    const std::string c2 = "log p_" + ks + " <= 2*(" + k2s + "*mhat_" + km + ")^" + hs;
    const bool feasible = !prev_lower && lo.is_exact() && lo.exact() < opts.bitcap;
    if (feasible) {
      const unsigned long L = lo.exact().get_ui();
      const mpz_class p = next_prime(mpz_class(1) << L);
      const PrimalityResult ev = test_prime(p);
      PrimeSearch s;
      s.found = true;
      s.p = p;
      s.evidence = ev;
      s.lower = TowerInt(p);
      s.bits_lower = TowerInt(static_cast<long>(bits_of(p)));
      set_from_search(cert, s);
      // Both window ends are integers, so log2 p against them is decided by
      // comparing p with powers of two.
      const mpz_class two_lo = mpz_class(1) << L;
      const std::string bl = "bit length " + std::to_string(bits_of(p));
      cert.conditions.push_back({c1, p >= two_lo ? "holds" : "fails", "p >= 2^" + std::to_string(L) + ", " + bl});
      const bool under = mpz_sizeinbase(p.get_mpz_t(), 2) <= 2 * L;  // p < 2^(2L)
      cert.conditions.push_back({c2, under ? "holds" : "fails", "p < 2^" + std::to_string(2 * L) + ", " + bl});
    } else {
      cert.exact = false;
      cert.p_lower = TowerInt::pow(TowerInt(2L), lo);
      cert.bits_lower = lo;
      cert.conditions.push_back({c1, "required", "log2 p_" + ks + " >= " + lo.render()});
      cert.conditions.push_back({c2, "required", "log2 p_" + ks + " <= " + hi.render()});
    }
    if (!prev_lower && mprev.is_exact() && lo.is_exact()) {
      nlohmann::ordered_json chain = nlohmann::ordered_json::array();
      for (const TowerInt* L : {&lo, &hi}) {
        auto v = verify_variation2_equivalence(mpq_class(L->exact()), mprev.exact(), h);
        chain.push_back({{"log_p", L->exact().get_str().size() <= 60 ? L->exact().get_str() : L->render()},
                         {"check", v.to_json()}});
        cert.conditions.push_back({"equivalence chain at log p = " + std::string(L == &lo ? "lower" : "upper") +
                                       " window end",
                                   v.consistent() ? "holds" : "fails", ""});
      }
      cert.extra["equivalence"] = chain;
    }
    set_mhat(cert, mprev, prev_lower || !cert.exact);
    plan.certificates.push_back(std::move(cert));
  }
  return plan;
}

bool Variation2Check::consistent() const {
  for (const auto& s : steps)
    if (!s.decided() || s.holds() != steps.front().holds()) return false;
  return implication_ok;
}

nlohmann::ordered_json Variation2Check::to_json() const {
  nlohmann::ordered_json st = nlohmann::ordered_json::array();
  for (const auto& s : steps) st.push_back(step_json(s));
  return {{"h", h},
          {"steps", st},
          {"consistent", consistent()},
          {"printed_middle", step_json(printed_middle)},
          {"window_lower", step_json(window_lower)},
          {"upper_use", step_json(upper_use)},
          {"implication", implication_ok}};
}

Variation2Check verify_variation2_equivalence(const mpq_class& L, const mpz_class& mhat, unsigned h) {
  if (h < 1) throw PreconditionError("h must be positive");
  if (mhat < 1) throw PreconditionError("mhat must be positive");
  if (L < 0) throw PreconditionError("log p must be non-negative");
  Variation2Check out;
  out.h = h;
  const mpq_class A(18 * mhat);
  const mpq_class nine_m(9 * mhat);
  const mpq_class Ah(pow_z(A.get_num(), h));
  const mpq_class Ah1(pow_z(A.get_num(), h + 1));
  const mpq_class log_power = nine_m * L;  // log(p^(9 mhat))

  out.steps.push_back({"log p <= 2*(18*mhat)^h", cmp_q(L, 2 * Ah)});
  out.steps.push_back({"9*mhat*log p <= (18*mhat)^(h+1)", cmp_q(nine_m * L, Ah1)});
  out.steps.push_back({"log(p^(9*mhat)) <= (18*mhat)^(h+1)", cmp_q(log_power, Ah1)});
  // f_*(p^(9 mhat)) = (log(p^(9 mhat)))^(1/(h+1)); interval first, exact power on overlap.
  Ordering o3;
  {
    const Real x_lo = Real::from_mpq(log_power, Round::Down), x_hi = Real::from_mpq(log_power, Round::Up);
    const Real r_lo = root(x_lo, h + 1, Round::Down), r_hi = root(x_hi, h + 1, Round::Up);
    const Real a_lo = Real::from_mpq(A, Round::Down), a_hi = Real::from_mpq(A, Round::Up);
    if (r_hi < a_lo)
      o3 = Ordering::Less;
    else if (r_lo > a_hi)
      o3 = Ordering::Greater;
    else
      o3 = cmp_root(log_power, h + 1, A);
  }
  out.steps.push_back({"f_*(p^(9*mhat)) <= 18*mhat", o3});

  const mpq_class nine_m_h(pow_z(nine_m.get_num(), h));
  out.printed_middle = {"(9*mhat)^h*log p <= (18*mhat)^(h+1)", cmp_q(nine_m_h * L, Ah1)};
  out.window_lower = {"(18*mhat)^h <= log p", cmp_q(Ah, L)};
  out.upper_use = {"18*mhat <= f(p)", Ordering::Indeterminate};
  {
    // 18 mhat <= L^(1/h)  iff  A^h <= L
    const Ordering o = cmp_root(L, h, A);  // L^(1/h) vs A
    out.upper_use.left_vs_right = o == Ordering::Less ? Ordering::Greater : o == Ordering::Greater ? Ordering::Less : o;
  }
  out.implication_ok = !out.window_lower.holds() || out.upper_use.holds();
  return out;
}

bool variation2_middle_identity(unsigned h) {
  // (18 m)^(h+1) / (9 m) = 18^(h+1)/9 * m^h  versus  2 * 18^h * m^h
  const mpz_class lhs = pow_z(18, h + 1), rhs = 2 * 9 * pow_z(18, h);
  return lhs == rhs;
}

bool variation2_printed_identity(unsigned h) {
  // (18 m)^(h+1) / (9 m)^h = 18^(h+1)/9^h * m  versus  2 * 18^h * m^h: equal only when h = 1
  if (h != 1) return false;
  return pow_z(18, h + 1) == 2 * pow_z(18, h) * pow_z(9, h);
}

bool ChainCheck::all_hold() const {
  if (!constant_identity) return false;
  for (const auto* v : {&upper, &lower})
    for (const auto& s : *v)
      if (!s.decided() || !s.holds()) return false;
  return true;
}

nlohmann::ordered_json ChainCheck::to_json() const {
  nlohmann::ordered_json u = nlohmann::ordered_json::array(), l = nlohmann::ordered_json::array();
  for (const auto& s : upper) u.push_back(step_json(s));
  for (const auto& s : lower) l.push_back(step_json(s));
  return {{"upper", u}, {"lower", l}, {"c", c.get_str()}, {"constant_identity", constant_identity},
          {"all_hold", all_hold()}};
}

ChainCheck verify_theoremA_chains(const GentlyGrowingFn& f, const TowerInt& p, const TowerInt& mhat,
                                  const mpq_class& B) {
  ChainCheck out;
  const TowerInt n = TowerInt::pow(p, TowerInt(9L) * mhat);
  const Magnitude fp = f.eval(p), fn = f.eval(n);
  const Magnitude eighteen_m = (TowerInt(18L) * mhat).magnitude();
  out.upper.push_back({"18*mhat <= f(p)", compare(eighteen_m, fp)});
  out.upper.push_back({"f(p) <= f(n)", compare(fp, fn)});

  const Magnitude lgp = p.magnitude().log2();
  Magnitude lgtau;
  if (p.is_exact()) {
    const mpz_class& q = p.exact();
    lgtau = Magnitude::of(mpz_class(q * (q * q - 1) / 2)).log2();
  } else {
    // tau = p(p^2-1)/2 >= p^3/4 for p >= 2
    lgtau = shift(mul(Magnitude::of(3L), lgp), Real(-2), Real(-2));
    lgtau = {lgtau.depth(), lgtau.lo(), Real::pos_inf()};
  }
  // e1 = mhat lg(tau) / (108 lg p), e2 = mhat/108, e3 = B f(n)/1944
  out.lower.push_back({"mhat/108 <= mhat*lg(tau)/(108*lg(p))", compare(lgp, lgtau)});
  out.lower.push_back({"B*f(n)/1944 <= mhat/108", compare(mul(Magnitude::of(B), fn), eighteen_m)});
  out.c = B / 1944;
  out.c.canonicalize();
  // 18 mhat / (36 * 3 * 18) = mhat / 108, and 3 mhat * (mhat/36) = 9 mhat * (mhat/108)
  out.constant_identity = 36 * 3 * 18 == 1944 && mpq_class(18) / 1944 == mpq_class(1) / 108 &&
                          mpq_class(3) / 36 == mpq_class(9) / 108;
  return out;
}

LemmaFit fit_lemma_constants(const GentlyGrowingFn& f, unsigned long m_max, std::size_t bitcap) {
  LemmaFit fit;
  for (unsigned long m = 1; m <= m_max; ++m) {
    const LemmaPrime lp = find_lemma_prime(f, m, 1, bitcap);
    if (!lp.search.found) break;
    const Magnitude fpm = f.eval(TowerInt::pow(TowerInt(lp.search.p), TowerInt(static_cast<long>(m))));
    mpq_class best = 0;
    for (int i = 0; i <= 20; ++i) {
      const mpq_class b(1, mpz_class(1) << i);
      const Ordering o = compare(Magnitude::of(static_cast<long>(2 * m)), mul(Magnitude::of(b), fpm));
      if (reaches(o)) {
        best = b;
        break;
      }
    }
    fit.per_m.emplace_back(m, best);
  }
  fit.B = 0;
  fit.C = 0;
  for (std::size_t c = 0; c < fit.per_m.size(); ++c) {
    mpq_class b = fit.per_m[c].second;
    for (std::size_t j = c; j < fit.per_m.size(); ++j) b = std::min(b, fit.per_m[j].second);
    if (b > fit.B) {
      fit.B = b;
      fit.C = fit.per_m[c].first;
    }
  }
  return fit;
}

nlohmann::ordered_json PrimePlan::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["f"] = f;
  if (h) j["h"] = *h;
  j["constants"] = constants.to_json();
  j["B"] = B.get_str();
  j["C"] = C.get_str();
  j["A"] = A.get_str();
  j["N"] = N.get_str();
  j["bitcap"] = bitcap;
  nlohmann::ordered_json certs = nlohmann::ordered_json::array();
  for (const auto& c : certificates) {
    nlohmann::ordered_json e;
    e["k"] = c.k;
    e["rule"] = c.rule;
    e["kind"] = c.exact ? "exact-prime" : "symbolic";
    if (c.exact) {
      e["p"] = c.p.get_str();
      e["evidence"] = c.evidence;
    } else {
      e["p_lower"] = c.p_lower.render();
    }
    e["bits_lower"] = c.bits_lower.render();
    if (c.mhat_prev) e["mhat_prev"] = c.mhat_prev->render();
    e["mhat"] = c.mhat.render();
    e["mhat_is_lower_bound"] = c.mhat_is_lower_bound;
    if (c.log_window) e["log_p_window"] = {c.log_window->first.render(), c.log_window->second.render()};
    nlohmann::ordered_json conds = nlohmann::ordered_json::array();
    for (const auto& cond : c.conditions)
      conds.push_back({{"text", cond.text}, {"status", cond.status}, {"detail", cond.detail}});
    e["conditions"] = conds;
    if (!c.extra.is_null()) e["checks"] = c.extra;
    certs.push_back(e);
  }
  j["certificates"] = certs;
  j["notes"] = notes;
  j["ok"] = ok();
  return j;
}

std::string PrimePlan::to_text() const {
  std::ostringstream os;
  os << kind << " plan for f = " << f << " (" << constants.label() << ", B = " << B.get_str()
     << ", C = " << C.get_str() << ")\n";
  for (const auto& c : certificates) {
    os << c.rule << ": ";
    if (c.exact)
      os << "p = " << c.p.get_str() << " [" << c.evidence << "]";
    else
      os << "p >= " << c.p_lower.render() << " (symbolic, bits >= " << c.bits_lower.render() << ")";
    os << "\n";
    for (const auto& cond : c.conditions) os << "    " << cond.text << "  " << cond.status << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace wpa

#include "wpa/nice.hpp"

#include <algorithm>
#include <sstream>

#include "wpa/error.hpp"
#include "wpa/group_spec.hpp"
#include "wpa/primes.hpp"

namespace wpa {
namespace {

unsigned long inverse_mod(unsigned long x, unsigned long p) {
  mpz_class r, a(x), m(p);
  mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r.get_ui();
}

std::vector<std::string> witness_strings(const SubgroupLattice& L, std::size_t idx) {
  std::vector<std::string> out;
  for (auto g : L.subgroups()[idx].generators) out.push_back(to_cycle_string(L.parent().elements()[g]));
  return out;
}

}  // namespace

mpz_class psl2_order(unsigned long p) {
  mpz_class q(p);
  if (p == 2) return 6;
  return q * (q * q - 1) / 2;
}

PermGroup psl2_group(unsigned long p) {
  if (!is_prime(mpz_class(p))) throw PreconditionError("psl2 needs a prime, got " + std::to_string(p));
  const std::size_t n = p + 1;
  std::vector<Point> t(n), s(n);
  for (unsigned long x = 0; x < p; ++x) {
    t[x] = static_cast<Point>((x + 1) % p);
    s[x] = x == 0 ? static_cast<Point>(p) : static_cast<Point>((p - inverse_mod(x, p)) % p);
  }
  t[p] = static_cast<Point>(p);
  s[p] = 0;
  PermGroup g(n, {Permutation(std::move(t)), Permutation(std::move(s))});
  g.set_known_order(psl2_order(p));
  g.set_label("psl2:" + std::to_string(p));
  return g;
}

Psl2Facts psl2_facts(unsigned long p) {
  if (p < 5 || !is_prime(mpz_class(p))) throw PreconditionError("psl2_facts needs a prime p >= 5");
  Psl2Facts f;
  f.p = p;
  f.tau = psl2_order(p);
  f.mu_formula = p + 1;
  f.mu_formula_valid = !(p == 5 || p == 7 || p == 11);
  f.mu = f.mu_formula_valid ? f.mu_formula : p;
  f.E_prime = p;
  const mpz_class P(p), P3 = P * P * P, Q = P + 1;
  f.chain_holds = P < f.tau && f.tau < P3 && P3 <= Q * Q * Q;
  return f;
}

const char* to_string(NiceMode m) { return m == NiceMode::Exact ? "exact" : "facts"; }

const char* to_string(Trend t) {
  switch (t) {
    case Trend::NotRefuted: return "not refuted";
    case Trend::Refuted: return "refuted";
    case Trend::Vacuous: return "vacuous";
  }
  return "?";
}

GroupFacts group_facts(const PermGroup& G, const LatticeOptions& opts) {
  SubgroupLattice L(G, opts);
  GroupFacts f;
  f.spec = G.label();
  f.degree = G.degree();
  f.order = static_cast<unsigned long>(L.group_order());
  f.rank = rank(L);
  f.rank_witness = witness_strings(L, rank_witness(L));
  if (L.group_order() > 1) f.mu = minimal_index(L);
  f.E_order = 1;
  for (const auto& info : elem_abelian_max(L)) {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), info.p, info.e);
    if (q > f.E_order) {
      f.E_order = q;
      f.E_prime = info.p;
      f.E_exponent = info.e;
      f.E_witness = witness_strings(L, info.witness);
    }
  }
  f.source = "exact";
  return f;
}

GroupFacts group_facts(const std::string& spec, NiceMode mode, const LatticeOptions& opts) {
  if (mode == NiceMode::Exact) {
    GroupFacts f = group_facts(parse_group_spec(spec), opts);
    f.spec = spec;
    return f;
  }
  if (spec.rfind("psl2:", 0) != 0)
    throw PreconditionError("facts mode needs psl2:p entries, got '" + spec + "'");
  unsigned long p = 0;
  try {
    p = std::stoul(spec.substr(5));
  } catch (const std::exception&) {
    throw ParseError("bad prime in '" + spec + "'");
  }
  const Psl2Facts pf = psl2_facts(p);
  GroupFacts f;
  f.spec = spec;
  f.degree = p + 1;
  f.order = pf.tau;
  f.rank = pf.rank;
  f.mu = pf.mu;
  f.E_prime = pf.E_prime;
  f.E_exponent = pf.E_exponent;
  f.E_order = pf.p;
  f.source = "facts";
  f.E_witness = {"upper unitriangular subgroup, generated by x -> x+1"};
  if (!pf.mu_formula_valid)
    f.notes.push_back("mu = p+1 does not hold for p = " + std::to_string(p) + "; the minimal index is " +
                      std::to_string(pf.mu));
  return f;
}

bool le_power(const mpz_class& lhs, const mpz_class& base, const mpq_class& t) {
  if (t <= 0) throw PreconditionError("exponent must be positive");
  if (!t.get_num().fits_ulong_p() || !t.get_den().fits_ulong_p())
    throw PreconditionError("exponent too large: " + t.get_str());
  mpz_class a, b;
  mpz_pow_ui(a.get_mpz_t(), lhs.get_mpz_t(), t.get_den().get_ui());
  mpz_pow_ui(b.get_mpz_t(), base.get_mpz_t(), t.get_num().get_ui());
  return a <= b;
}

bool NicenessReport::passes(const std::string& condition) const {
  return std::all_of(records.begin(), records.end(),
                     [&](const ConditionRecord& r) { return r.condition != condition || r.pass; });
}

bool NicenessReport::overall() const {
  return passes("N.1") && passes("N.2") && passes("N.3") && passes("N.4") && n5 != Trend::Refuted;
}

NicenessReport check_nice(const NiceSequenceSpec& spec, std::size_t prefix_len, NiceMode mode,
                          const LatticeOptions& opts) {
  if (spec.entries.empty()) throw PreconditionError("nice sequence needs at least one entry");
  if (spec.r <= 0 || spec.t <= 0) throw PreconditionError("constants r and t must be positive");
  if (prefix_len == 0 || prefix_len > spec.entries.size())
    throw PreconditionError("prefix length " + std::to_string(prefix_len) + " outside 1.." +
                            std::to_string(spec.entries.size()));
  NicenessReport rep;
  rep.mode = mode;
  rep.prefix_len = prefix_len;
  for (std::size_t k = 0; k < prefix_len; ++k) rep.facts.push_back(group_facts(spec.entries[k], mode, opts));

  for (std::size_t k = 1; k <= prefix_len; ++k) {
    const GroupFacts& f = rep.facts[k - 1];
    if (k >= 2) {
      const GroupFacts& g = rep.facts[k - 2];
      rep.records.push_back({"N.1", k, f.order >= g.order,
                             "|S_" + std::to_string(k) + "| = " + f.order.get_str() + ", |S_" +
                                 std::to_string(k - 1) + "| = " + g.order.get_str()});
    }
    {
      std::string d = "rk = " + std::to_string(f.rank) + ", r = " + spec.r.get_str();
      const bool ok = mpq_class(static_cast<unsigned long>(f.rank)) <= spec.r;
      if (!ok) {
        d += "; witness subgroup needs " + std::to_string(f.rank) + " generators:";
        for (const auto& w : f.rank_witness) d += " " + w;
      }
      rep.records.push_back({"N.2", k, ok, d});
    }
    {
      const bool ok = le_power(f.order, f.E_order, spec.t);
      std::string d = "|S| = " + f.order.get_str() + ", |E| = " + f.E_order.get_str() + " (C_" +
                      std::to_string(f.E_prime) + "^" + std::to_string(f.E_exponent) + "), t = " + spec.t.get_str();
      rep.records.push_back({"N.3", k, ok, d});
    }
    {
      bool ok = f.mu > 0 && le_power(f.order, mpz_class(f.mu), spec.t);
      std::string d = "mu = " + std::to_string(f.mu) + ", |S| <= mu^t " + (ok ? "holds" : "fails");
      if (k >= 2) {
        const bool mono = f.mu >= rep.facts[k - 2].mu;
        ok = ok && mono;
        d += ", mu_" + std::to_string(k - 1) + " = " + std::to_string(rep.facts[k - 2].mu) +
             (mono ? " <= " : " > ") + "mu_" + std::to_string(k);
      }
      rep.records.push_back({"N.4", k, ok, d});
    }
  }

  if (prefix_len < 2) {
    rep.n5 = Trend::Vacuous;
    rep.n5_detail = "prefix too short to show a trend";
  } else {
    const bool constant = std::all_of(rep.facts.begin(), rep.facts.end(),
                                      [&](const GroupFacts& f) { return f.mu == rep.facts.front().mu; });
    if (spec.periodic) {
      rep.n5 = Trend::Refuted;
      rep.n5_detail = "sequence declared periodic, so mu is bounded";
    } else if (constant) {
      rep.n5 = Trend::Refuted;
      rep.n5_detail = "mu constant at " + std::to_string(rep.facts.front().mu) + " on the whole prefix";
    } else {
      rep.n5 = Trend::NotRefuted;
      rep.n5_detail = "mu grows from " + std::to_string(rep.facts.front().mu) + " to " +
                      std::to_string(rep.facts.back().mu) + " on the prefix";
    }
  }
  return rep;
}

nlohmann::ordered_json NicenessReport::to_json() const {
  nlohmann::ordered_json j;
  j["mode"] = to_string(mode);
  j["prefix_len"] = prefix_len;
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < facts.size(); ++k) {
    const auto& f = facts[k];
    groups.push_back({{"k", k + 1},
                      {"spec", f.spec},
                      {"order", f.order.get_str()},
                      {"rank", f.rank},
                      {"mu", f.mu},
                      {"E", {{"p", f.E_prime}, {"e", f.E_exponent}, {"order", f.E_order.get_str()}}},
                      {"source", f.source},
                      {"notes", f.notes}});
  }
  j["groups"] = groups;
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& r : records)
    recs.push_back({{"condition", r.condition}, {"k", r.k}, {"pass", r.pass}, {"detail", r.detail}});
  j["records"] = recs;
  j["N.5"] = {{"verdict", to_string(n5)}, {"detail", n5_detail}};
  j["overall"] = overall();
  return j;
}

std::string NicenessReport::to_text() const {
  std::ostringstream os;
  os << "mode " << to_string(mode) << ", prefix " << prefix_len << "\n";
  for (const char* c : {"N.1", "N.2", "N.3", "N.4"}) os << c << "  " << (passes(c) ? "pass" : "FAIL") << "\n";
  os << "N.5  " << to_string(n5) << " (" << n5_detail << ")\n";
  for (const auto& r : records)
    if (!r.pass) os << "  " << r.condition << " k=" << r.k << ": " << r.detail << "\n";
  os << "overall " << (overall() ? "nice on prefix" : "not nice") << "\n";
  return os.str();
}

}  // namespace wpa

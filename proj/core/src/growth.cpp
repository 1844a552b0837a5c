#include "wpa/growth.hpp"

#include <sstream>

#include "wpa/error.hpp"
#include "wpa/group_spec.hpp"

namespace wpa {

std::vector<unsigned long> GrowthSequence::mus() const {
  std::vector<unsigned long> out;
  for (const auto& f : facts) out.push_back(f.mu);
  return out;
}

GrowthSequence growth_sequence(std::vector<GroupFacts> facts) {
  GrowthSequence seq;
  std::vector<mpz_class> degrees;
  for (const auto& f : facts) degrees.emplace_back(static_cast<unsigned long>(f.degree));
  seq.mhat = tower_prefix(degrees, degrees.size());
  seq.facts = std::move(facts);
  return seq;
}

GrowthSequence growth_sequence(const std::vector<std::string>& specs, NiceMode mode, const LatticeOptions& opts) {
  std::vector<GroupFacts> facts;
  for (const auto& s : specs) facts.push_back(group_facts(s, mode, opts));
  return growth_sequence(std::move(facts));
}

PrefixConstants prefix_constants(const std::vector<GroupFacts>& facts) {
  PrefixConstants c{1, 1};
  for (const auto& f : facts) {
    if (f.order <= 1) throw PreconditionError("prefix constants need non-trivial groups ('" + f.spec + "')");
    c.r = std::max<unsigned long>(c.r, f.rank);
    while (!le_power(f.order, f.E_order, c.t) || !le_power(f.order, mpz_class(f.mu), c.t)) ++c.t;
  }
  return c;
}

std::size_t l_of_n(const std::vector<unsigned long>& mu, const mpz_class& n) {
  for (std::size_t l = 0; l < mu.size(); ++l)
    if (n < mu[l]) return l;
  throw PreconditionError("l(" + n.get_str() + ") is not determined by a prefix of length " +
                          std::to_string(mu.size()));
}

UpperBound upper_bound_at_level(const GrowthSequence& seq, std::size_t l, const mpz_class& n, unsigned long r,
                                unsigned long t) {
  if (l >= seq.mhat.size()) throw PreconditionError("level " + std::to_string(l) + " beyond the prefix");
  UpperBound ub;
  ub.l = l;
  ub.mhat_l = seq.mhat[l];
  ub.exponent = TowerInt(static_cast<long>(3 * r * t)) * ub.mhat_l;
  ub.bound = TowerInt::pow(TowerInt(n), ub.exponent);
  return ub;
}

UpperBound upper_bound_exponent(const GrowthSequence& seq, const mpz_class& n, unsigned long r, unsigned long t) {
  return upper_bound_at_level(seq, l_of_n(seq.mus(), n), n, r, t);
}

LowerPoint lower_bound_point(const GrowthSequence& seq, std::size_t l, unsigned long t) {
  if (t == 0) throw PreconditionError("t must be positive");
  if (l + 1 > seq.length()) throw PreconditionError("lower bound at level " + std::to_string(l) + " needs S_" +
                                                    std::to_string(l + 1));
  LowerPoint lp;
  lp.l = l;
  lp.mhat_l = seq.mhat[l];
  lp.n_star = TowerInt::pow(TowerInt(seq.facts[l].order), TowerInt(3L) * lp.mhat_l);
  lp.coefficient = mpq_class(1, 12 * t);
  if (lp.mhat_l.is_exact()) {
    lp.exponent = mpq_class(lp.mhat_l.exact()) * lp.coefficient;
    lp.exponent->canonicalize();
  }
  return lp;
}

namespace {

struct Levels {
  IteratedWreath W;
  std::vector<std::optional<SubgroupLattice>> lattices;  // lattices[k-1] for W_k
};

Levels build_levels(const std::vector<PermGroup>& seq, std::size_t n, const WreathOptions& wopts,
                    const LatticeOptions& lopts) {
  Levels lv{iterated_wpa(seq, n, wopts), {}};
  for (const auto& level : lv.W.levels) {
    if (level.group && level.group->materialized() && level.group->elements().size() <= lopts.order_cap)
      lv.lattices.emplace_back(SubgroupLattice(*level.group, lopts));
    else
      lv.lattices.emplace_back(std::nullopt);
  }
  return lv;
}

const SubgroupLattice& need_lattice(const Levels& lv, std::size_t k) {
  const auto& L = lv.lattices.at(k - 1);
  if (!L) {
    const auto& level = lv.W.level(k);
    throw CapExceeded("cap exceeded: W_" + std::to_string(k) + " (degree " + level.degree.render() + ", order " +
                      level.order.render() + ") is not materialized within the caps");
  }
  return *L;
}

BaseContainment containment(const Levels& lv, std::size_t i, const mpz_class& n, unsigned long mu_Si) {
  const SubgroupLattice& Li = need_lattice(lv, i);
  BaseContainment out;
  out.i = i;
  out.n = n;
  out.mu_Si = mu_Si;
  if (n >= mu_Si)
    throw PreconditionError("base containment needs n < mu(S_" + std::to_string(i) + ") = " + std::to_string(mu_Si));

  std::vector<std::size_t> base_idx;
  if (i == 1) {
    for (std::size_t x = 0; x < Li.group_order(); ++x) base_idx.push_back(x);
  } else {
    const auto& level = lv.W.level(i);
    const auto& gens = level.group->generators();
    std::vector<Permutation> bg(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(level.base_generator_count));
    PermGroup base = generate_or_throw(bg, Li.group_order());
    for (const auto& e : base.elements()) base_idx.push_back(Li.element_index(e));
  }
  out.all_contain_base = true;
  for (std::size_t h = 0; h < Li.size(); ++h) {
    if (n < static_cast<unsigned long>(Li.index(h))) continue;
    ++out.subgroups_checked;
    for (std::size_t x : base_idx)
      if (!Li.subgroups()[h].contains(x)) {
        out.all_contain_base = false;
        break;
      }
  }
  out.s_n_Wi = s_n(Li, n);
  out.s_n_Wprev = i == 1 ? mpz_class(1) : s_n(need_lattice(lv, i - 1), n);
  return out;
}

}  // namespace

BaseContainment verify_base_containment(const std::vector<PermGroup>& seq, std::size_t i, const mpz_class& n,
                                        const WreathOptions& wopts, const LatticeOptions& lopts) {
  if (i < 1) throw PreconditionError("level i must be >= 1");
  Levels lv = build_levels(seq, i, wopts, lopts);
  need_lattice(lv, i);
  const GroupFacts f = group_facts(lv.W.sequence[i - 1], lopts);
  return containment(lv, i, n, f.mu);
}

bool GrowthVerification::all_ok() const {
  for (const auto& c : upper)
    if (!c.upper_ok) return false;
  for (const auto& c : lower)
    if (!c.lower_ok || !c.order_below_n_star) return false;
  for (const auto& c : stabilization)
    if (!c.ok()) return false;
  return true;
}

GrowthVerification verify_bounds_exact(const std::vector<std::string>& specs, std::size_t n_max,
                                       std::optional<PrefixConstants> constants, const WreathOptions& wopts,
                                       const LatticeOptions& lopts) {
  if (specs.empty()) throw PreconditionError("empty sequence");
  std::vector<PermGroup> groups;
  for (const auto& s : specs) groups.push_back(parse_group_spec(s));
  const std::size_t L = groups.size();

  GrowthVerification out;
  out.specs = specs;
  std::vector<GroupFacts> facts;
  for (const auto& g : groups) facts.push_back(group_facts(g, lopts));
  const GrowthSequence seq = growth_sequence(facts);
  out.constants_from_prefix = !constants.has_value();
  out.constants = constants ? *constants : prefix_constants(facts);
  const unsigned long r = out.constants.r, t = out.constants.t;

  Levels lv = build_levels(groups, L, wopts, lopts);
  const SubgroupLattice& top = need_lattice(lv, L);
  const auto mus = seq.mus();

  for (std::size_t n = 1; n <= n_max; ++n) {
    GrowthCertificate c;
    c.n = n;
    c.l = L - 1;
    c.l_capped = true;
    for (std::size_t l = 0; l < L; ++l)
      if (mpz_class(static_cast<unsigned long>(n)) < mus[l]) {
        c.l = l;
        c.l_capped = false;
        break;
      }
    UpperBound ub = upper_bound_at_level(seq, c.l, static_cast<unsigned long>(n), r, t);
    c.mhat_l = ub.mhat_l;
    c.upper_exponent = ub.exponent;
    c.upper_bound = ub.bound;
    c.s_n = s_n(top, static_cast<unsigned long>(n));
    const Ordering o = compare_strict(TowerInt(c.s_n), c.upper_bound, "s_n <= n^(3rt mhat_l)");
    c.upper_ok = o != Ordering::Greater;
    out.upper.push_back(std::move(c));
  }

  for (std::size_t l = 0; l < L; ++l) {
    if (!lv.lattices[l]) continue;
    const SubgroupLattice& Wl = *lv.lattices[l];
    LowerPoint lp = lower_bound_point(seq, l, t);
    if (!lp.exponent) continue;
    LowerCheck c;
    c.l = l;
    c.n_star = lp.n_star;
    c.exponent = *lp.exponent;
    c.order_W = static_cast<unsigned long>(Wl.group_order());
    c.order_below_n_star = compare(TowerInt(c.order_W), c.n_star) == Ordering::Less;
    c.subgroups = c.n_star.is_exact() ? s_n(Wl, c.n_star.exact()) : mpz_class(static_cast<unsigned long>(Wl.size()));
    const TowerInt lhs = TowerInt::pow(TowerInt(c.subgroups), TowerInt(mpz_class(c.exponent.get_den())));
    const TowerInt rhs = TowerInt::pow(c.n_star, TowerInt(mpz_class(c.exponent.get_num())));
    c.lower_ok = compare_strict(lhs, rhs, "s_{n*} >= (n*)^(mhat_l/12t)") != Ordering::Less;
    out.lower.push_back(std::move(c));
  }

  for (std::size_t i = 2; i <= L; ++i) {
    if (!lv.lattices[i - 1] || !lv.lattices[i - 2]) continue;
    for (unsigned long n = 1; n < mus[i - 1]; ++n) out.stabilization.push_back(containment(lv, i, n, mus[i - 1]));
  }
  return out;
}

nlohmann::ordered_json GrowthVerification::to_json() const {
  nlohmann::ordered_json j;
  j["sequence"] = specs;
  j["constants"] = {{"r", constants.r},
                    {"t", constants.t},
                    {"kind", constants_from_prefix ? "prefix-valid constants" : "given"}};
  nlohmann::ordered_json up = nlohmann::ordered_json::array();
  for (const auto& c : upper)
    up.push_back({{"n", c.n},
                  {"l", c.l},
                  {"l_capped", c.l_capped},
                  {"mhat_l", c.mhat_l.render()},
                  {"upper_exponent", c.upper_exponent.render()},
                  {"upper_bound", c.upper_bound.render()},
                  {"s_n", c.s_n.get_str()},
                  {"pass", c.upper_ok}});
  j["upper"] = up;
  nlohmann::ordered_json lo = nlohmann::ordered_json::array();
  for (const auto& c : lower)
    lo.push_back({{"l", c.l},
                  {"n_star", c.n_star.render()},
                  {"exponent", c.exponent.get_str()},
                  {"order_W", c.order_W.get_str()},
                  {"order_below_n_star", c.order_below_n_star},
                  {"subgroups", c.subgroups.get_str()},
                  {"pass", c.lower_ok}});
  j["lower"] = lo;
  nlohmann::ordered_json st = nlohmann::ordered_json::array();
  for (const auto& c : stabilization)
    st.push_back({{"i", c.i},
                  {"n", c.n.get_str()},
                  {"mu_S_i", c.mu_Si},
                  {"subgroups_checked", c.subgroups_checked},
                  {"all_contain_base", c.all_contain_base},
                  {"s_n_W_i", c.s_n_Wi.get_str()},
                  {"s_n_W_prev", c.s_n_Wprev.get_str()},
                  {"pass", c.ok()}});
  j["stabilization"] = st;
  j["all_ok"] = all_ok();
  return j;
}

std::string GrowthVerification::to_csv() const {
  std::ostringstream os;
  os << "n,s_n,upper_bound,pass\n";
  for (const auto& c : upper)
    os << c.n << ',' << c.s_n.get_str() << ",\"" << c.upper_bound.render() << "\"," << (c.upper_ok ? "pass" : "fail")
       << '\n';
  return os.str();
}

std::string GrowthVerification::to_text() const {
  std::ostringstream os;
  os << "r = " << constants.r << ", t = " << constants.t
     << (constants_from_prefix ? " (prefix-valid constants)" : "") << "\n";
  os << "   n  l  s_n  bound\n";
  for (const auto& c : upper)
    os << (c.n < 10 ? "   " : c.n < 100 ? "  " : " ") << c.n << "  " << c.l << (c.l_capped ? "*" : " ") << " "
       << c.s_n.get_str() << "  " << c.upper_bound.render() << (c.upper_ok ? "" : "  FAIL") << "\n";
  for (const auto& c : lower)
    os << "lower l=" << c.l << ": s(W_" << c.l + 1 << ") = " << c.subgroups.get_str() << " vs (" << c.n_star.render()
       << ")^(" << c.exponent.get_str() << ") " << (c.lower_ok ? "pass" : "FAIL") << "\n";
  std::size_t bad = 0;
  for (const auto& c : stabilization) bad += c.ok() ? 0 : 1;
  os << "stabilization: " << stabilization.size() << " checks, " << bad << " failures\n";
  os << (all_ok() ? "all bounds hold" : "VIOLATION") << "\n";
  return os.str();
}

}  // namespace wpa

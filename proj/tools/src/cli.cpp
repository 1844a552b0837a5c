#include "wpa_cli/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wpa/error.hpp"
#include "wpa/gently.hpp"
#include "wpa/group_spec.hpp"
#include "wpa/growth.hpp"
#include "wpa/lattice.hpp"
#include "wpa/nice.hpp"
#include "wpa/planner.hpp"
#include "wpa/primes.hpp"
#include "wpa/tower.hpp"
#include "wpa/wreath.hpp"

namespace wpa::cli {
namespace {

using json = nlohmann::ordered_json;

// Text table with columns padded to their widest cell.
std::string table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < w.size(); ++c) w[c] = std::max(w[c], r[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << (c ? "  " : "") << std::setw(static_cast<int>(w[c])) << r[c];
    }
    os << "\n";
  };
  line(head);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::optional<std::size_t> env_size(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  std::size_t pos = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string(name) + " must be a positive integer, got '" + v + "'");
  }
  if (pos != std::string(v).size() || x == 0)
    throw ParseError(std::string(name) + " must be a positive integer, got '" + v + "'");
  return static_cast<std::size_t>(x);
}

mpq_class parse_rational(const std::string& s, const std::string& what) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ParseError(what + " must be a rational like 3 or 1/10, got '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<mpz_class> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<mpz_class> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    mpz_class v;
    if (item.empty() || v.set_str(item, 10) != 0) throw ParseError(what + ": bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError(what + " is empty");
  return out;
}

struct Options {
  std::string spec, seq, top, action = "product", mode = "exact", f = "loglog2", constants, format = "json";
  std::string plan_kind, a_list, C_tower = "2";
  std::string r, t, B = "1", C = "1";
  std::size_t n = 0, nmax = 0, levels = 0, kmax = 2, h = 1, prefix = 0;
  std::optional<std::size_t> max_order, bitcap;
  std::size_t max_elements = kDefaultElementCap;
  bool toy = false, periodic = false;
};

struct Outcome {
  json result;
  std::string text;
  std::string csv;
  bool ok = true;
};

Outcome cmd_group(const Options& o) {
  PermGroup G = parse_group_spec(o.spec);
  const auto formula = G.order();
  G.materialize(o.max_elements);
  json orb = json::array();
  for (const auto& b : orbits(G)) orb.push_back(b);
  json gens = json::array();
  for (const auto& g : G.generators()) gens.push_back(to_cycle_string(g));
  Outcome out;
  out.result = {{"spec", o.spec}, {"degree", G.degree()},      {"generators", gens},
                {"order", G.order()->get_str()},             {"orbits", orb},
                {"transitive", is_transitive(G)}};
  if (formula) {
    out.result["formula_order"] = formula->get_str();
    out.ok = *formula == *G.order();
    out.result["order_matches_formula"] = out.ok;
  }
  std::ostringstream os;
  os << o.spec << ": degree " << G.degree() << ", order " << G.order()->get_str() << ", " << orb.size()
     << (orb.size() == 1 ? " orbit" : " orbits") << (is_transitive(G) ? " (transitive)" : "") << "\n";
  out.text = os.str();
  return out;
}

Outcome cmd_wreath(const Options& o, const LatticeOptions&) {
  Outcome out;
  WreathOptions wopts;
  wopts.element_cap = o.max_elements;
  if (!o.seq.empty()) {
    const auto seq = parse_sequence_spec(o.seq);
    const std::size_t n = o.levels ? o.levels : seq.size();
    if (n > seq.size()) throw PreconditionError("--levels exceeds the sequence length");
    const IteratedWreath W = iterated_wpa(seq, n, wopts);
    json lv = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& L : W.levels) {
      json e = {{"k", L.k},
                {"degree", L.degree.render()},
                {"order", L.order.render()},
                {"materialized", L.group && L.group->materialized()}};
      std::string check = "-";
      if (L.group && L.group->materialized()) {
        const bool match = L.order.is_exact() && L.order.exact() == *L.group->order();
        e["closure_order"] = L.group->order()->get_str();
        e["order_matches_closure"] = match;
        out.ok = out.ok && match;
        check = match ? "closure ok" : "MISMATCH";
        if (L.k >= 2 && W.level(L.k - 1).group && W.level(L.k - 1).group->materialized()) {
          const ProjectionCheck pc = project(W, L.k);
          e["projection"] = {{"homomorphism", pc.homomorphism},
                             {"surjective", pc.surjective},
                             {"kernel_is_base", pc.kernel_is_base}};
          out.ok = out.ok && pc.ok();
          check += pc.ok() ? ", projection ok" : ", PROJECTION FAILS";
        }
      }
      lv.push_back(e);
      rows.push_back({std::to_string(L.k), L.degree.render(), L.order.render(), check});
    }
    out.result = {{"sequence", o.seq}, {"levels", lv}};
    out.text = table({"k", "degree", "order", "check"}, rows);
    return out;
  }
  if (o.spec.empty() || o.top.empty()) throw ParseError("wreath needs --seq, or --spec and --top");
  const PermGroup A = parse_group_spec(o.spec), B = parse_group_spec(o.top);
  if (o.action != "product" && o.action != "imprimitive")
    throw ParseError("--action must be product or imprimitive, got '" + o.action + "'");
  WreathProduct w = o.action == "product" ? product_action(A, B, wopts.degree_cap) : imprimitive_action(A, B, wopts.degree_cap);
  out.result = {{"bottom", o.spec}, {"top", o.top}, {"action", to_string(w.kind)}, {"degree", w.result.degree()}};
  if (w.result.order()) out.result["formula_order"] = w.result.order()->get_str();
  w.result.materialize(o.max_elements);
  out.result["closure_order"] = w.result.order()->get_str();
  out.result["base_generators"] = w.base_generator_count;
  json gens = json::array();
  for (const auto& g : w.result.generators()) gens.push_back(to_cycle_string(g));
  out.result["generators"] = gens;
  out.ok = out.result.contains("formula_order") && out.result["formula_order"] == out.result["closure_order"];
  out.result["order_matches_formula"] = out.ok;
  out.text = "(" + o.spec + ") wr_" + (o.action == "product" ? "pa" : "imp") + " (" + o.top + "): degree " +
             std::to_string(w.result.degree()) + ", order " + w.result.order()->get_str() +
             (out.ok ? " (matches formula)" : " (formula mismatch)") + "\n";
  return out;
}

Outcome cmd_count(const Options& o, const LatticeOptions& lopts) {
  PermGroup G = parse_group_spec(o.spec);
  G.materialize(o.max_elements);
  const SubgroupLattice L = subgroup_lattice(G, lopts);
  const std::size_t n = o.n ? o.n : L.group_order();
  Outcome out;
  json tab = json::array();
  std::vector<std::vector<std::string>> rows;
  std::ostringstream csv;
  csv << "n,s_n\n";
  for (std::size_t k = 1; k <= n; ++k) {
    const std::string s = s_n(L, mpz_class(static_cast<unsigned long>(k))).get_str();
    tab.push_back({{"n", k}, {"s_n", s}});
    rows.push_back({std::to_string(k), s});
    csv << k << ',' << s << '\n';
  }
  out.result = lattice_summary(L);
  out.result["spec"] = o.spec;
  out.result["s_table"] = tab;
  out.text = o.spec + ": order " + std::to_string(L.group_order()) + ", " + std::to_string(L.size()) +
             " subgroups, rank " + std::to_string(rank(L)) + "\n" + table({"n", "s_n"}, rows);
  out.csv = csv.str();
  return out;
}

Outcome cmd_tower(const Options& o) {
  if (o.a_list.empty()) throw ParseError("tower needs --a with comma-separated integers >= 2");
  const auto a = parse_int_list(o.a_list, "--a");
  const std::size_t n = o.n ? o.n : a.size();
  if (n > a.size()) throw PreconditionError("--n exceeds the length of --a");
  const auto hat = tower_prefix(a, n);
  Outcome out;
  json vals = json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < hat.size(); ++k) {
    vals.push_back({{"n", k}, {"value", hat[k].render()}, {"exact", hat[k].is_exact()}});
    rows.push_back({std::to_string(k), hat[k].render()});
  }
  out.result["a"] = o.a_list;
  out.result["hat"] = vals;
  const mpq_class C = parse_rational(o.C_tower, "--C");
  std::ostringstream os;
  os << table({"n", "hat_n"}, rows);
  try {
    const MLevel m = find_M(a, C);
    out.result["M"] = {{"C", C.get_str()}, {"M", m.M}, {"persistence_level", m.persistence_level}};
    os << "M(" << C.get_str() << ") = " << m.M << "\n";
  } catch (const PreconditionError& e) {
    out.result["M"] = {{"C", C.get_str()}, {"error", e.what()}};
    os << "M(" << C.get_str() << "): " << e.what() << "\n";
  }
  try {
    const Lemma31Certificate cert = verify_lemma31(a, n);
    json lv = json::array();
    for (const auto& l : cert.levels)
      lv.push_back({{"n", l.n},
                    {"partial_sum_ok", l.partial_sum_ok},
                    {"total_checked", l.total_checked},
                    {"total_sum_ok", l.total_sum_ok},
                    {"status", to_string(l.status)}});
    out.result["partial_sums"] = {{"M2", cert.M2}, {"M_of_M2", cert.M_of_M2}, {"N", cert.N},
                                  {"exact_reach", cert.exact_reach}, {"levels", lv}, {"all_hold", cert.all_hold()}};
    out.ok = cert.all_hold();
    os << "N = " << cert.N << " (M(2) = " << cert.M2 << "), partial-sum bounds "
       << (cert.all_hold() ? "hold" : "FAIL") << " for n <= " << n << "\n";
  } catch (const PreconditionError& e) {
    out.result["partial_sums"] = {{"error", e.what()}};
    os << "partial sums: " << e.what() << "\n";
  }
  out.text = os.str();
  return out;
}

NiceMode parse_mode(const std::string& m) {
  if (m == "exact") return NiceMode::Exact;
  if (m == "facts") return NiceMode::Facts;
  throw ParseError("--mode must be exact or facts, got '" + m + "'");
}

Outcome cmd_nice(const Options& o, const LatticeOptions& lopts) {
  if (o.seq.empty()) throw ParseError("nice-check needs --seq");
  NiceSequenceSpec spec;
  spec.entries = split_sequence_spec(o.seq);
  if (!o.r.empty()) spec.r = parse_rational(o.r, "--r");
  if (!o.t.empty()) spec.t = parse_rational(o.t, "--t");
  spec.periodic = o.periodic;
  const std::size_t len = o.prefix ? o.prefix : spec.entries.size();
  const NicenessReport rep = check_nice(spec, len, parse_mode(o.mode), lopts);
  Outcome out;
  out.result = rep.to_json();
  out.text = rep.to_text();
  out.ok = rep.overall();
  return out;
}

Outcome cmd_growth(const Options& o, const LatticeOptions& lopts) {
  if (o.seq.empty()) throw ParseError("growth-verify needs --seq");
  if (o.nmax == 0) throw ParseError("growth-verify needs --nmax >= 1");
  std::optional<PrefixConstants> pc;
  if (!o.r.empty() || !o.t.empty()) {
    if (o.r.empty() || o.t.empty()) throw ParseError("--r and --t must be given together");
    const mpq_class r = parse_rational(o.r, "--r"), t = parse_rational(o.t, "--t");
    if (r.get_den() != 1 || t.get_den() != 1 || r < 1 || t < 1)
      throw ParseError("growth-verify takes positive integer --r and --t");
    pc = PrefixConstants{r.get_num().get_ui(), t.get_num().get_ui()};
  }
  WreathOptions wopts;
  wopts.element_cap = o.max_elements;
  const GrowthVerification v = verify_bounds_exact(split_sequence_spec(o.seq), o.nmax, pc, wopts, lopts);
  Outcome out;
  out.result = v.to_json();
  out.text = v.to_text();
  out.csv = v.to_csv();
  out.ok = v.all_ok();
  return out;
}

Outcome cmd_plan(const Options& o, std::size_t bitcap) {
  PlanOptions po;
  if (o.toy && !o.constants.empty()) throw ParseError("--toy and --constants are exclusive");
  po.constants = o.toy ? PlannerConstants::toy()
                       : o.constants.empty() ? PlannerConstants::standard() : PlannerConstants::parse(o.constants);
  po.B = parse_rational(o.B, "--B");
  po.C = parse_rational(o.C, "--C");
  if (po.B <= 0) throw ParseError("--B must be positive");
  po.k_max = o.kmax;
  po.bitcap = bitcap;
  PrimePlan plan;
  if (o.plan_kind == "thmA")
    plan = plan_theoremA(GentlyGrowingFn::parse(o.f), po);
  else if (o.plan_kind == "var1")
    plan = plan_variation1(GentlyGrowingFn::parse(o.f), po);
  else if (o.plan_kind == "var2") {
    if (o.h < 1) throw ParseError("--h must be >= 1");
    plan = plan_variation2(static_cast<unsigned>(o.h), po);
  } else {
    throw ParseError("plan kind must be thmA, var1 or var2");
  }
  Outcome out;
  out.result = plan.to_json();
  out.text = plan.to_text();
  out.ok = plan.ok();
  return out;
}

}  // namespace

RunReport run(const std::vector<std::string>& args) {
  RunReport rr;
  CLI::App app{"Wreath products in product action: groups, lattices, towers and prime plans", "wpa"};
  app.require_subcommand(1);
  Options o;
  std::string max_order_flag, bitcap_flag;

  auto add_format = [&](CLI::App* s, bool csv) {
    s->add_option("--format", o.format, csv ? "json | text | csv" : "json | text")
        ->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "text", "csv"}
                                  : std::vector<std::string>{"json", "text"}));
  };
  auto add_caps = [&](CLI::App* s) {
    s->add_option("--max-order", max_order_flag, "largest group order for lattice work (env WPA_MAX_ORDER)");
    s->add_option("--max-elements", o.max_elements, "closure element cap");
  };

  auto* g = app.add_subcommand("group", "closure, order and orbits of one group");
  g->add_option("--spec", o.spec, "group spec")->required();
  add_caps(g);
  add_format(g, false);

  auto* w = app.add_subcommand("wreath", "wreath product, or an iterated product-action tower");
  w->add_option("--spec", o.spec, "bottom group A");
  w->add_option("--top", o.top, "top group B");
  w->add_option("--action", o.action, "product | imprimitive");
  w->add_option("--seq", o.seq, "sequence S_1,S_2,... for the iterated tower");
  w->add_option("--levels", o.levels, "number of levels (default: all)");
  add_caps(w);
  add_format(w, false);

  auto* c = app.add_subcommand("count", "subgroup counts s_n");
  c->add_option("--spec", o.spec, "group spec")->required();
  c->add_option("--n", o.n, "largest index (default |G|)");
  add_caps(c);
  add_format(c, true);

  auto* t = app.add_subcommand("tower", "iterated power tower and partial-sum bounds");
  t->add_option("--a", o.a_list, "comma-separated a_1,a_2,... (each >= 2)")->required();
  t->add_option("--n", o.n, "levels (default: length of --a)");
  t->add_option("--C", o.C_tower, "ratio constant C for M(C)");
  add_format(t, false);

  auto* nc = app.add_subcommand("nice-check", "check N.1-N.5 on a sequence prefix");
  nc->add_option("--seq", o.seq, "sequence spec")->required();
  nc->add_option("--mode", o.mode, "exact | facts");
  nc->add_option("--r", o.r, "rank constant r");
  nc->add_option("--t", o.t, "exponent constant t");
  nc->add_option("--prefix", o.prefix, "prefix length (default: all)");
  nc->add_flag("--periodic", o.periodic, "the sequence repeats its entries forever");
  add_caps(nc);
  add_format(nc, false);

  auto* gv = app.add_subcommand("growth-verify", "exact subgroup-growth bounds on a truncation");
  gv->add_option("--seq", o.seq, "sequence spec")->required();
  gv->add_option("--nmax", o.nmax, "largest n")->required();
  gv->add_option("--r", o.r, "rank constant (default: prefix-valid)");
  gv->add_option("--t", o.t, "exponent constant (default: prefix-valid)");
  add_caps(gv);
  add_format(gv, true);

  auto* p = app.add_subcommand("plan", "synthesize the prime sequence");
  p->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  p->add_option("kind", o.plan_kind, "thmA | var1 | var2")->required()->check(CLI::IsMember({"thmA", "var1", "var2"}));
  p->add_option("--f", o.f, "gently growing function");
  p->add_option("--h", o.h, "root order for var2");
  p->add_option("--kmax", o.kmax, "last index k");
  p->add_flag("--toy", o.toy, "demonstrative constants 2,2,2");
  p->add_option("--constants", o.constants, "standard | toy | k0,k1,k2");
  p->add_option("--B", o.B, "constant B");
  p->add_option("--C", o.C, "constant C");
  p->add_option("--bitcap", bitcap_flag, "largest exact prime bit length (env WPA_BITCAP)");
  add_format(p, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    rr.output = app.help();
    return rr;
  } catch (const CLI::CallForAllHelp&) {
    rr.output = app.help("", CLI::AppFormatMode::All);
    return rr;
  } catch (const CLI::ParseError& e) {
    rr.exit_code = kUsage;
    rr.error = std::string("usage error: ") + e.what();
    rr.report = {{"tool", "wpa"}, {"version", kToolVersion}, {"status", "usage-error"}, {"error", rr.error}};
    return rr;
  }

  CLI::App* sub = app.get_subcommands().front();
  json inputs = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto& res = opt->results();
    inputs[opt->get_name()] = res.size() == 1 ? json(res.front()) : json(res);
  }

  json report;
  report["tool"] = "wpa";
  report["version"] = kToolVersion;
  report["command"] = sub->get_name();
  report["inputs"] = inputs;

  const char* status = "ok";
  try {
    LatticeOptions lopts;
    if (auto e = env_size("WPA_MAX_ORDER")) lopts.order_cap = *e;
    if (!max_order_flag.empty()) lopts.order_cap = static_cast<std::size_t>(parse_int_list(max_order_flag, "--max-order").front().get_ui());
    std::size_t bitcap = kDefaultBitcap;
    if (auto e = env_size("WPA_BITCAP")) bitcap = *e;
    if (!bitcap_flag.empty()) bitcap = static_cast<std::size_t>(parse_int_list(bitcap_flag, "--bitcap").front().get_ui());

    report["settings"] = {{"lattice_order_cap", lopts.order_cap},
                          {"element_cap", o.max_elements},
                          {"bitcap", bitcap},
                          {"prime_seed", kPrimeSeed},
                          {"probable_prime_rounds", kProbablePrimeRounds}};
    if (sub->get_name() == "plan") {
      const PlannerConstants k = o.toy ? PlannerConstants::toy()
                                 : o.constants.empty() ? PlannerConstants::standard()
                                                       : PlannerConstants::parse(o.constants);
      report["settings"]["constants"] = k.to_json();
    }

    Outcome out;
    const std::string& name = sub->get_name();
    if (name == "group") out = cmd_group(o);
    else if (name == "wreath") out = cmd_wreath(o, lopts);
    else if (name == "count") out = cmd_count(o, lopts);
    else if (name == "tower") out = cmd_tower(o);
    else if (name == "nice-check") out = cmd_nice(o, lopts);
    else if (name == "growth-verify") out = cmd_growth(o, lopts);
    else out = cmd_plan(o, bitcap);

    if (!out.ok) {
      status = "failed";
      rr.exit_code = kFailed;
    }
    report["status"] = status;
    report["result"] = out.result;
    rr.report = report;
    if (o.format == "text")
      rr.output = out.text;
    else if (o.format == "csv") {
      if (out.csv.empty()) throw ParseError("--format csv is only available for (n, s_n) tables");
      rr.output = out.csv;
    } else
      rr.output = report.dump(2) + "\n";
    return rr;
  } catch (const ParseError& e) {
    rr.exit_code = kUsage;
    status = "usage-error";
    rr.error = std::string("usage error: ") + e.what();
  } catch (const PreconditionError& e) {
    rr.exit_code = kUsage;
    status = "precondition-violated";
    rr.error = std::string("precondition violated: ") + e.what();
  } catch (const CapExceeded& e) {
    rr.exit_code = kCapOrUndecided;
    status = "cap-exceeded";
    rr.error = e.what();
  } catch (const Indeterminate& e) {
    rr.exit_code = kCapOrUndecided;
    status = "undecided";
    rr.error = e.what();
  }
  report["status"] = status;
  report["error"] = rr.error;
  rr.report = report;
  if (o.format == "json") rr.output = report.dump(2) + "\n";
  return rr;
}

}  // namespace wpa::cli

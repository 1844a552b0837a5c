#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "wpa/lattice.hpp"
#include "wpa/perm.hpp"

namespace wpa {

/// PSL_2(p) on the projective line: points 0..p-1 are F_p, point p is
/// infinity; generators x -> x+1 and x -> -1/x.
PermGroup psl2_group(unsigned long p);
mpz_class psl2_order(unsigned long p);

struct Psl2Facts {
  unsigned long p = 0;
  mpz_class tau;                  // p(p^2-1)/2
  unsigned long mu_formula = 0;   // p + 1
  unsigned long mu = 0;           // true minimal index
  bool mu_formula_valid = false;  // false for p in {5, 7, 11}
  std::size_t rank = 2;
  unsigned long E_prime = 0;      // upper unitriangular subgroup C_p
  std::size_t E_exponent = 1;
  bool chain_holds = false;       // p < tau < p^3 <= (p+1)^3
};
/// Needs p prime >= 5.
Psl2Facts psl2_facts(unsigned long p);

/// Per-group quantities used by the niceness and growth checks.
struct GroupFacts {
  std::string spec;
  std::size_t degree = 0;
  mpz_class order;
  std::size_t rank = 0;
  unsigned long mu = 0;
  unsigned long E_prime = 0;
  std::size_t E_exponent = 0;
  mpz_class E_order;
  std::string source;                   // "exact" or "facts"
  std::vector<std::string> notes;       // e.g. the small-prime exception for mu
  std::vector<std::string> rank_witness;  // generators of a subgroup attaining the rank
  std::vector<std::string> E_witness;     // generators of E
};

enum class NiceMode { Exact, Facts };
const char* to_string(NiceMode m);

/// Exact mode computes the lattice; facts mode needs psl2:p specs.
GroupFacts group_facts(const std::string& spec, NiceMode mode, const LatticeOptions& opts = {});
GroupFacts group_facts(const PermGroup& G, const LatticeOptions& opts = {});

struct NiceSequenceSpec {
  std::vector<std::string> entries;
  mpq_class r = 2;
  mpq_class t = 3;
  bool periodic = false;  // declared to repeat its entries forever
};

enum class Trend { NotRefuted, Refuted, Vacuous };
const char* to_string(Trend t);

struct ConditionRecord {
  std::string condition;  // "N.1" .. "N.4"
  std::size_t k = 0;      // 1-based index into the prefix
  bool pass = false;
  std::string detail;
};

struct NicenessReport {
  NiceMode mode = NiceMode::Exact;
  std::size_t prefix_len = 0;
  std::vector<GroupFacts> facts;
  std::vector<ConditionRecord> records;
  Trend n5 = Trend::Vacuous;
  std::string n5_detail;

  bool passes(const std::string& condition) const;
  /// N.1-N.4 pass on the prefix and N.5 is not refuted.
  bool overall() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

NicenessReport check_nice(const NiceSequenceSpec& spec, std::size_t prefix_len, NiceMode mode,
                          const LatticeOptions& opts = {});

/// Exact check |S| <= base^t for rational t > 0.
bool le_power(const mpz_class& lhs, const mpz_class& base, const mpq_class& t);

}  // namespace wpa

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "wpa/gently.hpp"
#include "wpa/primes.hpp"
#include "wpa/tower.hpp"

namespace wpa {

inline constexpr std::size_t kDefaultBitcap = std::size_t{1} << 16;

/// kappa0: floor and first threshold for p_0; kappa1: multiplier in
/// p_k > kappa1 * mhat_{k-1}; kappa2: threshold in f(p_k) >= kappa2 * mhat_{k-1}.
struct PlannerConstants {
  unsigned long kappa0 = 18;
  unsigned long kappa1 = 9;
  unsigned long kappa2 = 18;

  static PlannerConstants standard() { return {}; }
  static PlannerConstants toy() { return {2, 2, 2}; }
  /// "a,b,c" or the words "standard" / "toy".
  static PlannerConstants parse(const std::string& text);

  bool is_standard() const { return kappa0 == 18 && kappa1 == 9 && kappa2 == 18; }
  /// Anything other than the standard values, or breaking kappa2 = 2 kappa1.
  bool is_toy() const;
  std::string label() const;
  nlohmann::ordered_json to_json() const;
};

struct Condition {
  std::string text;          // e.g. "p_1 > 9*mhat_0"
  std::string status;        // holds | fails | required | undecided
  std::string detail;
};

/// One p_k: either an exact prime or a lower bound when the search would
/// exceed the bit cap. mhat values are exact when p_0..p_k are exact and
/// lower bounds otherwise.
struct PrimeCertificate {
  std::size_t k = 0;
  std::string rule;                 // e.g. "thmA:k=2", "var2:h=3:k=1"
  bool exact = false;
  mpz_class p;                      // exact prime
  std::string evidence;             // primality evidence for exact primes
  TowerInt p_lower;                 // lower bound for symbolic entries (p itself when exact)
  TowerInt bits_lower;              // lower bound on the bit length of p_k
  std::optional<TowerInt> mhat_prev;  // mhat_{k-1}
  TowerInt mhat;                    // mhat_k = (p_k + 1)^mhat_{k-1}
  bool mhat_is_lower_bound = false;
  std::optional<std::pair<TowerInt, TowerInt>> log_window;  // variation 2: bounds on log2 p_k
  std::vector<Condition> conditions;
  nlohmann::ordered_json extra;     // plan-specific checks

  bool ok() const;
};

struct PrimePlan {
  std::string kind;  // thmA | var1 | var2
  std::string f;
  PlannerConstants constants;
  mpq_class B = 1, C = 1;
  std::size_t bitcap = kDefaultBitcap;
  mpq_class A = 2;
  mpz_class N = 4;
  std::optional<unsigned> h;
  std::vector<PrimeCertificate> certificates;
  std::vector<std::string> notes;

  bool ok() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

struct PrimeSearch {
  bool found = false;
  mpz_class p;
  PrimalityResult evidence;
  TowerInt lower;       // least admissible value (p when found)
  TowerInt bits_lower;  // bit length lower bound
};

/// Least prime p >= min_value with f(p) >= T, if its bit length fits
/// `bitcap`. Otherwise a certified lower bound on every such p.
PrimeSearch search_prime(const GentlyGrowingFn& f, const TowerInt& T, const TowerInt& min_value, std::size_t bitcap);

struct LemmaPrime {
  PrimeSearch search;
  Ordering upper = Ordering::Indeterminate;  // compare(2m, B f(p^m)) when p is exact
  bool upper_holds() const { return upper == Ordering::Greater || upper == Ordering::Equal; }
};
/// Smallest prime p > m with f(p) >= 2m, and whether 2m >= B f(p^m).
LemmaPrime find_lemma_prime(const GentlyGrowingFn& f, const mpz_class& m, const mpq_class& B,
                            std::size_t bitcap = kDefaultBitcap);

struct PlanOptions {
  PlannerConstants constants = PlannerConstants::standard();
  mpq_class B = 1, C = 1;
  std::size_t k_max = 2;
  std::size_t bitcap = kDefaultBitcap;
};

/// Throws PreconditionError when f is refuted as gently growing.
PrimePlan plan_theoremA(const GentlyGrowingFn& f, const PlanOptions& opts);
PrimePlan plan_variation1(const GentlyGrowingFn& f, const PlanOptions& opts);
PrimePlan plan_variation2(unsigned h, const PlanOptions& opts);

struct ChainStep {
  std::string text;
  Ordering left_vs_right = Ordering::Indeterminate;  // of the two sides of "lhs <= rhs"
  bool decided() const { return left_vs_right != Ordering::Indeterminate; }
  bool holds() const { return left_vs_right == Ordering::Less || left_vs_right == Ordering::Equal; }
};

struct Variation2Check {
  unsigned h = 1;
  std::vector<ChainStep> steps;  // the equivalence chain, left to right
  ChainStep printed_middle;      // the middle step with (9 mhat)^h, as displayed
  ChainStep window_lower;        // (18 mhat)^h <= log p
  ChainStep upper_use;           // 18 mhat <= f(p)
  bool implication_ok = false;   // window_lower implies upper_use
  bool consistent() const;       // every step decided and all agree, and the implication holds
  nlohmann::ordered_json to_json() const;
};
/// Exact version: log p is the rational L (p = 2^L), mhat a positive integer.
Variation2Check verify_variation2_equivalence(const mpq_class& L, const mpz_class& mhat, unsigned h);
/// True when (18 m)^(h+1) / (9 m) = 2 (18 m)^h holds as a polynomial identity in m.
bool variation2_middle_identity(unsigned h);
/// Same for the middle step as displayed, (9 m)^h in place of 9 m.
bool variation2_printed_identity(unsigned h);

struct ChainCheck {
  std::vector<ChainStep> upper;  // 18 mhat <= f(p), f(p) <= f(n)
  std::vector<ChainStep> lower;  // exponents of n: e1 >= e2 >= e3
  mpq_class c;                   // B / 1944
  bool constant_identity = false;  // 36 * 3 * 18 = 1944 and 18/1944 = 1/108
  bool all_hold() const;
  nlohmann::ordered_json to_json() const;
};
/// Exponent-level check of both chains at n = p^(9 mhat), with r = 2, t = 3.
ChainCheck verify_theoremA_chains(const GentlyGrowingFn& f, const TowerInt& p, const TowerInt& mhat,
                                  const mpq_class& B);

struct LemmaFit {
  mpz_class C;
  mpq_class B;
  std::vector<std::pair<mpz_class, mpq_class>> per_m;  // (m, largest grid B with 2m >= B f(p^m))
};
/// Grid search over m in [1, m_max]: the largest B on the grid 1/2^i
/// (i = 0..20) not refuted for every m >= C, for the smallest C that keeps
/// B positive. Never a proof.
LemmaFit fit_lemma_constants(const GentlyGrowingFn& f, unsigned long m_max, std::size_t bitcap = kDefaultBitcap);

}  // namespace wpa

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "wpa/lattice.hpp"
#include "wpa/nice.hpp"
#include "wpa/tower.hpp"
#include "wpa/wreath.hpp"

namespace wpa {

/// Group data of a sequence prefix together with the degrees
/// mhat[0] = 1, mhat[k] = |Omega_k|^mhat[k-1].
struct GrowthSequence {
  std::vector<GroupFacts> facts;
  std::vector<TowerInt> mhat;

  std::size_t length() const { return facts.size(); }
  std::vector<unsigned long> mus() const;
};

GrowthSequence growth_sequence(const std::vector<std::string>& specs, NiceMode mode,
                               const LatticeOptions& opts = {});
GrowthSequence growth_sequence(std::vector<GroupFacts> facts);

/// Constants that make N.2-N.4 hold on the prefix: r is the largest rank and
/// t the least positive integer with |S_k| <= |E_k|^t and |S_k| <= mu(S_k)^t.
struct PrefixConstants {
  unsigned long r = 0;
  unsigned long t = 0;
};
PrefixConstants prefix_constants(const std::vector<GroupFacts>& facts);

/// Least l >= 0 with n < mu(S_{l+1}); mu[0] is mu(S_1). Throws when the
/// prefix ends first.
std::size_t l_of_n(const std::vector<unsigned long>& mu, const mpz_class& n);

struct UpperBound {
  std::size_t l = 0;
  TowerInt mhat_l;
  TowerInt exponent;  // 3 r t mhat_l
  TowerInt bound;     // n^exponent
};
UpperBound upper_bound_exponent(const GrowthSequence& seq, const mpz_class& n, unsigned long r, unsigned long t);
/// Same bound at an explicitly chosen level l.
UpperBound upper_bound_at_level(const GrowthSequence& seq, std::size_t l, const mpz_class& n, unsigned long r,
                                unsigned long t);

struct LowerPoint {
  std::size_t l = 0;
  TowerInt mhat_l;
  TowerInt n_star;                 // |S_{l+1}|^(3 mhat_l)
  mpq_class coefficient;           // 1/(12t); the exponent is coefficient * mhat_l
  std::optional<mpq_class> exponent;  // mhat_l/(12t) when mhat_l is exact
};
LowerPoint lower_bound_point(const GrowthSequence& seq, std::size_t l, unsigned long t);

struct BaseContainment {
  std::size_t i = 0;
  mpz_class n;
  unsigned long mu_Si = 0;
  std::size_t subgroups_checked = 0;     // subgroups of W_i with index <= n
  bool all_contain_base = false;
  mpz_class s_n_Wi, s_n_Wprev;
  bool ok() const { return all_contain_base && s_n_Wi == s_n_Wprev; }
};
/// Needs W_i materialized (CapExceeded otherwise) and n < mu(S_i).
BaseContainment verify_base_containment(const std::vector<PermGroup>& seq, std::size_t i, const mpz_class& n,
                                        const WreathOptions& wopts = {}, const LatticeOptions& lopts = {});

struct GrowthCertificate {
  std::size_t n = 0;
  std::size_t l = 0;
  bool l_capped = false;  // l(n) lies beyond the truncation; the top level was used
  TowerInt mhat_l;
  TowerInt upper_exponent;
  TowerInt upper_bound;
  mpz_class s_n;
  bool upper_ok = false;
};

struct LowerCheck {
  std::size_t l = 0;
  TowerInt n_star;
  mpq_class exponent;
  mpz_class order_W;           // |W_{l+1}|
  bool order_below_n_star = false;
  mpz_class subgroups;         // s_{n*}(W_{l+1}), the total count when |W_{l+1}| <= n*
  bool lower_ok = false;
};

struct GrowthVerification {
  std::vector<std::string> specs;
  PrefixConstants constants;
  bool constants_from_prefix = false;
  std::vector<GrowthCertificate> upper;
  std::vector<LowerCheck> lower;
  std::vector<BaseContainment> stabilization;
  bool all_ok() const;
  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;
};

/// Exact s_n of the top truncation against the upper bound for n = 1..n_max,
/// the lower bound at every n* whose level is materializable, and the base
/// containment for every level i >= 2 and n < mu(S_i).
GrowthVerification verify_bounds_exact(const std::vector<std::string>& specs, std::size_t n_max,
                                       std::optional<PrefixConstants> constants = std::nullopt,
                                       const WreathOptions& wopts = {}, const LatticeOptions& lopts = {});

}  // namespace wpa

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "wpa/magnitude.hpp"

namespace wpa {

inline constexpr std::size_t kDefaultExactBits = std::size_t{1} << 20;

/// Bit-length threshold above which TowerInt switches to certified mode.
/// Thread-local; override with ScopedExactBits.
std::size_t exact_bits_threshold();

class ScopedExactBits {
 public:
  explicit ScopedExactBits(std::size_t bits);
  ~ScopedExactBits();
  ScopedExactBits(const ScopedExactBits&) = delete;
  ScopedExactBits& operator=(const ScopedExactBits&) = delete;

 private:
  std::size_t saved_;
};

/// A natural number that is either held exactly (bit length at most the
/// exactness threshold) or through a certified Magnitude enclosure. It also
/// keeps the expression it was built from for rendering, e.g. "8^(6)".
class TowerInt {
 public:
  TowerInt() : value_(mpz_class(0)) {}
  TowerInt(long v);  // NOLINT(google-explicit-constructor)
  TowerInt(const mpz_class& v);  // NOLINT(google-explicit-constructor)
  TowerInt(Magnitude m, std::string expression);

  bool is_exact() const { return std::holds_alternative<mpz_class>(value_); }
  const mpz_class& exact() const;
  /// Enclosure of the value; exact values give a depth-0 enclosure.
  Magnitude magnitude() const;
  int depth() const { return is_exact() ? 0 : std::get<Magnitude>(value_).depth(); }

  const std::string& expression() const { return expr_; }
  /// Decimal literal for short exact values; otherwise the expression with
  /// its certified log2 annotation.
  std::string render() const;
  /// Exact decimal digits (throws unless exact).
  std::string decimal() const;

  /// Lower bound on the bit length, as a TowerInt.
  TowerInt bit_length_lower() const;

  static TowerInt pow(const TowerInt& base, const TowerInt& exponent);
  friend TowerInt operator*(const TowerInt& a, const TowerInt& b);
  friend TowerInt operator+(const TowerInt& a, const TowerInt& b);

 private:
  std::variant<mpz_class, Magnitude> value_;
  std::string expr_;
};

/// Sound order: Exact vs Exact is always decided; otherwise Indeterminate
/// when the enclosures overlap.
Ordering compare(const TowerInt& x, const TowerInt& y);

/// compare() that throws Indeterminate instead of returning it.
Ordering compare_strict(const TowerInt& x, const TowerInt& y, const std::string& what);

/// Iterated exponentials: hat[0] = 1, hat[k] = a[k-1]^hat[k-1]. Returns
/// hat[0..n]. Requires every a_k >= 2.
std::vector<TowerInt> tower_prefix(const std::vector<mpz_class>& a, std::size_t n);
TowerInt tower_eval(const std::vector<mpz_class>& a, std::size_t n);

/// Smallest M with C * hat[n-1] <= hat[n] for all n >= M. The scan stops as
/// soon as 2^hat[n-1] >= C * hat[n-1], after which hat[n]/hat[n-1] >= C holds
/// for every later n because a_k >= 2 and 2^x/x is non-decreasing on
/// integers x >= 1.
struct MLevel {
  std::size_t M = 0;
  std::size_t persistence_level = 0;  // level at which persistence was certified
};
MLevel find_M(const std::vector<mpz_class>& a, const mpq_class& C);

enum class CheckStatus { Exact, Certified, Undecided };
const char* to_string(CheckStatus s);

struct Lemma31Level {
  std::size_t n = 0;
  bool partial_sum_ok = false;  // sum_{j=M(2)}^n hat_j <= 2 hat_n
  bool total_sum_ok = false;    // sum_{j=0}^n hat_j <= 3 hat_n (only for n >= N)
  bool total_checked = false;
  CheckStatus status = CheckStatus::Exact;
};

struct Lemma31Certificate {
  std::size_t M2 = 0;
  std::size_t M_of_M2 = 0;
  std::size_t N = 0;
  std::size_t exact_reach = 0;  // largest level held exactly
  bool partial = false;         // some requested level was not checked exactly
  std::vector<Lemma31Level> levels;
  bool all_hold() const;
};

/// Computes N = max{M(2)+1, M(M(2))} and checks both partial-sum bounds for
/// every level up to n_max. Exact where the values are exact; beyond, the
/// dominant-term inequalities (n-M)*hat[n-1] <= hat[n] and
/// n*hat[n-1] <= 2*hat[n] are certified instead.
Lemma31Certificate verify_lemma31(const std::vector<mpz_class>& a, std::size_t n_max);

}  // namespace wpa

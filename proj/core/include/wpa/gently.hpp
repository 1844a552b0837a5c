#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "wpa/magnitude.hpp"
#include "wpa/tower.hpp"

namespace wpa {

/// Functions n -> alpha * (lg^(j) n)^beta (lg = log base 2, j >= 1) and
/// pointwise max / sum of them. Negative inner values are clamped to 0.
/// Text grammar:
///   log2 | loglog2 | logloglog2     alpha = beta = 1, j = 1, 2, 3
///   root:h                          (lg n)^(1/h)
///   term(alpha, j, beta)            rationals alpha, beta > 0, integer j >= 1
///   const:c                         the constant c (never gently growing)
///   max(f, g, ...) | sum(f, g, ...)
class GentlyGrowingFn {
 public:
  static GentlyGrowingFn parse(std::string_view text);
  static GentlyGrowingFn term(const mpq_class& alpha, unsigned j, const mpq_class& beta);

  const std::string& text() const { return text_; }

  /// Certified enclosure of f(x).
  Magnitude eval(const Magnitude& x) const;
  Magnitude eval(const TowerInt& x) const { return eval(x.magnitude()); }
  Magnitude eval(const mpz_class& x) const { return eval(Magnitude::of(x)); }
  /// Lower enclosure endpoint rounded down to a multiple of 2^-32.
  mpq_class eval_floor(const mpz_class& x) const;

  /// A lower bound L on the x with f(x) >= T: every such x has x >= L.
  /// Returns +inf (at depth 0) when no x qualifies.
  Magnitude inverse_lower(const Magnitude& T) const;

  bool is_constant() const;

  /// Claimed constants of the gently growing condition f(x^lg x) <= A f(x), x >= N.
  mpq_class A = 2;
  mpz_class N = 4;

 struct Node;  // expression tree, defined in the source file

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

struct GentlyReport {
  bool positive = true;
  bool monotone = true;
  bool unbounded_trend = true;
  bool inequality = true;       // f(x^lg x) <= A f(x) at all sampled x >= N
  std::size_t samples = 0;
  std::size_t undecided = 0;    // samples whose enclosures overlapped
  std::string witness;          // first refuting sample
  bool refuted() const { return !positive || !monotone || !unbounded_trend || !inequality; }
  nlohmann::ordered_json to_json() const;
};

/// Samples x = 2^k and 3 * 2^k for k in [k_lo, k_hi]. A failure is reported
/// only when the enclosures decide it; overlaps count as undecided.
GentlyReport check_gently_growing(const GentlyGrowingFn& f, unsigned k_lo = 1, unsigned k_hi = 64);

}  // namespace wpa

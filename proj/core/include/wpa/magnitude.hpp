#pragma once

#include <string>

#include <gmpxx.h>

#include "wpa/real.hpp"

namespace wpa {

enum class Ordering { Less, Equal, Greater, Indeterminate };

const char* to_string(Ordering o);

/// A certified enclosure of a real value V through its iterated base-2
/// logarithm: lg^(depth)(V) lies in [lo, hi]. Here lg(x) = log2(x) for
/// x > 0 and lg(x) = -inf otherwise, which keeps lg^(d) non-decreasing, so
/// disjoint enclosures at a common depth order the underlying values.
///
/// Depth 0 is a plain real interval and may contain negative numbers. At
/// depth >= 1 the value is positive. Every operation rounds outward and
/// never narrows an enclosure below what the inputs justify.
class Magnitude {
 public:
  Magnitude();  // the point 0
  Magnitude(int depth, Real lo, Real hi);

  static Magnitude of(const mpz_class& v);
  static Magnitude of(const mpq_class& v);
  static Magnitude of(long v);
  static Magnitude interval(const Real& lo, const Real& hi) { return {0, lo, hi}; }

  int depth() const { return depth_; }
  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  bool is_point() const { return cmp(lo_, hi_) == 0; }

  /// Same value re-enclosed at depth d (lifting applies lg, lowering exp2).
  Magnitude at_depth(int d) const;
  Real lower_value() const { return at_depth(0).lo(); }
  Real upper_value() const { return at_depth(0).hi(); }

  /// Enclosure of lg(V).
  Magnitude log2() const;
  /// Enclosure of 2^V: the same interval one level deeper.
  Magnitude exp2() const { return {depth_ + 1, lo_, hi_}; }

  /// Text such as "lg^2 in [6.5536e4, 6.5536e4]".
  std::string describe(int digits = 12) const;

 private:
  int depth_ = 0;
  Real lo_;
  Real hi_;
};

/// V + c for c in [clo, chi].
Magnitude shift(const Magnitude& x, const Real& clo, const Real& chi);
/// V * f for f in [flo, fhi], flo >= 0.
Magnitude scale(const Magnitude& x, const Real& flo, const Real& fhi);

/// Sum of non-negative values. Deep operands use max <= a+b <= 2*max.
Magnitude add(const Magnitude& a, const Magnitude& b);
Magnitude mul(const Magnitude& a, const Magnitude& b);
/// base^exponent for base >= 0, exponent >= 0.
Magnitude pow(const Magnitude& base, const Magnitude& exponent);
Magnitude max(const Magnitude& a, const Magnitude& b);
Magnitude min(const Magnitude& a, const Magnitude& b);

/// Sound comparison: Less/Greater only for disjoint enclosures, Equal only
/// for identical finite point enclosures at some common depth.
Ordering compare(const Magnitude& a, const Magnitude& b);

}  // namespace wpa

#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace wpa {

enum class Round { Down, Up };

/// RAII wrapper over an MPFR number with directed rounding on every
/// operation. Values are dyadic rationals, so bounds produced with
/// Round::Down / Round::Up are exact rational bounds. The exponent range is
/// widened to the MPFR maximum on first use.
class Real {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Real();
  explicit Real(long v);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_mpz(const mpz_class& v, Round r);
  static Real from_mpq(const mpq_class& v, Round r);
  static Real from_double(double v);  // exact
  static Real pos_inf();
  static Real neg_inf();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_pos_inf() const { return mpfr_inf_p(v_) && mpfr_sgn(v_) > 0; }
  bool is_neg_inf() const { return mpfr_inf_p(v_) && mpfr_sgn(v_) < 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Floor / ceiling as integers; the value must be finite.
  mpz_class floor() const;
  mpz_class ceil() const;

  /// Decimal rendering with `digits` significant digits, rounded in `r`.
  std::string to_string(int digits, Round r) const;

 private:
  mpfr_t v_;
};

int cmp(const Real& a, const Real& b);
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }

const Real& rmin(const Real& a, const Real& b);
const Real& rmax(const Real& a, const Real& b);

// A NaN outcome is replaced by -inf (Down) or +inf (Up), which keeps every
// bound sound.
Real add(const Real& a, const Real& b, Round r);
Real sub(const Real& a, const Real& b, Round r);
Real mul(const Real& a, const Real& b, Round r);
Real div(const Real& a, const Real& b, Round r);
/// log2 with log2(x) = -inf for x <= 0.
Real log2(const Real& a, Round r);
Real exp2(const Real& a, Round r);
/// a^b for a >= 0.
Real pow(const Real& a, const Real& b, Round r);
Real root(const Real& a, unsigned long k, Round r);

}  // namespace wpa

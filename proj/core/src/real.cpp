#include "wpa/real.hpp"

#include <cstdlib>
#include <sstream>

namespace wpa {
namespace {

void widen_exponent_range() {
  static const bool done = [] {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    return true;
  }();
  (void)done;
}

mpfr_rnd_t mode(Round r) { return r == Round::Down ? MPFR_RNDD : MPFR_RNDU; }

Real guard(Real v, Round r) {
  if (mpfr_nan_p(v.get())) return r == Round::Down ? Real::neg_inf() : Real::pos_inf();
  return v;
}

}  // namespace

Real::Real() {
  widen_exponent_range();
  mpfr_init2(v_, kPrecision);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v) {
  widen_exponent_range();
  mpfr_init2(v_, kPrecision);
  mpfr_set_si(v_, v, MPFR_RNDN);  // exact at this precision
}

Real::Real(const Real& other) {
  mpfr_init2(v_, kPrecision);
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, kPrecision);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_mpz(const mpz_class& v, Round r) {
  Real out;
  mpfr_set_z(out.v_, v.get_mpz_t(), mode(r));
  return out;
}

Real Real::from_mpq(const mpq_class& v, Round r) {
  Real out;
  mpfr_set_q(out.v_, v.get_mpq_t(), mode(r));
  return out;
}

Real Real::from_double(double v) {
  Real out;
  mpfr_set_d(out.v_, v, MPFR_RNDN);
  return out;
}

Real Real::pos_inf() {
  Real out;
  mpfr_set_inf(out.v_, 1);
  return out;
}

Real Real::neg_inf() {
  Real out;
  mpfr_set_inf(out.v_, -1);
  return out;
}

mpz_class Real::floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

mpz_class Real::ceil() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
  return z;
}

std::string Real::to_string(int digits, Round r) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  if (mpfr_integer_p(v_) && mpfr_get_exp(v_) <= 60) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z.get_str();
  }
  mpfr_exp_t exp = 0;
  char* s = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), v_, mode(r));
  std::string m(s);
  mpfr_free_str(s);
  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  std::ostringstream os;
  os << sign << m[0];
  if (m.size() > 1) os << '.' << m.substr(1);
  os << 'e' << (exp - 1);
  return os.str();
}

int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

const Real& rmin(const Real& a, const Real& b) { return cmp(a, b) <= 0 ? a : b; }
const Real& rmax(const Real& a, const Real& b) { return cmp(a, b) >= 0 ? a : b; }

Real add(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_add(out.get(), a.get(), b.get(), mode(r));
  return guard(std::move(out), r);
}

Real sub(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_sub(out.get(), a.get(), b.get(), mode(r));
  return guard(std::move(out), r);
}

Real mul(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_mul(out.get(), a.get(), b.get(), mode(r));
  return guard(std::move(out), r);
}

Real div(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_div(out.get(), a.get(), b.get(), mode(r));
  return guard(std::move(out), r);
}

Real log2(const Real& a, Round r) {
  if (a.sign() <= 0) return Real::neg_inf();
  Real out;
  mpfr_log2(out.get(), a.get(), mode(r));
  return guard(std::move(out), r);
}

Real exp2(const Real& a, Round r) {
  Real out;
  mpfr_exp2(out.get(), a.get(), mode(r));
  return guard(std::move(out), r);
}

Real pow(const Real& a, const Real& b, Round r) {
  if (a.sign() < 0) return r == Round::Down ? Real::neg_inf() : Real::pos_inf();
  Real out;
  mpfr_pow(out.get(), a.get(), b.get(), mode(r));
  return guard(std::move(out), r);
}

Real root(const Real& a, unsigned long k, Round r) {
  if (a.sign() < 0) return r == Round::Down ? Real::neg_inf() : Real::pos_inf();
  Real out;
  mpfr_rootn_ui(out.get(), a.get(), k, mode(r));
  return guard(std::move(out), r);
}

}  // namespace wpa

#include "wpa/magnitude.hpp"

#include <sstream>

namespace wpa {

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
    case Ordering::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Magnitude::Magnitude() = default;

Magnitude::Magnitude(int depth, Real lo, Real hi) : depth_(depth), lo_(std::move(lo)), hi_(std::move(hi)) {}

Magnitude Magnitude::of(const mpz_class& v) {
  return {0, Real::from_mpz(v, Round::Down), Real::from_mpz(v, Round::Up)};
}

Magnitude Magnitude::of(const mpq_class& v) {
  return {0, Real::from_mpq(v, Round::Down), Real::from_mpq(v, Round::Up)};
}

Magnitude Magnitude::of(long v) { return {0, Real(v), Real(v)}; }

Magnitude Magnitude::at_depth(int d) const {
  Magnitude m = *this;
  while (m.depth_ < d) {
    m.lo_ = wpa::log2(m.lo_, Round::Down);
    m.hi_ = wpa::log2(m.hi_, Round::Up);
    ++m.depth_;
  }
  while (m.depth_ > d) {
    m.lo_ = wpa::exp2(m.lo_, Round::Down);
    m.hi_ = wpa::exp2(m.hi_, Round::Up);
    --m.depth_;
  }
  return m;
}

Magnitude Magnitude::log2() const {
  if (depth_ >= 1) return {depth_ - 1, lo_, hi_};
  return {0, wpa::log2(lo_, Round::Down), wpa::log2(hi_, Round::Up)};
}

std::string Magnitude::describe(int digits) const {
  std::ostringstream os;
  if (depth_ == 0)
    os << "in";
  else if (depth_ == 1)
    os << "log2 in";
  else
    os << "log2^" << depth_ << " in";
  os << " [" << lo_.to_string(digits, Round::Down) << ", " << hi_.to_string(digits, Round::Up) << "]";
  return os.str();
}

Magnitude shift(const Magnitude& x, const Real& clo, const Real& chi) {
  if (x.depth() == 0)
    return Magnitude::interval(add(x.lo(), clo, Round::Down), add(x.hi(), chi, Round::Up));

  const Real xlo = x.lower_value();
  const Real xhi = x.upper_value();
  const Real one(1);
  // V + c = V * (1 + c/V); enclose the factor over V in [xlo, xhi].
  Real flo, fhi;
  if (clo.sign() >= 0)
    flo = xhi.is_pos_inf() ? one : add(one, div(clo, xhi, Round::Down), Round::Down);
  else
    flo = xlo.sign() > 0 ? add(one, div(clo, xlo, Round::Down), Round::Down) : Real::neg_inf();
  if (chi.sign() >= 0)
    fhi = xlo.sign() > 0 ? add(one, div(chi, xlo, Round::Up), Round::Up) : Real::pos_inf();
  else
    fhi = xhi.is_pos_inf() ? one : add(one, div(chi, xhi, Round::Up), Round::Up);

  if (flo.sign() > 0 && fhi.is_finite()) return scale(x, flo, fhi);
  return Magnitude::interval(add(xlo, clo, Round::Down), add(xhi, chi, Round::Up));
}

Magnitude scale(const Magnitude& x, const Real& flo, const Real& fhi) {
  if (x.depth() == 0) {
    Real lo = x.lo().sign() >= 0 ? mul(x.lo(), flo, Round::Down) : mul(x.lo(), fhi, Round::Down);
    Real hi = x.hi().sign() >= 0 ? mul(x.hi(), fhi, Round::Up) : mul(x.hi(), flo, Round::Up);
    if (flo.sign() == 0 && x.lo().sign() >= 0) lo = Real(0);
    return Magnitude::interval(lo, hi);
  }
  if (fhi.sign() <= 0) return Magnitude::of(0L);
  if (flo.sign() <= 0) {
    // Factor may vanish: keep only the upper side.
    Magnitude up = scale(x, fhi, fhi).at_depth(x.depth());
    return {x.depth(), Real::neg_inf(), up.hi()};
  }
  Magnitude lg_x(x.depth() - 1, x.lo(), x.hi());
  Magnitude lg_result = shift(lg_x, log2(flo, Round::Down), log2(fhi, Round::Up));
  return lg_result.exp2();
}

namespace {

Magnitude interval_product(const Magnitude& a, const Magnitude& b) {
  Real c[4] = {mul(a.lo(), b.lo(), Round::Down), mul(a.lo(), b.hi(), Round::Down),
               mul(a.hi(), b.lo(), Round::Down), mul(a.hi(), b.hi(), Round::Down)};
  Real d[4] = {mul(a.lo(), b.lo(), Round::Up), mul(a.lo(), b.hi(), Round::Up),
               mul(a.hi(), b.lo(), Round::Up), mul(a.hi(), b.hi(), Round::Up)};
  Real lo = c[0], hi = d[0];
  for (int i = 1; i < 4; ++i) {
    lo = rmin(lo, c[i]);
    hi = rmax(hi, d[i]);
  }
  return Magnitude::interval(lo, hi);
}

bool finite_depth0(const Magnitude& m) { return m.depth() == 0 && m.hi().is_finite() && m.lo().is_finite(); }

}  // namespace

Magnitude add(const Magnitude& a, const Magnitude& b) {
  if (a.depth() == 0 && b.depth() == 0)
    return Magnitude::interval(add(a.lo(), b.lo(), Round::Down), add(a.hi(), b.hi(), Round::Up));
  if (finite_depth0(b)) return shift(a, b.lo(), b.hi());
  if (finite_depth0(a)) return shift(b, a.lo(), a.hi());

  const int d = std::max(a.depth(), b.depth());
  Magnitude x = a.at_depth(d), y = b.at_depth(d);
  Real lo;
  if (a.lower_value().sign() >= 0 && b.lower_value().sign() >= 0) {
    lo = rmax(x.lo(), y.lo());
  } else {
    Magnitude s = Magnitude::interval(add(a.lower_value(), b.lower_value(), Round::Down), Real(0));
    lo = s.at_depth(d).lo();
  }
  const Real& top = rmax(x.hi(), y.hi());
  Magnitude doubled = scale(Magnitude(d, top, top), Real(2), Real(2)).at_depth(d);
  return {d, lo, doubled.hi()};
}

Magnitude mul(const Magnitude& a, const Magnitude& b) {
  if (a.depth() == 0 && b.depth() == 0) return interval_product(a, b);
  if (finite_depth0(b) && b.lo().sign() >= 0) return scale(a, b.lo(), b.hi());
  if (finite_depth0(a) && a.lo().sign() >= 0) return scale(b, a.lo(), a.hi());
  // Both positive here (depth >= 1, or a depth-0 enclosure with an infinite end).
  if (a.lower_value().sign() <= 0 || b.lower_value().sign() <= 0) {
    Real hi = mul(a.upper_value(), b.upper_value(), Round::Up);
    return Magnitude::interval(Real(0), hi);
  }
  return add(a.log2(), b.log2()).exp2();
}

Magnitude pow(const Magnitude& base, const Magnitude& exponent) {
  const Real one(1);
  if (base.lower_value() >= one) {
    // lg(base^e) = e * lg(base), with lg(base) >= 0.
    return mul(exponent, base.log2()).exp2();
  }
  if (finite_depth0(base) && finite_depth0(exponent)) {
    Real blo = rmax(base.lo(), Real(0));
    Real elo = rmax(exponent.lo(), Real(0));
    Real c[4] = {pow(blo, elo, Round::Down), pow(blo, exponent.hi(), Round::Down),
                 pow(base.hi(), elo, Round::Down), pow(base.hi(), exponent.hi(), Round::Down)};
    Real d[4] = {pow(blo, elo, Round::Up), pow(blo, exponent.hi(), Round::Up),
                 pow(base.hi(), elo, Round::Up), pow(base.hi(), exponent.hi(), Round::Up)};
    Real lo = c[0], hi = d[0];
    for (int i = 1; i < 4; ++i) {
      lo = rmin(lo, c[i]);
      hi = rmax(hi, d[i]);
    }
    return Magnitude::interval(lo, hi);
  }
  // Base straddles 1 with a huge exponent: only 0 <= V <= max(1, base)^exponent.
  Magnitude capped(base.depth(), base.lo(), base.hi());
  Magnitude top = pow(max(capped, Magnitude::of(1L)), exponent);
  return {top.depth(), top.depth() == 0 ? Real(0) : Real::neg_inf(), top.hi()};
}

Magnitude max(const Magnitude& a, const Magnitude& b) {
  const int d = std::max(a.depth(), b.depth());
  Magnitude x = a.at_depth(d), y = b.at_depth(d);
  return {d, rmax(x.lo(), y.lo()), rmax(x.hi(), y.hi())};
}

Magnitude min(const Magnitude& a, const Magnitude& b) {
  const int d = std::max(a.depth(), b.depth());
  Magnitude x = a.at_depth(d), y = b.at_depth(d);
  return {d, rmin(x.lo(), y.lo()), rmin(x.hi(), y.hi())};
}

Ordering compare(const Magnitude& a, const Magnitude& b) {
  const int from = std::min(a.depth(), b.depth());
  const int to = std::max(a.depth(), b.depth());
  for (int d = from; d <= to; ++d) {
    Magnitude x = a.at_depth(d), y = b.at_depth(d);
    // identical finite points at a common depth are the same value
    if (x.is_point() && y.is_point() && x.lo().is_finite() && cmp(x.lo(), y.lo()) == 0) return Ordering::Equal;
    if (cmp(x.hi(), y.lo()) < 0) return Ordering::Less;
    if (cmp(x.lo(), y.hi()) > 0) return Ordering::Greater;
  }
  return Ordering::Indeterminate;
}

}  // namespace wpa

#ifndef ORBITSCALE_DYADIC_HPP
#define ORBITSCALE_DYADIC_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace orbitscale {

// Global precision cap in bits. Defaults to 4096; the environment variable
// ORBITSCALE_PREC_CAP overrides it. Refinement loops double the working
// precision until a decision is certified or the cap is hit, in which case
// PrecisionCapExceeded is thrown. Guesses are never silent.
long prec_cap();
void set_prec_cap(long bits);
inline constexpr long kPrecStart = 128;

// Arbitrary-precision dyadic rational m * 2^e, carried by an mpfr_t.
class Dyadic {
 public:
  explicit Dyadic(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Dyadic(const Dyadic& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Dyadic(Dyadic&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Dyadic& operator=(const Dyadic& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Dyadic& operator=(Dyadic&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Dyadic() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static Dyadic from_long(long n, mpfr_prec_t prec = 64);
  // Rounded conversion from an exact rational, in the given direction.
  static Dyadic from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd);
  // Exact hex-float round trip (used by the JSON serializers).
  static Dyadic from_hex(const std::string& s);
  std::string to_hex() const;
  // Decimal rendering, approximate; for human-readable report fields only.
  std::string to_decimal(int digits = 20) const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }

 private:
  mpfr_t v_;
};

int cmp(const Dyadic& a, const Dyadic& b);
inline bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
inline bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
inline bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }

// Closed interval [lo, hi] of dyadics enclosing one real number. All
// arithmetic rounds lo down and hi up, so enclosures are preserved.
struct Interval {
  Dyadic lo, hi;

  Interval() = default;
  Interval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {}

  static Interval point_long(long n, mpfr_prec_t prec = 64);
  static Interval from_mpq(const mpq_class& q, mpfr_prec_t prec);

  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  // Certified sign: -1 or +1 when zero is excluded, 0 when [lo,hi] = [0,0],
  // and no value otherwise (undecided at this width).
  // width() is an upper bound on hi - lo.
  Dyadic width() const;
  bool width_below(long bits) const;  // width <= 2^(1-bits)?
  std::string str() const;
};

Interval iadd(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval isub(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval imul(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval isqr(const Interval& a, mpfr_prec_t prec);  // tight square
Interval idiv(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval ineg(const Interval& a);
Interval iunion(const Interval& a, const Interval& b);
Interval isqrt_mpq(const mpq_class& q, mpfr_prec_t prec);
Interval ilog(const Interval& a, mpfr_prec_t prec);
Interval itanh(const Interval& a, mpfr_prec_t prec);
Interval imul_mpq(const mpq_class& q, const Interval& a, mpfr_prec_t prec);

// a certainly < b / a certainly <= b (certified endpoint comparisons).
inline bool certainly_less(const Interval& a, const Interval& b) {
  return cmp(a.hi, b.lo) < 0;
}
inline bool certainly_leq(const Interval& a, const Interval& b) {
  return cmp(a.hi, b.lo) <= 0;
}
inline bool disjoint(const Interval& a, const Interval& b) {
  return cmp(a.hi, b.lo) < 0 || cmp(b.hi, a.lo) < 0;
}
inline bool encloses(const Interval& outer, const Interval& inner) {
  return cmp(outer.lo, inner.lo) <= 0 && cmp(inner.hi, outer.hi) <= 0;
}

}  // namespace orbitscale

#endif

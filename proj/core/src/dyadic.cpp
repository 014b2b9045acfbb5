#include "orbitscale/dyadic.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "orbitscale/errors.hpp"

namespace orbitscale {

namespace {
std::atomic<long> g_prec_cap{0};

long read_env_cap() {
  const char* s = std::getenv("ORBITSCALE_PREC_CAP");
  if (s != nullptr) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v >= 64) return v;
  }
  return 4096;
}
}  // namespace

long prec_cap() {
  long v = g_prec_cap.load(std::memory_order_relaxed);
  if (v == 0) {
    v = read_env_cap();
    g_prec_cap.store(v, std::memory_order_relaxed);
  }
  return v;
}

void set_prec_cap(long bits) { g_prec_cap.store(bits, std::memory_order_relaxed); }

Dyadic Dyadic::from_long(long n, mpfr_prec_t prec) {
  Dyadic d(prec);
  mpfr_set_si(d.v_, n, MPFR_RNDN);
  return d;
}

Dyadic Dyadic::from_mpq(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Dyadic d(prec);
  mpfr_set_q(d.v_, q.get_mpq_t(), rnd);
  return d;
}

Dyadic Dyadic::from_hex(const std::string& s) {
  // Width chosen so the parse is exact: 4 bits per hex digit plus slack.
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(4 * s.size() + 64);
  Dyadic d(prec);
  if (mpfr_set_str(d.v_, s.c_str(), 16, MPFR_RNDN) != 0) {
    throw InvalidInput("not a hex-float dyadic: " + s);
  }
  return d;
}

std::string Dyadic::to_hex() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string Dyadic::to_decimal(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

int cmp(const Dyadic& a, const Dyadic& b) { return mpfr_cmp(a.raw(), b.raw()); }

Interval Interval::point_long(long n, mpfr_prec_t prec) {
  return Interval(Dyadic::from_long(n, prec), Dyadic::from_long(n, prec));
}

Interval Interval::from_mpq(const mpq_class& q, mpfr_prec_t prec) {
  return Interval(Dyadic::from_mpq(q, prec, MPFR_RNDD),
                  Dyadic::from_mpq(q, prec, MPFR_RNDU));
}

Dyadic Interval::width() const {
  Dyadic w(std::max(lo.prec(), hi.prec()));
  mpfr_sub(w.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
  return w;
}

bool Interval::width_below(long bits) const {
  Dyadic w = width();
  if (w.sign() < 0) throw Error("interval with hi < lo");
  if (w.is_zero()) return true;
  // width <= 2^(1-bits)
  return mpfr_cmp_ui_2exp(w.raw(), 1, static_cast<mpfr_exp_t>(1 - bits)) <= 0;
}

std::string Interval::str() const {
  return "[" + lo.to_decimal() + ", " + hi.to_decimal() + "]";
}

Interval iadd(const Interval& a, const Interval& b, mpfr_prec_t prec) {
  Interval r{Dyadic(prec), Dyadic(prec)};
  mpfr_add(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
  mpfr_add(r.hi.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
  return r;
}

Interval isub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
  Interval r{Dyadic(prec), Dyadic(prec)};
  mpfr_sub(r.lo.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDD);
  mpfr_sub(r.hi.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDU);
  return r;
}

Interval ineg(const Interval& a) {
  Interval r(Dyadic(a.hi.prec()), Dyadic(a.lo.prec()));
  mpfr_neg(r.lo.raw(), a.hi.raw(), MPFR_RNDD);
  mpfr_neg(r.hi.raw(), a.lo.raw(), MPFR_RNDU);
  return r;
}

Interval iunion(const Interval& a, const Interval& b) {
  Interval r = a;
  if (cmp(b.lo, r.lo) < 0) r.lo = b.lo;
  if (cmp(r.hi, b.hi) < 0) r.hi = b.hi;
  return r;
}

Interval imul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
  // min/max over the four endpoint products, rounded outward.
  mpfr_srcptr as[2] = {a.lo.raw(), a.hi.raw()};
  mpfr_srcptr bs[2] = {b.lo.raw(), b.hi.raw()};
  Interval r{Dyadic(prec), Dyadic(prec)};
  Dyadic t(prec);
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t.raw(), as[i], bs[j], MPFR_RNDD);
      if (first || cmp(t, r.lo) < 0) r.lo = t;
      mpfr_mul(t.raw(), as[i], bs[j], MPFR_RNDU);
      if (first || cmp(r.hi, t) < 0) r.hi = t;
      first = false;
    }
  }
  return r;
}

Interval isqr(const Interval& a, mpfr_prec_t prec) {
  Interval r{Dyadic(prec), Dyadic(prec)};
  if (a.lo.sign() >= 0) {
    mpfr_sqr(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
    mpfr_sqr(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
  } else if (a.hi.sign() <= 0) {
    mpfr_sqr(r.lo.raw(), a.hi.raw(), MPFR_RNDD);
    mpfr_sqr(r.hi.raw(), a.lo.raw(), MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo.raw(), 1);
    Dyadic t(prec);
    mpfr_sqr(t.raw(), a.lo.raw(), MPFR_RNDU);
    mpfr_sqr(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
    if (cmp(r.hi, t) < 0) r.hi = t;
  }
  return r;
}

Interval idiv(const Interval& a, const Interval& b, mpfr_prec_t prec) {
  if (b.contains_zero()) throw Error("interval division by enclosure of zero");
  mpfr_srcptr as[2] = {a.lo.raw(), a.hi.raw()};
  mpfr_srcptr bs[2] = {b.lo.raw(), b.hi.raw()};
  Interval r{Dyadic(prec), Dyadic(prec)};
  Dyadic t(prec);
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t.raw(), as[i], bs[j], MPFR_RNDD);
      if (first || cmp(t, r.lo) < 0) r.lo = t;
      mpfr_div(t.raw(), as[i], bs[j], MPFR_RNDU);
      if (first || cmp(r.hi, t) < 0) r.hi = t;
      first = false;
    }
  }
  return r;
}

Interval imul_mpq(const mpq_class& q, const Interval& a, mpfr_prec_t prec) {
  return imul(Interval::from_mpq(q, prec), a, prec);
}

Interval isqrt_mpq(const mpq_class& q, mpfr_prec_t prec) {
  if (sgn(q) < 0) throw InvalidInput("sqrt of negative rational");
  Interval v = Interval::from_mpq(q, prec + 8);
  Interval r{Dyadic(prec), Dyadic(prec)};
  mpfr_sqrt(r.lo.raw(), v.lo.raw(), MPFR_RNDD);
  mpfr_sqrt(r.hi.raw(), v.hi.raw(), MPFR_RNDU);
  return r;
}

Interval ilog(const Interval& a, mpfr_prec_t prec) {
  if (a.lo.sign() <= 0) throw Error("log of enclosure touching zero");
  Interval r{Dyadic(prec), Dyadic(prec)};
  mpfr_log(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
  mpfr_log(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
  return r;
}

Interval itanh(const Interval& a, mpfr_prec_t prec) {
  Interval r{Dyadic(prec), Dyadic(prec)};
  mpfr_tanh(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
  mpfr_tanh(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
  return r;
}

}  // namespace orbitscale

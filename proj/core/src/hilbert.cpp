#include "orbitscale/hilbert.hpp"

#include <algorithm>

#include "orbitscale/errors.hpp"

namespace orbitscale {

Interval log_ratio(const mpq_class& ratio, long bits) {
  if (ratio == 1) return Interval::point_long(0, 64);
  mpfr_prec_t p = static_cast<mpfr_prec_t>(std::max(64L, bits));
  return ilog(Interval::from_mpq(ratio, p), p);
}

namespace {

// r(x, y) = (max_i y_i/x_i) * (max_i x_i/y_i) >= 1, exact.
mpq_class theta_ratio(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("theta arguments");
  if (x.empty()) throw DimensionMismatch("theta on empty vectors");
  for (size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) <= 0 || sgn(y[i]) <= 0)
      throw NonPositiveInput("theta needs strictly positive vectors");
  mpq_class up = y[0] / x[0], down = up;
  for (size_t i = 1; i < x.size(); ++i) {
    mpq_class q = y[i] / x[i];
    if (q > up) up = q;
    if (q < down) down = q;
  }
  return up / down;
}

ProjectiveValue from_ratio(mpq_class r) {
  ProjectiveValue v;
  v.ratio = std::move(r);
  v.zero = v.ratio == 1;
  v.enclosure = log_ratio(v.ratio, kPrecStart);
  return v;
}

}  // namespace

ProjectiveValue theta(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
  return from_ratio(theta_ratio(x, y));
}

ProjectiveValue proj_diameter(const MatZ& a) {
  if (a.rows() == 0 || a.cols() == 0) throw DimensionMismatch("empty matrix");
  if (!strictly_positive(a)) throw NonPositiveMatrix("proj_diameter needs a strictly positive matrix");
  std::vector<std::vector<mpq_class>> cols(a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    cols[j].resize(a.rows());
    for (int i = 0; i < a.rows(); ++i) cols[j][i] = mpq_class(a(i, j));
  }
  mpq_class best = 1;
  for (int i = 0; i < a.cols(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) {
      mpq_class r = theta_ratio(cols[i], cols[j]);
      if (r > best) best = r;
    }
  return from_ratio(best);
}

bool birkhoff_pass(const MatZ& a, const MatZ& a2, Interval* lhs_out, Interval* rhs_out) {
  if (a.cols() != a2.rows()) throw DimensionMismatch("birkhoff factors not composable");
  if (!strictly_positive(a)) throw NonPositiveMatrix("birkhoff bound needs strictly positive A");
  if (!strictly_positive(a2)) throw NonPositiveMatrix("birkhoff bound needs strictly positive A'");
  ProjectiveValue lhs = proj_diameter(a * a2);
  ProjectiveValue da = proj_diameter(a);
  ProjectiveValue da2 = proj_diameter(a2);
  if (lhs.zero) return true;              // lhs = 0
  if (da2.zero || da.zero) return false;  // rhs = 0 < lhs (cannot occur for positive pairs)
  for (long bits = kPrecStart;; bits *= 2) {
    if (bits > prec_cap())
      throw PrecisionCapExceeded("birkhoff comparison undecided at the precision cap");
    mpfr_prec_t p = static_cast<mpfr_prec_t>(bits);
    Interval L = log_ratio(lhs.ratio, bits);
    Interval quarter = imul_mpq(mpq_class(1, 4), log_ratio(da.ratio, bits), p);
    Interval R = imul(itanh(quarter, p), log_ratio(da2.ratio, bits), p);
    if (lhs_out) *lhs_out = L;
    if (rhs_out) *rhs_out = R;
    if (certainly_leq(L, R)) return true;
    if (certainly_less(R, L)) return false;
  }
}

ContractionReport check_contraction(const MatZ& a, const MatZ& a2) {
  if (a.cols() != a2.rows()) throw DimensionMismatch("factors not composable");
  ContractionReport rep;
  MatZ prod = a * a2;
  rep.product_strictly_positive = strictly_positive(prod);
  if (!rep.product_strictly_positive) return rep;

  rep.diameter = proj_diameter(prod);
  if (a.rows() == a.cols() && a2.rows() == a2.cols() && a.rows() == a2.rows()) {
    rep.d = a.rows();
    rep.bound_ratio = mpz_class(rep.d) * mpz_class(rep.d);
    // D(AA') <= 2 ln d  <=>  ratio(AA') <= d^2, exact on rationals.
    rep.bound_pass = rep.diameter.ratio <= rep.bound_ratio;
  }
  if (strictly_positive(a) && strictly_positive(a2)) {
    Interval lhs, rhs;
    rep.birkhoff_pass = birkhoff_pass(a, a2, &lhs, &rhs);
    rep.birkhoff_lhs = lhs;
    rep.birkhoff_rhs = rhs;
  }
  return rep;
}

}  // namespace orbitscale

#include "orbitscale/exact.hpp"

#include <algorithm>
#include <sstream>

#include "orbitscale/errors.hpp"

namespace orbitscale {

// ---------------------------------------------------------------- constants

SymbolicConstant SymbolicConstant::rational(mpq_class q) {
  q.canonicalize();
  SymbolicConstant c;
  c.kind_ = Kind::Rational;
  c.value_ = std::move(q);
  return c;
}

SymbolicConstant SymbolicConstant::sqrt(mpq_class radicand) {
  radicand.canonicalize();
  if (sgn(radicand) <= 0) throw InvalidInput("sqrt constant needs a positive radicand");
  SymbolicConstant c;
  c.kind_ = Kind::Sqrt;
  c.value_ = std::move(radicand);
  return c;
}

SymbolicConstant SymbolicConstant::digit_oracle(std::string name, OracleFn fn) {
  SymbolicConstant c;
  c.kind_ = Kind::Oracle;
  c.name_ = std::move(name);
  c.oracle_ = std::move(fn);
  return c;
}

Interval SymbolicConstant::enclosure(long bits) const {
  if (kind_ == Kind::Oracle) {
    Interval r = oracle_(bits);
    if (!r.width_below(bits)) throw Error("oracle '" + name_ + "' broke its width contract");
    return r;
  }
  for (mpfr_prec_t p = static_cast<mpfr_prec_t>(std::max(64L, bits + 8));; p *= 2) {
    Interval r = kind_ == Kind::Rational ? Interval::from_mpq(value_, p) : isqrt_mpq(value_, p);
    if (r.width_below(bits)) return r;
    if (p > prec_cap() + 256)
      throw PrecisionCapExceeded("constant enclosure did not reach width 2^(1-" +
                                 std::to_string(bits) + ")");
  }
}

std::string SymbolicConstant::grammar() const {
  switch (kind_) {
    case Kind::Rational:
      return "rat:" + value_.get_num().get_str() + "/" + value_.get_den().get_str();
    case Kind::Sqrt:
      return "sqrt:" + value_.get_num().get_str() + "/" + value_.get_den().get_str();
    case Kind::Oracle:
      return "oracle:" + name_;
  }
  return {};
}

OracleRegistry& OracleRegistry::builtin() {
  static OracleRegistry reg = [] {
    OracleRegistry r;
    r.add("log2", [](long bits) {
      Interval v(Dyadic(static_cast<mpfr_prec_t>(bits + 8)),
                 Dyadic(static_cast<mpfr_prec_t>(bits + 8)));
      mpfr_const_log2(v.lo.raw(), MPFR_RNDD);
      mpfr_const_log2(v.hi.raw(), MPFR_RNDU);
      return v;
    });
    r.add("pi", [](long bits) {
      Interval v(Dyadic(static_cast<mpfr_prec_t>(bits + 8)),
                 Dyadic(static_cast<mpfr_prec_t>(bits + 8)));
      mpfr_const_pi(v.lo.raw(), MPFR_RNDD);
      mpfr_const_pi(v.hi.raw(), MPFR_RNDU);
      return v;
    });
    return r;
  }();
  return reg;
}

void OracleRegistry::add(const std::string& name, SymbolicConstant::OracleFn fn) {
  fns_[name] = std::move(fn);
}

SymbolicConstant OracleRegistry::make(const std::string& name) const {
  auto it = fns_.find(name);
  if (it == fns_.end()) throw InvalidInput("unknown oracle constant: " + name);
  return SymbolicConstant::digit_oracle(name, it->second);
}

SymbolicConstant parse_constant(const std::string& text, const OracleRegistry& reg) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("constant grammar needs a kind prefix: " + text);
  std::string kind = text.substr(0, colon), body = text.substr(colon + 1);
  if (kind == "rat") return SymbolicConstant::rational(mpq_class(body));
  if (kind == "sqrt") return SymbolicConstant::sqrt(mpq_class(body));
  if (kind == "oracle") return reg.make(body);
  throw InvalidInput("unknown constant kind: " + kind);
}

// ------------------------------------------------------ LLL relation check

namespace {

// Exact LLL reduction (delta = 3/4) over small dimensions.
void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
  const size_t n = b.size();
  if (n <= 1) return;
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  std::vector<mpq_class> B(n);
  auto gram_schmidt = [&] {
    std::vector<std::vector<mpq_class>> gs(n, std::vector<mpq_class>(b[0].size()));
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < b[i].size(); ++k) gs[i][k] = mpq_class(b[i][k]);
      for (size_t j = 0; j < i; ++j) {
        mpq_class num = 0;
        for (size_t k = 0; k < b[i].size(); ++k) num += mpq_class(b[i][k]) * gs[j][k];
        mu[i][j] = B[j] == 0 ? mpq_class(0) : num / B[j];
        for (size_t k = 0; k < b[i].size(); ++k) gs[i][k] -= mu[i][j] * gs[j][k];
      }
      B[i] = 0;
      for (size_t k = 0; k < b[i].size(); ++k) B[i] += gs[i][k] * gs[i][k];
    }
  };
  gram_schmidt();
  size_t k = 1;
  long guard = 0;
  while (k < n) {
    if (++guard > 100000) throw Error("LLL did not converge");
    for (size_t j = k; j-- > 0;) {
      // Nearest integer to mu[k][j].
      mpq_class two_mu = 2 * mu[k][j];
      mpz_class num_half = two_mu.get_num() + two_mu.get_den();
      mpz_class den_twice = 2 * two_mu.get_den();
      mpz_class r;
      mpz_fdiv_q(r.get_mpz_t(), num_half.get_mpz_t(), den_twice.get_mpz_t());
      if (r != 0) {
        for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[j][t];
        gram_schmidt();
      }
    }
    mpq_class lhs = B[k];
    mpq_class rhs = (mpq_class(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = k > 1 ? k - 1 : 1;
    }
  }
}

}  // namespace

std::shared_ptr<const MasterBasis> MasterBasis::make(std::vector<SymbolicConstant> constants,
                                                     long height_bound) {
  if (constants.empty()) throw InvalidInput("empty master basis");
  if (constants[0].kind() != SymbolicConstant::Kind::Rational ||
      constants[0].rational_value() != 1)
    throw InvalidInput("master basis index 0 must be the constant 1");

  auto basis = std::shared_ptr<MasterBasis>(new MasterBasis());
  basis->constants_ = std::move(constants);
  basis->height_bound_ = height_bound;

  const size_t k = basis->constants_.size();
  if (height_bound > 0 && k >= 2) {
    // Scaled-enclosure lattice [I | N*alpha]; short reduced vectors with all
    // coordinate entries <= height_bound are relation candidates.
    const long approx_bits = 320;
    const long certify_bits = 1024;
    std::vector<std::vector<mpz_class>> rows(k, std::vector<mpz_class>(k + 1));
    for (size_t i = 0; i < k; ++i) {
      Interval enc = basis->constants_[i].enclosure(approx_bits);
      Dyadic mid(static_cast<mpfr_prec_t>(approx_bits + 16));
      mpfr_add(mid.raw(), enc.lo.raw(), enc.hi.raw(), MPFR_RNDN);
      mpfr_mul_2si(mid.raw(), mid.raw(), approx_bits - 1, MPFR_RNDN);
      mpz_class scaled;
      mpfr_get_z(scaled.get_mpz_t(), mid.raw(), MPFR_RNDN);
      rows[i][i] = 1;
      rows[i][k] = scaled;
    }
    lll_reduce(rows);
    for (const auto& row : rows) {
      bool small = false;
      for (size_t i = 0; i < k; ++i)
        if (row[i] != 0) small = true;
      if (!small) continue;
      for (size_t i = 0; i < k; ++i)
        if (abs(row[i]) > height_bound) {
          small = false;
          break;
        }
      if (!small) continue;
      // Certify the candidate by a high-precision enclosure of the combination.
      mpfr_prec_t p = static_cast<mpfr_prec_t>(certify_bits);
      Interval sum = Interval::point_long(0, p);
      for (size_t i = 0; i < k; ++i) {
        if (row[i] == 0) continue;
        Interval term = imul_mpq(mpq_class(row[i]), basis->constants_[i].enclosure(certify_bits), p);
        sum = iadd(sum, term, p);
      }
      if (sum.contains_zero() && sum.width_below(certify_bits / 2)) {
        std::ostringstream os;
        os << "integer relation detected among basis constants:";
        for (size_t i = 0; i < k; ++i) os << " " << row[i].get_str();
        throw RelationDetected(os.str());
      }
    }
  }
  return basis;
}

// ------------------------------------------------------------ group elements

GroupElement::GroupElement(BasisPtr basis, std::vector<mpq_class> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (!basis_) throw InvalidInput("null basis");
  if (coeffs_.size() != basis_->size()) throw DimensionMismatch("coefficient vector length");
  for (auto& c : coeffs_) c.canonicalize();
}

GroupElement GroupElement::zero(const BasisPtr& basis) {
  return GroupElement(basis, std::vector<mpq_class>(basis->size()));
}

GroupElement GroupElement::one(const BasisPtr& basis) { return constant(basis, 0); }

GroupElement GroupElement::constant(const BasisPtr& basis, size_t index) {
  if (index >= basis->size()) throw DimensionMismatch("constant index");
  std::vector<mpq_class> c(basis->size());
  c[index] = 1;
  return GroupElement(basis, std::move(c));
}

GroupElement GroupElement::from_rational(const BasisPtr& basis, const mpq_class& q) {
  std::vector<mpq_class> c(basis->size());
  c[0] = q;
  return GroupElement(basis, std::move(c));
}

bool GroupElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool GroupElement::operator==(const GroupElement& o) const {
  if (basis_ != o.basis_) throw InvalidInput("elements over different bases");
  return coeffs_ == o.coeffs_;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  if (basis_ != o.basis_) throw InvalidInput("elements over different bases");
  std::vector<mpq_class> c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return GroupElement(basis_, std::move(c));
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  if (basis_ != o.basis_) throw InvalidInput("elements over different bases");
  std::vector<mpq_class> c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return GroupElement(basis_, std::move(c));
}

GroupElement GroupElement::operator-() const {
  std::vector<mpq_class> c(coeffs_);
  for (auto& x : c) x = -x;
  return GroupElement(basis_, std::move(c));
}

GroupElement GroupElement::scaled(const mpq_class& f) const {
  std::vector<mpq_class> c(coeffs_);
  for (auto& x : c) x *= f;
  return GroupElement(basis_, std::move(c));
}

std::optional<mpq_class> GroupElement::exact_rational() const {
  mpq_class v = 0;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (basis_->constant(i).kind() != SymbolicConstant::Kind::Rational) return std::nullopt;
    v += coeffs_[i] * basis_->constant(i).rational_value();
  }
  return v;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ", ";
    os << coeffs_[i].get_str();
  }
  os << ")";
  return os.str();
}

Interval eval(const GroupElement& e, long bits) {
  if (bits < 1) throw InvalidInput("eval needs bits >= 1");
  if (bits > prec_cap())
    throw PrecisionCapExceeded("requested " + std::to_string(bits) + " bits above cap");
  if (e.is_zero()) return Interval::point_long(0, 64);
  for (long p = std::max(64L, bits + 8);; p *= 2) {
    mpfr_prec_t mp = static_cast<mpfr_prec_t>(p);
    Interval sum = Interval::point_long(0, mp);
    for (size_t i = 0; i < e.coeffs().size(); ++i) {
      if (e.coeffs()[i] == 0) continue;
      Interval term = imul_mpq(e.coeffs()[i], e.basis()->enclosure(i, p), mp);
      sum = iadd(sum, term, mp);
    }
    if (sum.width_below(bits)) return sum;
    if (p > prec_cap())
      throw PrecisionCapExceeded("eval width bound unreachable at the precision cap");
  }
}

int sign_of(const GroupElement& e) {
  if (e.is_zero()) return 0;
  if (auto q = e.exact_rational()) return sgn(*q);
  for (long bits = kPrecStart;; bits *= 2) {
    if (bits > prec_cap())
      throw PrecisionCapExceeded(
          "sign undecided at the precision cap; the independence declaration is suspect");
    Interval v = eval(e, std::min(bits, prec_cap()));
    if (v.lo.sign() > 0) return 1;
    if (v.hi.sign() < 0) return -1;
  }
}

GroupElement fractional_part(const GroupElement& x) {
  auto [q, r] = floor_ratio(x, GroupElement::one(x.basis()));
  return r;
}

std::pair<mpz_class, GroupElement> floor_ratio(const GroupElement& x, const GroupElement& y) {
  if (sign_of(y) != 1) throw NonPositiveInput("floor_ratio needs y > 0");
  auto xq = x.exact_rational();
  auto yq = y.exact_rational();
  mpz_class q;
  if (xq && yq) {
    mpq_class ratio = *xq / *yq;
    mpz_fdiv_q(q.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
  } else {
    bool decided = false;
    for (long bits = kPrecStart; !decided; bits *= 2) {
      if (bits > prec_cap())
        throw PrecisionCapExceeded("floor undecided at the precision cap (ratio sits at an integer)");
      long b = std::min(bits, prec_cap());
      mpfr_prec_t mp = static_cast<mpfr_prec_t>(b + 8);
      Interval ratio = idiv(eval(x, b), eval(y, b), mp);
      mpz_class fl, fh;
      mpfr_get_z(fl.get_mpz_t(), ratio.lo.raw(), MPFR_RNDD);
      mpfr_get_z(fh.get_mpz_t(), ratio.hi.raw(), MPFR_RNDD);
      if (fl == fh) {
        q = fl;
        decided = true;
        break;
      }
      // The enclosure straddles an integer boundary; integer values of x/y
      // are decided exactly through the coefficient identity x - m*y = 0.
      for (mpz_class m = fl + 1; m <= fh; ++m) {
        if ((x - y.scaled(mpq_class(m))).is_zero()) {
          q = m;
          decided = true;
          break;
        }
      }
    }
  }
  GroupElement r = x - y.scaled(mpq_class(q));
  return {q, r};
}

// ------------------------------------------------------------------ lattices

namespace {

// Common-denominator integer coefficient matrix of a list of elements.
std::pair<MatZ, mpz_class> cleared(const std::vector<GroupElement>& elems) {
  if (elems.empty()) throw InvalidInput("empty element list");
  const BasisPtr& basis = elems[0].basis();
  for (const auto& e : elems)
    if (e.basis() != basis) throw InvalidInput("elements over different bases");
  mpz_class den = 1;
  for (const auto& e : elems)
    for (const auto& c : e.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  MatZ m(static_cast<int>(elems.size()), static_cast<int>(basis->size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      mpq_class scaled = elems[i].coeffs()[j] * mpq_class(den);
      m(i, j) = scaled.get_num();  // denominator is 1 after scaling
    }
  return {m, den};
}

}  // namespace

std::vector<GroupElement> lattice_basis(const std::vector<GroupElement>& gens) {
  auto [m, den] = cleared(gens);
  MatZ h = hnf_rows(m);
  std::vector<GroupElement> out;
  out.reserve(h.rows());
  const BasisPtr& basis = gens[0].basis();
  for (int i = 0; i < h.rows(); ++i) {
    std::vector<mpq_class> c(basis->size());
    for (int j = 0; j < h.cols(); ++j) c[j] = mpq_class(h(i, j)) / mpq_class(den);
    out.emplace_back(basis, std::move(c));
  }
  return out;
}

bool lattice_member(const std::vector<GroupElement>& gens, const GroupElement& e) {
  auto [m, den] = cleared(gens);
  MatZ h = hnf_rows(m);
  // e scaled by den must have integer coordinates in the row span.
  std::vector<mpz_class> v(h.cols());
  for (int j = 0; j < h.cols(); ++j) {
    mpq_class scaled = e.coeffs()[j] * mpq_class(den);
    if (scaled.get_den() != 1) return false;
    v[j] = scaled.get_num();
  }
  return hnf_solve(h, v).has_value();
}

bool same_lattice(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  for (const auto& e : a)
    if (!lattice_member(b, e)) return false;
  for (const auto& e : b)
    if (!lattice_member(a, e)) return false;
  return true;
}

std::optional<std::vector<mpq_class>> rational_coords(const std::vector<GroupElement>& basis_elems,
                                                      const GroupElement& e) {
  const int d = static_cast<int>(basis_elems.size());
  const int k = static_cast<int>(e.coeffs().size());
  MatQ a(d, k), rhs(1, k);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = basis_elems[i].coeffs()[j];
  for (int j = 0; j < k; ++j) rhs(0, j) = e.coeffs()[j];
  auto m = solve_left(a, rhs);
  if (!m) return std::nullopt;
  std::vector<mpq_class> out(d);
  for (int i = 0; i < d; ++i) out[i] = (*m)(0, i);
  return out;
}

}  // namespace orbitscale

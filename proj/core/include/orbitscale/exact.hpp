#ifndef ORBITSCALE_EXACT_HPP
#define ORBITSCALE_EXACT_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitscale/dyadic.hpp"
#include "orbitscale/matrix.hpp"

namespace orbitscale {

// One generator of the coefficient space: an exact rational, the square
// root of a positive rational, or a named digit oracle supplying certified
// enclosures at any requested precision.
class SymbolicConstant {
 public:
  enum class Kind { Rational, Sqrt, Oracle };
  using OracleFn = std::function<Interval(long bits)>;

  static SymbolicConstant rational(mpq_class q);
  static SymbolicConstant sqrt(mpq_class radicand);
  static SymbolicConstant digit_oracle(std::string name, OracleFn fn);

  Kind kind() const { return kind_; }
  const mpq_class& rational_value() const { return value_; }
  const mpq_class& radicand() const { return value_; }
  const std::string& name() const { return name_; }

  // Enclosure of the real value with width <= 2^(1-bits).
  Interval enclosure(long bits) const;

  // Text grammar: "rat:p/q", "sqrt:p/q", "oracle:<name>".
  std::string grammar() const;

 private:
  SymbolicConstant() = default;
  Kind kind_ = Kind::Rational;
  mpq_class value_;
  std::string name_;
  OracleFn oracle_;
};

// Named oracle constants available to the text grammar.
class OracleRegistry {
 public:
  static OracleRegistry& builtin();  // log2, pi
  void add(const std::string& name, SymbolicConstant::OracleFn fn);
  SymbolicConstant make(const std::string& name) const;

 private:
  std::map<std::string, SymbolicConstant::OracleFn> fns_;
};

SymbolicConstant parse_constant(const std::string& text,
                                const OracleRegistry& reg = OracleRegistry::builtin());

// Ordered list of constants spanning the coefficient space.  Index 0 always
// holds the constant 1.  Construction runs a bounded-height integer-relation
// check (LLL on scaled enclosures): a candidate relation with coefficients
// of absolute value <= height_bound whose value encloses zero at high
// precision rejects the declaration with RelationDetected.
class MasterBasis {
 public:
  static std::shared_ptr<const MasterBasis> make(std::vector<SymbolicConstant> constants,
                                                 long height_bound = 1000);

  size_t size() const { return constants_.size(); }
  const SymbolicConstant& constant(size_t i) const { return constants_[i]; }
  Interval enclosure(size_t i, long bits) const { return constants_[i].enclosure(bits); }
  long height_bound() const { return height_bound_; }

 private:
  MasterBasis() = default;
  std::vector<SymbolicConstant> constants_;
  long height_bound_ = 0;
};

using BasisPtr = std::shared_ptr<const MasterBasis>;

// Element of the coefficient space: an exact rational coefficient vector
// over a shared MasterBasis.  Under the declared independence, equality of
// elements is equality of coefficient vectors.
class GroupElement {
 public:
  GroupElement(BasisPtr basis, std::vector<mpq_class> coeffs);

  static GroupElement zero(const BasisPtr& basis);
  static GroupElement one(const BasisPtr& basis);
  static GroupElement constant(const BasisPtr& basis, size_t index);
  static GroupElement from_rational(const BasisPtr& basis, const mpq_class& q);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement scaled(const mpq_class& c) const;

  // Exact rational value when the support involves only rational constants.
  std::optional<mpq_class> exact_rational() const;

  std::string str() const;  // coefficient-vector rendering

 private:
  BasisPtr basis_;
  std::vector<mpq_class> coeffs_;
};

// Certified enclosure of the value of e with width <= 2^(1-bits).
Interval eval(const GroupElement& e, long bits);

// Certified sign: 0 exactly when the coefficient vector vanishes; otherwise
// refines enclosures until zero is excluded (PrecisionCapExceeded at cap,
// which signals a likely violated independence declaration).
int sign_of(const GroupElement& e);

// Integer part and remainder: x = q*y + r with 0 <= r < y, exactly in
// coefficients.  Requires sign_of(y) == +1.
std::pair<mpz_class, GroupElement> floor_ratio(const GroupElement& x, const GroupElement& y);

// Fractional part {x} = x - [x]*1 using the constant one of the basis.
GroupElement fractional_part(const GroupElement& x);

// Z-basis of the subgroup generated by gens (Hermite normal form on the
// cleared-denominator coefficient lattice).  The result size is the rank.
std::vector<GroupElement> lattice_basis(const std::vector<GroupElement>& gens);

// Membership of e in the subgroup generated by gens.
bool lattice_member(const std::vector<GroupElement>& gens, const GroupElement& e);

// Both inclusions: the two generating lists span the same subgroup.
bool same_lattice(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b);

// Rational coordinates of e over an independent list basis_elems (solves a
// linear system over Q); nullopt when e is outside the rational span.
std::optional<std::vector<mpq_class>> rational_coords(const std::vector<GroupElement>& basis_elems,
                                                      const GroupElement& e);

}  // namespace orbitscale

#endif

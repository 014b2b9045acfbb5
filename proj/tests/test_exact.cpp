#include <doctest.h>

#include "orbitscale/exact.hpp"
#include "orbitscale/errors.hpp"

using namespace orbitscale;

namespace {

BasisPtr golden_basis() {
  // {1, sqrt(5)}
  return MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(5)});
}

// alpha = (sqrt(5)-1)/2 over {1, sqrt5}
GroupElement golden_alpha(const BasisPtr& b) {
  return GroupElement(b, {mpq_class(-1, 2), mpq_class(1, 2)});
}

BasisPtr sqrt2_basis() {
  return MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(2)});
}

}  // namespace

TEST_CASE("interval primitives round outward") {
  Interval a = Interval::from_mpq(mpq_class(1, 3), 64);
  CHECK(a.lo < a.hi);
  CHECK(a.width_below(60));
  Interval b = imul(a, a, 64);
  // 1/9 must lie inside
  Interval third2 = Interval::from_mpq(mpq_class(1, 9), 128);
  CHECK(b.lo <= third2.hi);
  CHECK(third2.lo <= b.hi);
}

TEST_CASE("eval exact rational is a point at any bits") {
  auto b = golden_basis();
  GroupElement one = GroupElement::one(b);
  Interval v = eval(one, 8);
  CHECK(v.width_below(8));
  CHECK(v.lo == Dyadic::from_long(1));
  CHECK(v.hi == Dyadic::from_long(1));
}

TEST_CASE("eval sqrt2 against a long-division square root oracle") {
  auto b = sqrt2_basis();
  GroupElement r2 = GroupElement::constant(b, 1);
  Interval v = eval(r2, 64);
  CHECK(v.width_below(64));
  // Digit-by-digit oracle: s = floor(sqrt(2 * 4^k)) gives
  // s/2^k <= sqrt2 < (s+1)/2^k.
  const int k = 80;
  mpz_class two_shift = mpz_class(2) << (2 * k);
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), two_shift.get_mpz_t());
  mpq_class lo_q(s, mpz_class(1) << k), hi_q(s + 1, mpz_class(1) << k);
  Interval oracle(Dyadic::from_mpq(lo_q, 128, MPFR_RNDD), Dyadic::from_mpq(hi_q, 128, MPFR_RNDU));
  CHECK(!disjoint(v, oracle));
  // and the enclosure is tight around the oracle value
  CHECK(cmp(v.lo, oracle.hi) <= 0);
  CHECK(cmp(oracle.lo, v.hi) <= 0);
}

TEST_CASE("eval cancels coefficients exactly") {
  auto b = sqrt2_basis();
  GroupElement r2 = GroupElement::constant(b, 1);
  GroupElement z = r2 - r2;
  CHECK(z.is_zero());
  Interval v = eval(z, 512);
  CHECK(v.lo.is_zero());
  CHECK(v.hi.is_zero());
}

TEST_CASE("eval monotonicity: more bits never widens") {
  auto b = golden_basis();
  GroupElement e = golden_alpha(b);
  Dyadic w_prev;
  bool first = true;
  for (long bits : {16L, 64L, 256L, 1024L}) {
    Dyadic w = eval(e, bits).width();
    if (!first) CHECK(cmp(w, w_prev) <= 0);
    w_prev = w;
    first = false;
  }
}

TEST_CASE("sign_of certified decisions") {
  auto b = golden_basis();
  GroupElement alpha = golden_alpha(b);
  CHECK(sign_of(GroupElement::zero(b)) == 0);
  // 1 - alpha > 0  (alpha = golden ratio conjugate ~ 0.618)
  CHECK(sign_of(GroupElement::one(b) - alpha) == 1);
  // 2*alpha - 1 > 0
  CHECK(sign_of(alpha.scaled(2) - GroupElement::one(b)) == 1);
  // alpha - 1 < 0
  CHECK(sign_of(alpha - GroupElement::one(b)) == -1);
}

TEST_CASE("sign_of agrees with eval enclosures") {
  auto b = golden_basis();
  GroupElement e = golden_alpha(b).scaled(3) - GroupElement::one(b);  // 3a-1 > 0
  Interval v = eval(e, 64);
  if (!v.contains_zero()) {
    CHECK(sign_of(e) == (v.lo.sign() > 0 ? 1 : -1));
  }
}

TEST_CASE("floor_ratio integer case is exact") {
  auto b = golden_basis();
  GroupElement five = GroupElement::from_rational(b, 5);
  GroupElement two = GroupElement::from_rational(b, 2);
  auto [q, r] = floor_ratio(five, two);
  CHECK(q == 2);
  CHECK(r == GroupElement::from_rational(b, 1));
}

TEST_CASE("floor_ratio golden example") {
  auto b = golden_basis();
  GroupElement alpha = golden_alpha(b);
  GroupElement one = GroupElement::one(b);
  auto [q, r] = floor_ratio(one - alpha, alpha);
  CHECK(q == 0);
  CHECK(r == one - alpha);
}

TEST_CASE("floor_ratio sqrt2 example with exact remainder") {
  auto b = sqrt2_basis();
  GroupElement one = GroupElement::one(b);
  GroupElement alpha = GroupElement::constant(b, 1) - one;  // sqrt2 - 1
  auto [q, r] = floor_ratio(one - alpha, alpha);
  CHECK(q == 1);
  // r = 3 - 2*sqrt2
  GroupElement expect(b, {mpq_class(3), mpq_class(-2)});
  CHECK(r == expect);
}

TEST_CASE("floor_ratio exact division detected through coefficients") {
  auto b = sqrt2_basis();
  GroupElement r2 = GroupElement::constant(b, 1);
  auto [q, r] = floor_ratio(r2.scaled(3), r2);
  CHECK(q == 3);
  CHECK(r.is_zero());
}

TEST_CASE("floor_ratio property: reconstruction and remainder range") {
  auto b = sqrt2_basis();
  GroupElement one = GroupElement::one(b);
  GroupElement r2 = GroupElement::constant(b, 1);
  // a grid of x, y combinations
  for (int i = -3; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      GroupElement x = one.scaled(i) + r2.scaled(j - 2);
      GroupElement y = one.scaled(j) + r2.scaled(mpq_class(1, 2));
      if (sign_of(y) != 1) continue;
      auto [q, r] = floor_ratio(x, y);
      CHECK((y.scaled(mpq_class(q)) + r) == x);
      CHECK(sign_of(r) >= 0);
      CHECK(sign_of(y - r) == 1);
    }
  }
}

TEST_CASE("lattice_basis rational lattice") {
  auto b = golden_basis();
  std::vector<GroupElement> gens = {GroupElement::one(b),
                                    GroupElement::from_rational(b, mpq_class(1, 2))};
  auto basis = lattice_basis(gens);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == GroupElement::from_rational(b, mpq_class(1, 2)));
}

TEST_CASE("lattice_basis keeps independent pair") {
  auto b = golden_basis();
  GroupElement alpha = golden_alpha(b);
  auto basis = lattice_basis({GroupElement::one(b), alpha});
  CHECK(basis.size() == 2);
}

TEST_CASE("lattice_basis reduces dependent triple and spans the same group") {
  auto b = golden_basis();
  GroupElement one = GroupElement::one(b);
  GroupElement alpha = golden_alpha(b);
  std::vector<GroupElement> gens = {one, alpha, one + alpha.scaled(2)};
  auto basis = lattice_basis(gens);
  REQUIRE(basis.size() == 2);
  CHECK(same_lattice(gens, basis));
}

TEST_CASE("lattice_basis idempotence") {
  auto b = sqrt2_basis();
  GroupElement one = GroupElement::one(b);
  GroupElement r2 = GroupElement::constant(b, 1);
  std::vector<GroupElement> gens = {one.scaled(2) + r2, one - r2.scaled(3), r2.scaled(5)};
  auto b1 = lattice_basis(gens);
  auto b2 = lattice_basis(b1);
  CHECK(same_lattice(b1, b2));
  CHECK(same_lattice(gens, b2));
}

TEST_CASE("relation check rejects sqrt8 vs sqrt2") {
  CHECK_THROWS_AS(MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(2),
                                     SymbolicConstant::sqrt(8)}),
                  RelationDetected);
}

TEST_CASE("relation check rejects a second rational constant") {
  CHECK_THROWS_AS(
      MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::rational(mpq_class(1, 3))}),
      RelationDetected);
}

TEST_CASE("relation check accepts independent square roots") {
  auto b = MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(2),
                              SymbolicConstant::sqrt(3), SymbolicConstant::sqrt(5)});
  CHECK(b->size() == 4);
}

TEST_CASE("digit oracle constants participate in eval") {
  auto b = MasterBasis::make(
      {SymbolicConstant::rational(1), OracleRegistry::builtin().make("log2")});
  GroupElement e(b, {mpq_class(1), mpq_class(2)});  // 1 + 2*ln2 ~ 2.386
  CHECK(sign_of(e) == 1);
  Interval v = eval(e, 64);
  CHECK(v.width_below(64));
  CHECK(sign_of(e - GroupElement::from_rational(b, 2)) == 1);
  CHECK(sign_of(e - GroupElement::from_rational(b, 3)) == -1);
}

TEST_CASE("constant grammar round trip") {
  auto c1 = parse_constant("rat:3/4");
  CHECK(c1.grammar() == "rat:3/4");
  auto c2 = parse_constant("sqrt:5");
  CHECK(c2.grammar() == "sqrt:5/1");
  auto c3 = parse_constant("oracle:pi");
  CHECK(c3.grammar() == "oracle:pi");
  CHECK_THROWS_AS(parse_constant("oracle:nope"), InvalidInput);
  CHECK_THROWS_AS(parse_constant("bogus:1"), InvalidInput);
}

TEST_CASE("fractional part") {
  auto b = golden_basis();
  // {sqrt5} = sqrt5 - 2
  GroupElement r5 = GroupElement::constant(b, 1);
  GroupElement f = fractional_part(r5);
  GroupElement expect(b, {mpq_class(-2), mpq_class(1)});
  CHECK(f == expect);
}

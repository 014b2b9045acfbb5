#ifndef ORBITSCALE_DIMGROUP_HPP
#define ORBITSCALE_DIMGROUP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "orbitscale/bratteli.hpp"
#include "orbitscale/exact.hpp"
#include "orbitscale/matrix.hpp"

namespace orbitscale {

// Finite truncation of a direct limit of (Z^{d_n}, positive cone) along
// non-negative connecting matrices L_n : Z^{d_n} -> Z^{d_{n+1}}.  When state
// vectors are present they satisfy x^(n) = L_n^T x^(n+1) exactly, so the
// pairing <v, x^(n)> is invariant along the limit.
struct DirectLimitGroup {
  std::vector<int> dims;                                      // d_0..d_J
  std::vector<MatZ> connecting;                               // L_n: d_{n+1} x d_n
  std::optional<std::vector<std::vector<GroupElement>>> states;  // x^(n)
  std::optional<std::pair<int, std::vector<mpz_class>>> unit;    // [v, n]

  int top_level() const { return static_cast<int>(dims.size()) - 1; }
  void validate() const;
};

struct LimitElement {
  int level = 0;
  std::vector<mpz_class> v;
};

enum class Positivity { Negative = -1, Zero = 0, Positive = 1 };

// [v, n] -> [L_{m-1} ... L_n v, m].
LimitElement push_forward(const DirectLimitGroup& g, const LimitElement& e, int m);

// Equality in the limit, decided by pushing both to the deepest level.
// Distinct vectors with a nonzero state difference are certainly distinct;
// distinct vectors with zero state difference raise Undecidable when the
// matrices are exhausted.
bool limit_equals(const DirectLimitGroup& g, const LimitElement& a, const LimitElement& b);

// Exact inner product <v, x^(level)>.
GroupElement state_value(const DirectLimitGroup& g, const LimitElement& e);

// Zero exactly when the state vanishes (the pipelines instantiating this
// module have injective states).  Otherwise the certified state sign,
// cross-checked against the coordinatewise push-forward certificate when
// one is reached within the truncation.
Positivity is_positive(const DirectLimitGroup& g, const LimitElement& e);

// Coordinatewise certificate alone: pushes forward until the vector is
// componentwise >= 0 or <= 0.  nullopt when the truncation is exhausted
// while the vector still has mixed signs.
std::optional<Positivity> pushforward_certificate(const DirectLimitGroup& g, const LimitElement& e);

// Ordered group of an ordered Bratteli diagram: connecting matrices are the
// transposed transition matrices, unit [1, 0].
DirectLimitGroup group_of_diagram(const OrderedBratteliDiagram& b);

// Distance in the projective metric between the normalized state directions
// recovered from two depths of composite columns, with the Birkhoff bound
// tanh(ln(d0_ratio)/4)^hops * ln(d0_ratio).  Used by the unique-state
// certificate: both values are certified enclosures.
struct StateAgreement {
  Interval distance;
  Interval bound;
  bool pass = false;
};
StateAgreement state_agreement(const std::vector<MatZ>& connecting, int from_level, int mid_level,
                               int deep_level, const mpq_class& d0_ratio);

}  // namespace orbitscale

#endif

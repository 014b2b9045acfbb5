#include "orbitscale/dimgroup.hpp"

#include <algorithm>

#include "orbitscale/errors.hpp"
#include "orbitscale/euclid.hpp"
#include "orbitscale/hilbert.hpp"

namespace orbitscale {

void DirectLimitGroup::validate() const {
  if (dims.empty()) throw InvalidInput("empty direct limit");
  if (connecting.size() + 1 != dims.size())
    throw InvalidInput("need one connecting matrix per consecutive level pair");
  for (size_t n = 0; n < connecting.size(); ++n) {
    const MatZ& L = connecting[n];
    if (L.rows() != dims[n + 1] || L.cols() != dims[n])
      throw InvalidShape("connecting matrix " + std::to_string(n) + " has wrong shape");
    for (int i = 0; i < L.rows(); ++i)
      for (int j = 0; j < L.cols(); ++j)
        if (L(i, j) < 0) throw InvalidInput("connecting matrices must be non-negative");
  }
  if (states) {
    if (states->size() != dims.size()) throw InvalidInput("one state vector per level");
    for (size_t n = 0; n < dims.size(); ++n)
      if (static_cast<int>((*states)[n].size()) != dims[n])
        throw InvalidShape("state vector " + std::to_string(n) + " has wrong length");
    for (size_t n = 0; n < connecting.size(); ++n) {
      // x^(n) = L_n^T x^(n+1) exactly.
      auto lhs = (*states)[n];
      auto rhs = apply_matrix(transpose(connecting[n]), (*states)[n + 1]);
      for (size_t i = 0; i < lhs.size(); ++i)
        if (!(lhs[i] == rhs[i])) throw InvalidInput("state vectors break the inverse-limit identity");
    }
  }
  if (unit) {
    if (unit->first < 0 || unit->first > top_level() ||
        static_cast<int>(unit->second.size()) != dims[unit->first])
      throw InvalidShape("unit outside the truncation");
  }
}

LimitElement push_forward(const DirectLimitGroup& g, const LimitElement& e, int m) {
  if (e.level < 0 || e.level > g.top_level() || m > g.top_level())
    throw LevelOutOfRange("push_forward outside the truncation");
  if (m < e.level) throw LevelOutOfRange("push_forward target below the element level");
  if (static_cast<int>(e.v.size()) != g.dims[e.level]) throw DimensionMismatch("element length");
  LimitElement out{e.level, e.v};
  for (int n = e.level; n < m; ++n) {
    out.v = g.connecting[n] * out.v;
    out.level = n + 1;
  }
  return out;
}

bool limit_equals(const DirectLimitGroup& g, const LimitElement& a, const LimitElement& b) {
  const int top = g.top_level();
  LimitElement pa = push_forward(g, a, top);
  LimitElement pb = push_forward(g, b, top);
  if (pa.v == pb.v) return true;
  if (g.states) {
    GroupElement diff = state_value(g, a) - state_value(g, b);
    if (!diff.is_zero()) return false;
  }
  throw Undecidable("vectors differ at the deepest level with zero state difference");
}

GroupElement state_value(const DirectLimitGroup& g, const LimitElement& e) {
  if (!g.states) throw NoStateVectors("no state vectors attached");
  if (e.level < 0 || e.level > g.top_level()) throw LevelOutOfRange("state_value level");
  const auto& x = (*g.states)[e.level];
  if (x.size() != e.v.size()) throw DimensionMismatch("state_value length");
  GroupElement acc = GroupElement::zero(x[0].basis());
  for (size_t i = 0; i < x.size(); ++i) {
    if (e.v[i] == 0) continue;
    acc = acc + x[i].scaled(mpq_class(e.v[i]));
  }
  return acc;
}

std::optional<Positivity> pushforward_certificate(const DirectLimitGroup& g, const LimitElement& e) {
  for (int m = e.level; m <= g.top_level(); ++m) {
    LimitElement p = push_forward(g, e, m);
    bool all_nonneg = true, all_nonpos = true, all_zero = true;
    for (const auto& c : p.v) {
      if (c > 0) {
        all_nonpos = false;
        all_zero = false;
      } else if (c < 0) {
        all_nonneg = false;
        all_zero = false;
      }
    }
    if (all_zero) return Positivity::Zero;
    if (all_nonneg) return Positivity::Positive;
    if (all_nonpos) return Positivity::Negative;
  }
  return std::nullopt;
}

Positivity is_positive(const DirectLimitGroup& g, const LimitElement& e) {
  auto cert = pushforward_certificate(g, e);
  if (!g.states) {
    if (cert) return *cert;
    throw Undecidable("no state vectors and no coordinatewise certificate within the truncation");
  }
  GroupElement s = state_value(g, e);
  Positivity by_state = s.is_zero() ? Positivity::Zero
                        : sign_of(s) > 0 ? Positivity::Positive
                                         : Positivity::Negative;
  if (cert && *cert != by_state)
    throw Error("state sign contradicts the coordinatewise certificate");
  return by_state;
}

DirectLimitGroup group_of_diagram(const OrderedBratteliDiagram& b) {
  DirectLimitGroup g;
  for (const auto& lvl : b.levels) g.dims.push_back(static_cast<int>(lvl.size()));
  for (const auto& m : transition_matrices(b)) g.connecting.push_back(transpose(m));
  g.unit = std::make_pair(0, std::vector<mpz_class>{1});
  g.validate();
  return g;
}

StateAgreement state_agreement(const std::vector<MatZ>& connecting, int from_level, int mid_level,
                               int deep_level, const mpq_class& d0_ratio) {
  if (!(from_level < mid_level && mid_level < deep_level) ||
      deep_level > static_cast<int>(connecting.size()))
    throw LevelOutOfRange("state_agreement levels");
  // Composite columns approximate the state direction at from_level; the
  // factors C_n = L_n^T must be strictly positive with D(C_n) <= ln(d0_ratio).
  auto seed = [](int d) {
    std::vector<mpz_class> v(d, 1);
    return v;
  };
  std::vector<MatZ> factors;
  for (int n = from_level; n < deep_level; ++n) {
    MatZ c = transpose(connecting[n]);
    if (!strictly_positive(c))
      throw NonPositiveMatrix("state_agreement needs strictly positive composite factors");
    if (proj_diameter(c).ratio > d0_ratio)
      throw InvalidInput("factor diameter above the declared uniform bound");
    factors.push_back(std::move(c));
  }
  auto apply_chain = [&](int upto) {
    std::vector<mpz_class> v = seed(factors[upto - from_level - 1].cols());
    for (int n = upto - 1; n >= from_level; --n) v = factors[n - from_level] * v;
    return v;
  };
  std::vector<mpz_class> u = apply_chain(mid_level);
  std::vector<mpz_class> w = apply_chain(deep_level);
  std::vector<mpq_class> uq(u.begin(), u.end()), wq(w.begin(), w.end());
  ProjectiveValue dist = theta(uq, wq);

  StateAgreement res;
  const int hops = mid_level - from_level;  // factors in the common prefix
  for (long bits = kPrecStart;; bits *= 2) {
    if (bits > prec_cap())
      throw PrecisionCapExceeded("state agreement comparison undecided at the cap");
    mpfr_prec_t p = static_cast<mpfr_prec_t>(bits);
    Interval d0 = log_ratio(d0_ratio, bits);
    Interval contraction = itanh(imul_mpq(mpq_class(1, 4), d0, p), p);
    Interval bound = d0;
    for (int i = 0; i < hops - 1; ++i) bound = imul(bound, contraction, p);
    Interval distance = log_ratio(dist.ratio, bits);
    res.distance = distance;
    res.bound = bound;
    if (dist.zero || certainly_leq(distance, bound)) {
      res.pass = true;
      return res;
    }
    if (certainly_less(bound, distance)) {
      res.pass = false;
      return res;
    }
  }
}

}  // namespace orbitscale

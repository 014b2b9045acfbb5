#include "orbitscale/basics.hpp"

#include <algorithm>
#include <numeric>

#include "orbitscale/errors.hpp"
#include "orbitscale/euclid.hpp"
#include "orbitscale/hilbert.hpp"

namespace orbitscale {

VertexSet interval_set(int lo, int hi) {
  VertexSet s;
  for (int i = lo; i <= hi; ++i) s.push_back(i);
  return s;
}

namespace {

bool contains(const VertexSet& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int index_of(const VertexSet& s, int x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it == s.end() || *it != x) return -1;
  return static_cast<int>(it - s.begin());
}

}  // namespace

BasicMatrix basic_matrix(const VertexSet& v, const VertexSet& vp) {
  if (v.empty() || vp.empty()) throw NotBasicPair("empty vertex set");
  if (!std::is_sorted(v.begin(), v.end()) || !std::is_sorted(vp.begin(), vp.end()))
    throw NotBasicPair("vertex sets must be sorted");
  const int low = v.front();
  if (!contains(v, low + 1)) throw NotBasicPair("min+1 must belong to the left set");
  if (vp.front() != low + 1) throw NotBasicPair("right set must start at min+1");
  for (int x : v)
    if (x != low && !contains(vp, x)) throw NotBasicPair("right set must contain V minus its min");

  BasicMatrix b;
  b.rows = v;
  b.cols = vp;
  b.entries = MatZ(static_cast<int>(v.size()), static_cast<int>(vp.size()));
  for (int jc = 0; jc < static_cast<int>(vp.size()); ++jc) {
    int j = vp[jc];
    if (j == low + 1) {
      b.entries(index_of(v, low), jc) = 1;
      b.entries(index_of(v, low + 1), jc) = 1;
    } else if (contains(v, j)) {
      b.entries(index_of(v, j), jc) = 1;
    } else {
      b.entries(index_of(v, low), jc) = 1;
    }
  }
  return b;
}

bool equal_up_to_reindexing(const IndexedMatrix& a, const IndexedMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.cols.size() != b.cols.size()) return false;
  return a.entries == b.entries;
}

namespace {

bool strictly_decreasing_vec(const std::vector<mpz_class>& v) {
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] <= v[i + 1]) return false;
  return true;
}

bool strictly_positive_vec(const std::vector<mpz_class>& v) {
  for (const auto& x : v)
    if (x <= 0) return false;
  return true;
}

MatZ permute_cols(const MatZ& m, const std::vector<int>& tau) {
  MatZ out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out(i, j) = m(i, tau[j]);
  return out;
}

std::vector<mpz_class> col_diff(const MatZ& m, int j) {
  std::vector<mpz_class> d(m.rows());
  for (int i = 0; i < m.rows(); ++i) d[i] = m(i, j) - m(i, j + 1);
  return d;
}

bool strong_decreasing_matrix(const MatZ& m) {
  if (!strictly_decreasing_matrix(m)) return false;
  for (int j = 0; j + 1 < m.cols(); ++j)
    if (!strictly_positive_vec(col_diff(m, j))) return false;
  return true;
}

}  // namespace

bool strictly_decreasing_matrix(const MatZ& m) {
  for (int j = 0; j < m.cols(); ++j)
    if (!strictly_decreasing_vec(m.col(j))) return false;
  for (int j = 0; j + 1 < m.cols(); ++j)
    if (!strictly_decreasing_vec(col_diff(m, j))) return false;
  return true;
}

namespace {

template <typename Pred>
std::optional<std::vector<int>> find_permutation(const MatZ& m, Pred pred) {
  if (!strictly_positive(m)) throw NonPositiveMatrix("permutation search needs a positive matrix");
  const int dp = m.cols();
  // Descending first-row sort, keeping column 0 first.
  std::vector<int> tau(dp);
  std::iota(tau.begin(), tau.end(), 0);
  std::sort(tau.begin() + 1, tau.end(),
            [&](int a, int b) { return m(0, a) != m(0, b) ? m(0, a) > m(0, b) : a < b; });
  if (pred(permute_cols(m, tau))) return tau;
  if (dp > 8) throw SearchExhausted("sort heuristic failed and too many columns for search");
  std::vector<int> rest(dp - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::sort(rest.begin(), rest.end());
  do {
    std::vector<int> cand{0};
    cand.insert(cand.end(), rest.begin(), rest.end());
    if (pred(permute_cols(m, cand))) return cand;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> decreasing_permutation(const MatZ& m) {
  return find_permutation(m, strictly_decreasing_matrix);
}

std::optional<std::vector<int>> strong_decreasing_permutation(const MatZ& m) {
  return find_permutation(m, strong_decreasing_matrix);
}

IndexedMatrix chain_product(const std::vector<VertexSet>& w) {
  if (w.size() < 2) throw InvalidInput("chain needs at least two sets");
  BasicMatrix first = basic_matrix(w[0], w[1]);
  IndexedMatrix acc{first.rows, first.cols, first.entries};
  for (size_t i = 1; i + 1 < w.size(); ++i) {
    BasicMatrix next = basic_matrix(w[i], w[i + 1]);
    acc.entries = acc.entries * next.entries;
    acc.cols = next.cols;
  }
  return acc;
}

FactorChain factor_into_basics(const MatZ& m) {
  const int d = m.rows(), dp = m.cols();
  if (d < 2 || dp < 2) throw PreconditionFailed("factorization needs d, d' >= 2");
  if (!strictly_positive(m)) throw PreconditionFailed("matrix must be strictly positive");
  if (m(0, 0) < 5) throw PreconditionFailed("top-left entry must be at least 5");
  auto tau_opt = strong_decreasing_permutation(m);
  if (!tau_opt)
    throw PreconditionFailed(
        "matrix is not strictly decreasing (with strictly positive column differences) up to a "
        "permutation fixing the first column");
  const std::vector<int>& tau = *tau_opt;
  MatZ mp = permute_cols(m, tau);  // strictly decreasing, differences positive

  FactorChain chain;
  chain.tau = tau;
  const long k = d - 3 + m(0, 0).get_si();
  chain.k = static_cast<int>(k);

  // Difference columns a^(1)..a^(d'), rows indexed 0..d-1.
  chain.a.assign(dp + 1, {});
  chain.a[1] = mp.col(dp - 1);
  for (int t = 2; t <= dp - 1; ++t) {
    std::vector<mpz_class> v(d);
    for (int s = 0; s < d; ++s) v[s] = mp(s, dp - t) - mp(s, dp + 1 - t);
    chain.a[t] = std::move(v);
  }
  {
    std::vector<mpz_class> v(d);
    for (int s = 0; s < d; ++s) v[s] = mp(s, 0) - mp(s, 1) - (s == 0 ? 2 : 1);
    chain.a[dp] = std::move(v);
  }
  // Top-row budget: sum of a^(t)(0) = m(0,0) - 2.
  mpz_class budget = 0;
  for (int t = 1; t <= dp; ++t) budget += chain.a[t][0];
  if (budget != m(0, 0) - 2) throw Error("difference columns break the top-row budget");

  auto a0_partial = [&](int t0) {
    mpz_class s = 0;
    for (int t = 1; t <= t0; ++t) s += chain.a[t][0];
    return static_cast<int>(s.get_si());
  };

  chain.w.assign(chain.k + 1, {});
  chain.w[0] = interval_set(0, d - 1);
  for (int j = 1; j <= d - 1; ++j) {
    mpz_class head_gap = chain.a[1][0] - chain.a[1][j];
    VertexSet wj = interval_set(j, d - 1 + static_cast<int>(head_gap.get_si()));
    for (int t0 = 2; t0 <= dp; ++t0) {
      int lo = d - 1 + a0_partial(t0 - 1);
      int hi = d - 2 + a0_partial(t0) - static_cast<int>(chain.a[t0][j].get_si());
      wj = set_union(wj, interval_set(lo, hi));
    }
    chain.w[j] = std::move(wj);
  }
  chain.w[d] = interval_set(d, chain.k - 1);
  const int a01 = static_cast<int>(chain.a[1][0].get_si());
  if (a01 >= 3)
    for (int j = d + 1; j <= d - 2 + a01; ++j) chain.w[j] = interval_set(j, chain.k);
  for (int t0 = 2; t0 <= dp; ++t0) {
    for (int j = d - 1 + a0_partial(t0 - 1); j <= d - 2 + a0_partial(t0); ++j) {
      VertexSet extra;
      for (int x = dp + 2 - t0; x <= dp; ++x) extra.push_back(chain.k + tau[x - 1]);
      std::sort(extra.begin(), extra.end());
      chain.w[j] = set_union(interval_set(j, chain.k), extra);
    }
  }
  chain.w[chain.k] = interval_set(chain.k, chain.k + dp - 1);

  // Every consecutive pair must be basic and the product must reproduce m.
  IndexedMatrix prod = chain_product(chain.w);
  IndexedMatrix target{interval_set(0, d - 1), interval_set(chain.k, chain.k + dp - 1), m};
  if (!equal_up_to_reindexing(prod, target))
    throw Error("basic chain product does not reproduce the matrix");
  return chain;
}

// ----------------------------------------------------------------- pipeline

namespace {

// ln(ratio) <= bound, decided by certified enclosures (the ratio is
// rational, so equality with e^bound cannot occur).
bool log_leq(const mpq_class& ratio, long bound) {
  if (ratio == 1) return true;
  for (long bits = kPrecStart;; bits *= 2) {
    if (bits > prec_cap()) throw PrecisionCapExceeded("diameter comparison undecided");
    Interval lr = log_ratio(ratio, bits);
    if (mpfr_cmp_si(lr.hi.raw(), bound) <= 0) return true;
    if (mpfr_cmp_si(lr.lo.raw(), bound) > 0) return false;
  }
}

bool is_irrational(const GroupElement& e) { return !e.exact_rational().has_value(); }

// Normalize an irrational generator into (0, 1/2) using 1 and negation.
GroupElement normalize_alpha(const GroupElement& g) {
  GroupElement a = fractional_part(g);
  GroupElement one = GroupElement::one(a.basis());
  GroupElement half_diff = a + a - one;  // 2a - 1
  if (sign_of(half_diff) > 0) a = one - a;
  return a;
}

}  // namespace

// Fractional parts replace representatives >= 1 when the reduction keeps
// the lattice; otherwise plain sign fixes are used.
std::vector<GroupElement> positive_decreasing_basis(const std::vector<GroupElement>& basis) {
  std::vector<GroupElement> fixed;
  for (const auto& b : basis) {
    GroupElement e = b;
    if (e.is_zero()) throw Error("zero element in a lattice basis");
    if (sign_of(e) < 0) e = -e;
    fixed.push_back(std::move(e));
  }
  std::vector<GroupElement> reduced;
  for (const auto& e : fixed) {
    GroupElement one = GroupElement::one(e.basis());
    if (sign_of(e - one) >= 0) {
      GroupElement f = fractional_part(e);
      reduced.push_back(f.is_zero() ? e : f);
    } else {
      reduced.push_back(e);
    }
  }
  auto rebased = lattice_basis(reduced);
  std::vector<GroupElement> chosen;
  if (rebased.size() == basis.size() && same_lattice(rebased, basis)) {
    for (auto& e : rebased)
      chosen.push_back(sign_of(e) < 0 ? -e : e);
  } else {
    chosen = fixed;
  }
  std::sort(chosen.begin(), chosen.end(), [](const GroupElement& x, const GroupElement& y) {
    GroupElement diff = x - y;
    if (diff.is_zero()) throw Error("repeated value in a lattice basis");
    return sign_of(diff) > 0;
  });
  return chosen;
}

MatZ random_qualifying_matrix(std::mt19937& rng, int d, int dp, int entry_cap) {
  if (d < 2 || dp < 2) throw InvalidInput("qualifying matrices need d, d' >= 2");
  auto rand_pos_dec = [&](int boost) {
    std::vector<mpz_class> v(d);
    long cur = 1 + static_cast<long>(rng() % 2);
    for (int i = d - 1; i >= 0; --i) {
      v[i] = cur;
      cur += 1 + static_cast<long>(rng() % 2) + (i == 1 ? boost : 0);
    }
    return v;
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<mpz_class>> cols(dp);
    cols[dp - 1] = rand_pos_dec(0);
    for (int j = dp - 2; j >= 0; --j) {
      std::vector<mpz_class> diff = rand_pos_dec(j == 0 ? 2 : 0);
      cols[j].resize(d);
      for (int i = 0; i < d; ++i) cols[j][i] = cols[j + 1][i] + diff[i];
    }
    if (cols[0][0] < 5) continue;
    bool capped = false;
    for (const auto& c : cols)
      for (const auto& x : c)
        if (x > entry_cap) capped = true;
    if (capped) continue;
    std::vector<int> tau(dp);
    std::iota(tau.begin(), tau.end(), 0);
    std::shuffle(tau.begin() + 1, tau.end(), rng);
    MatZ m(d, dp);
    for (int j = 0; j < dp; ++j)
      for (int i = 0; i < d; ++i) m(i, tau[j]) = cols[j][i];
    return m;
  }
  throw Error("qualifying matrix sampler exhausted its attempts");
}

PipelinePresentation build_pipeline(const std::vector<GroupElement>& gens, int levels,
                                    int qualification_cap) {
  if (levels < 1) throw InvalidInput("pipeline needs at least one level");
  if (gens.size() < 2) throw InvalidInput("pipeline needs the unit and one irrational generator");
  const BasisPtr basis = gens[0].basis();
  GroupElement one = GroupElement::one(basis);
  if (!(gens[0] == one)) throw InvalidInput("first generator must be 1");
  if (!is_irrational(gens[1]))
    throw InvalidInput("second generator must be irrational (rational groups take the odometer branch)");

  PipelinePresentation p;
  GroupElement alpha = normalize_alpha(gens[1]);
  p.alphas.push_back(one);
  p.alphas.push_back(alpha);
  for (size_t i = 2; i < gens.size(); ++i) p.alphas.push_back(gens[i]);

  p.bases.push_back({one});
  p.ranks.push_back(1);
  p.bases.push_back({one - alpha, alpha});
  p.ranks.push_back(2);
  p.m.push_back(MatZ{{1, 1}});
  p.qualification_steps.push_back(0);

  for (int lvl = 1; lvl < levels; ++lvl) {
    GroupElement next_alpha =
        static_cast<size_t>(lvl + 1) < p.alphas.size() ? p.alphas[lvl + 1] : p.alphas.back();
    if (static_cast<size_t>(lvl + 1) >= p.alphas.size()) p.alphas.push_back(next_alpha);

    std::vector<GroupElement> gens_next = p.bases[lvl];
    gens_next.push_back(next_alpha);
    std::vector<GroupElement> lat = lattice_basis(gens_next);
    const int d_next = static_cast<int>(lat.size());
    if (d_next < 2) throw InvalidInput("group rank fell below 2");

    std::vector<GroupElement> cur = positive_decreasing_basis(lat);
    bool qualified = false;
    for (int n = 1; n <= qualification_cap; ++n) {
      AdmissibleStep step = euclid_step(cur);
      if (step.d_prime < d_next)
        throw RankDropped("euclid iteration dropped rank during qualification");
      cur = step.x_prime;

      // Integer change of basis with y^(lvl) = M * cur.
      MatZ m(static_cast<int>(p.bases[lvl].size()), d_next);
      for (size_t i = 0; i < p.bases[lvl].size(); ++i) {
        auto coords = rational_coords(cur, p.bases[lvl][i]);
        if (!coords) throw Error("level basis not in the span of the iterated basis");
        for (int j = 0; j < d_next; ++j) {
          if ((*coords)[j].get_den() != 1) throw Error("non-integer change of basis");
          m(static_cast<int>(i), j) = (*coords)[j].get_num();
        }
      }
      if (!strictly_positive(m)) continue;
      if (m(0, 0) < 5) continue;
      if (!strong_decreasing_permutation(m)) continue;
      if (!log_leq(proj_diameter(m).ratio, 1)) continue;

      p.bases.push_back(cur);
      p.ranks.push_back(d_next);
      p.m.push_back(std::move(m));
      p.qualification_steps.push_back(n);
      qualified = true;
      break;
    }
    if (!qualified)
      throw QualificationTimeout("no qualified change of basis within " +
                                 std::to_string(qualification_cap) + " euclid iterations");
  }

  // Exact inverse-limit identities y^(l) = M_l y^(l+1).
  for (int lvl = 0; lvl < p.levels(); ++lvl) {
    auto lhs = apply_matrix(p.m[lvl], p.bases[lvl + 1]);
    for (size_t i = 0; i < lhs.size(); ++i)
      if (!(lhs[i] == p.bases[lvl][i])) throw Error("pipeline identity failed");
  }
  for (int lvl = 1; lvl < p.levels(); ++lvl) p.chains.push_back(factor_into_basics(p.m[lvl]));
  return p;
}

VertexAssembly assemble_vertex_sequence(const PipelinePresentation& p) {
  if (p.chains.empty()) throw InvalidInput("pipeline has no factorable levels");
  VertexAssembly a;
  a.t.push_back(1);
  for (const auto& chain : p.chains) a.t.push_back(a.t.back() + chain.k);

  const int t_last = a.t.back();
  a.v.assign(t_last, {});
  for (size_t l = 0; l < p.chains.size(); ++l) {
    const auto& chain = p.chains[l];
    const int base = a.t[l];
    for (int i = 0; i <= chain.k; ++i) {
      VertexSet shifted;
      for (int x : chain.w[i]) shifted.push_back(base + x);
      int j = base + i;  // global index of W_i
      if (j > t_last) break;
      if (!a.v[j - 1].empty() && a.v[j - 1] != shifted)
        throw Error("chain boundary sets disagree");
      a.v[j - 1] = std::move(shifted);
    }
  }
  for (size_t l = 0; l < a.t.size(); ++l) {
    a.q.push_back(a.t[l]);
    a.q.push_back(a.t[l] + p.ranks[l + 1]);
  }

  for (size_t i = 0; i + 1 < a.q.size(); ++i)
    if (a.q[i] >= a.q[i + 1]) throw Error("q sequence not strictly increasing");
  return a;
}

bool vertex_block_property(const VertexAssembly& a) {
  auto block_of = [&](int j) {
    // n with j in [q_n, q_{n+1} - 1]; q is 1-based (a.q[0] = q_1).
    for (size_t n = 0; n + 1 < a.q.size(); ++n)
      if (a.q[n] <= j && j < a.q[n + 1]) return static_cast<int>(n);
    return -1;
  };
  for (int j = 1; j + 1 <= static_cast<int>(a.v.size()); ++j) {
    int n = block_of(j);
    if (n < 0) continue;
    if (static_cast<size_t>(n) + 2 >= a.q.size()) continue;
    int lo = a.q[n + 1], hi = a.q[n + 2] - 1;
    const VertexSet& vj = a.v[j - 1];
    const VertexSet& vj1 = a.v[j];
    for (int x : vj1) {
      if (std::binary_search(vj.begin(), vj.end(), x)) continue;
      if (x < lo || x > hi) return false;
    }
  }
  return true;
}

}  // namespace orbitscale

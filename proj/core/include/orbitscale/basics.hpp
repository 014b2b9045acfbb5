#ifndef ORBITSCALE_BASICS_HPP
#define ORBITSCALE_BASICS_HPP

#include <optional>
#include <random>
#include <vector>

#include "orbitscale/exact.hpp"
#include "orbitscale/matrix.hpp"

namespace orbitscale {

// Finite set of non-negative integers, sorted ascending.
using VertexSet = std::vector<int>;

VertexSet interval_set(int lo, int hi);  // [lo, hi], empty when lo > hi

// 0/1 matrix B(V, V') with v = min V: column v+1 is e_v + e_{v+1}, column
// j in V \ {v, v+1} is e_j, column j in V' \ V is e_v.  Defined when
// v+1 in V, V' contains V \ {v} and min V' = v+1.
struct BasicMatrix {
  VertexSet rows, cols;
  MatZ entries;
};
BasicMatrix basic_matrix(const VertexSet& v, const VertexSet& vp);

// Matrix with explicit row/column index sets.
struct IndexedMatrix {
  VertexSet rows, cols;
  MatZ entries;
};

// Entry equality under the unique increasing bijections of the index sets.
bool equal_up_to_reindexing(const IndexedMatrix& a, const IndexedMatrix& b);

// Columns strictly decreasing and consecutive column differences strictly
// decreasing (the literal decreasing-matrix predicate).
bool strictly_decreasing_matrix(const MatZ& m);

// Column permutation tau fixing 0 that makes m strictly decreasing; found
// by the descending-first-row sort, with exhaustive search for up to 8
// columns as fallback.  nullopt when no such permutation exists.
std::optional<std::vector<int>> decreasing_permutation(const MatZ& m);

// tau for the stronger predicate needed by the chain construction: columns
// strictly decreasing and consecutive differences strictly positive and
// strictly decreasing.  Unique when it exists (the first row is then
// strictly decreasing).
std::optional<std::vector<int>> strong_decreasing_permutation(const MatZ& m);

// Chain W_0..W_k with W_0 = [0, d-1], W_k = [k, k + d'-1], consecutive
// basic pairs, and basic product equal to m up to increasing re-indexing.
// Requires m strictly positive, d, d' >= 2, m(0,0) >= 5 and the strong
// decreasing predicate up to a permutation.
struct FactorChain {
  int k = 0;
  std::vector<int> tau;                    // column permutation (0-based)
  std::vector<VertexSet> w;                // W_0..W_k
  std::vector<std::vector<mpz_class>> a;   // a^(1)..a^(d'), rows 0..d-1
};
FactorChain factor_into_basics(const MatZ& m);

// Product B(W_0,W_1)...B(W_{k-1},W_k) with its index sets.
IndexedMatrix chain_product(const std::vector<VertexSet>& w);

// Group pipeline: per-level strictly decreasing positive bases y^(l) of the
// groups generated by growing generator prefixes, connected by integer
// strictly positive matrices y^(l) = M_l y^(l+1) with M_l(0,0) >= 5 and
// projective diameter at most 1 for l >= 1.
struct PipelinePresentation {
  std::vector<GroupElement> alphas;              // normalized generators
  std::vector<std::vector<GroupElement>> bases;  // y^(0)..y^(L)
  std::vector<int> ranks;                        // d_0..d_L
  std::vector<MatZ> m;                           // M_0..M_{L-1}
  std::vector<FactorChain> chains;               // chains of M_1..M_{L-1}
  std::vector<int> qualification_steps;          // euclid iterations per level

  int levels() const { return static_cast<int>(m.size()); }
};

// levels = number of connecting matrices M_0..M_{levels-1}; generator list
// starts with 1 followed by at least one irrational (normalized into
// (0, 1/2)); generators beyond the list repeat the last one.
PipelinePresentation build_pipeline(const std::vector<GroupElement>& gens, int levels,
                                    int qualification_cap = 64);

// Global vertex sets V_1..V_{t_L} by translating the chains onto block
// offsets t_1 = 1, t_{l+1} = t_l + k_l, with q_{2l-1} = t_l and
// q_{2l} = t_l + d_l.
struct VertexAssembly {
  std::vector<int> t;             // t_1..t_L
  std::vector<VertexSet> v;       // V_1..V_{t_L}
  std::vector<int> q;             // q_1..q_{2L}
};
VertexAssembly assemble_vertex_sequence(const PipelinePresentation& p);

// V_{j+1} \ V_j lands in [q_{n+1}, q_{n+2}-1] for j in [q_n, q_{n+1}-1].
bool vertex_block_property(const VertexAssembly& a);

// Strictly positive pairwise-distinct representatives of a lattice basis,
// sorted descending; used to seed the euclid iteration.
std::vector<GroupElement> positive_decreasing_basis(const std::vector<GroupElement>& basis);

// Random integer matrix meeting the factorization preconditions: strictly
// positive, entries <= entry_cap, top-left >= 5, strictly decreasing with
// strictly positive differences up to a random permutation fixing column 0.
MatZ random_qualifying_matrix(std::mt19937& rng, int d, int dp, int entry_cap);

}  // namespace orbitscale

#endif

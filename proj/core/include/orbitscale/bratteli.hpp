#ifndef ORBITSCALE_BRATTELI_HPP
#define ORBITSCALE_BRATTELI_HPP

#include <optional>
#include <string>
#include <vector>

#include "orbitscale/matrix.hpp"
#include "orbitscale/odometer.hpp"

namespace orbitscale {

struct BratteliEdge {
  int src = 0;  // vertex label in the lower level
  int dst = 0;  // vertex label in the upper level
};

// Finite truncation of an ordered Bratteli diagram.  levels[0] = {0} is the
// root; edges[j] connects levels[j] to levels[j+1].  Edges arriving at the
// same vertex are totally ordered by their position in the edge vector
// (earlier = smaller).
struct OrderedBratteliDiagram {
  std::vector<std::vector<int>> levels;
  std::vector<std::vector<BratteliEdge>> edges;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  void validate() const;  // root singleton, connectivity, level membership

  bool edge_minimal(int j, int eid) const;  // minimal among edges into its dst
  bool edge_maximal(int j, int eid) const;
  // Index of the minimal edge in edges[j] arriving at vertex v, or -1.
  int minimal_incoming(int j, int v) const;
  int vertex_index(int level, int label) const;  // position within levels[level]
};

// Root-to-depth path: edge_ids[j] indexes into edges[j].
struct FinitePath {
  std::vector<int> edge_ids;
  bool operator==(const FinitePath& o) const { return edge_ids == o.edge_ids; }
};

// The kneading Bratteli diagram of Q, truncated at level J.  Requires
// Q(0) = Q(1) = 0 and Q(k) <= k-2 for k >= 2 on the prefix.  Level sets:
// V_1 = {k : Q(k) = 0} and V_j = {k >= j : Q(k-1) <= j-2} for j >= 2,
// computed over the known prefix.
OrderedBratteliDiagram diagram_from_Q(const KneadingMap& q, int J);

// Edge counts per level: matrices indexed levels[j] x levels[j+1].
std::vector<MatZ> transition_matrices(const OrderedBratteliDiagram& b);

// Successor in the Vershik order; nullopt when every edge is maximal
// within the truncation.
std::optional<FinitePath> vershik_successor(const OrderedBratteliDiagram& b, const FinitePath& p);

struct MinimalPathResult {
  bool unique = false;
  FinitePath path;  // canonical all-minimal path when unique
};

// All-minimal backward chains from the deepest level must coalesce above
// the root; otherwise the truncation shows several minimal paths.
MinimalPathResult unique_minimal_path(const OrderedBratteliDiagram& b);

std::string to_dot(const OrderedBratteliDiagram& b);

// Orbit dictionary between the Vershik orbit of the minimal path and the
// adding-machine orbit <0>, <1>, ... of Q, both truncated to `depth`.
struct ConjugacyReport {
  long requested_steps = 0;
  long resolved_steps = 0;   // orbit points before an unresolved successor
  long distinct_keys = 0;
  bool anchor_ok = false;    // the minimal path is the canonical j-chain
  bool single_valued = false;
  bool injective = false;
  bool pass = false;
};

ConjugacyReport conjugacy_check(const OrderedBratteliDiagram& b, const KneadingMap& q,
                                long n_steps, int depth);

}  // namespace orbitscale

#endif

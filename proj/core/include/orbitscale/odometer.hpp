#ifndef ORBITSCALE_ODOMETER_HPP
#define ORBITSCALE_ODOMETER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orbitscale {

// Finite prefix Q(0..K) of a kneading map: Q(0) = 0 and Q(k) <= k-1.
struct KneadingMap {
  std::vector<int> values;

  int K() const { return static_cast<int>(values.size()) - 1; }
  int operator()(int k) const;
  void validate() const;  // throws InvalidKneadingMap

  // Q(0) = Q(1) = 0 and Q(k) <= k-2 for k >= 2 on the whole prefix.
  bool bound_ok() const;
};

// Witness (q_n) for the block condition Q([q_n, q_{n+1}-1]) in
// [q_{n-1}, q_n - 1], constructed greedily with q_0 = 0, q_1 = 1 and each
// next boundary at the first index whose value leaves the allowed block.
// Returns nullopt when the prefix admits no witness (a value drops below
// the previous block, or no second boundary is ever forced).
std::optional<std::vector<int>> increasing_modulo_intervals(const KneadingMap& q);

// Q(k) = smallest j >= 0 with k in V_{j+1}, from vertex sets V_1..V_J
// (vertex_sets[j-1] holds V_j, each sorted ascending).  Validates
// min V_j = j, j+1 in V_j and V_j \ {j} in V_{j+1}.
KneadingMap kneading_from_vertex_sets(const std::vector<std::vector<int>>& vertex_sets);

// S_0 = 1, S_k = S_{k-1} + S_{Q(k)} for k = 1..K.
struct CuttingTimes {
  std::vector<std::int64_t> s;
};
CuttingTimes cutting_times(const KneadingMap& q, int K);

// {0,1} word x_0..x_{L-1}.  finite_support marks that all coordinates
// beyond the stored prefix are zero; otherwise the word is a truncation of
// an unknown point and carries may be unresolvable.
struct OdometerWord {
  std::vector<std::uint8_t> x;
  bool finite_support = true;

  int depth() const { return static_cast<int>(x.size()); }
  std::string str() const;
};

// x_k = 1 forces x_j = 0 for j in [Q(k+1), k-1] (checked where Q is known).
bool is_admissible(const OdometerWord& w, const KneadingMap& q);

// Greedy expansion of n over the scale (S_k): the unique admissible finite
// word with digit sum n.  Throws DepthExceeded when n needs a position at
// or beyond depth, or beyond the known scale prefix.
OdometerWord expansion(std::int64_t n, const KneadingMap& q, int depth);

// Adding one.  For finite-support words this is expansion(sum + 1).  For
// truncated words the carry is performed only when the result is forced for
// every admissible tail; nullopt reports an unresolved carry.
std::optional<OdometerWord> odometer_successor(const OdometerWord& w, const KneadingMap& q);

struct WordStats {
  std::int64_t sigma_partial = 0;     // sum_{k<=n} x_k S_k
  std::optional<int> first_nonzero;   // q(x); nullopt when the prefix is zero
};
WordStats word_stats(const OdometerWord& w, const KneadingMap& q, int n);

// Kneading map of the mixed-radix adding machine with the given multipliers
// (each >= 2): with t_1 = m_1 - 1 and t_{i+1} = t_i + m_{i+1} - 1, Q is 0 on
// [0, t_1] and t_i on [t_i + 1, t_{i+1}].  The scales satisfy
// S_{t_i} = m_1 * ... * m_i.
KneadingMap kneading_from_odometer(const std::vector<std::int64_t>& multipliers);

// Kneading map prefix with Q(k) = max(k-2, 0); realized by the vertex sets
// V_j = {j, j+1} and the golden-mean pipeline.
KneadingMap fibonacci_kneading(int K);

}  // namespace orbitscale

#endif

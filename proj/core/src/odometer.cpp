#include "orbitscale/odometer.hpp"

#include <algorithm>
#include <limits>

#include "orbitscale/errors.hpp"

namespace orbitscale {

int KneadingMap::operator()(int k) const {
  if (k < 0 || k > K()) throw DepthExceeded("kneading map index " + std::to_string(k) +
                                            " outside [0, " + std::to_string(K()) + "]");
  return values[k];
}

void KneadingMap::validate() const {
  if (values.empty() || values[0] != 0) throw InvalidKneadingMap("Q(0) must be 0");
  for (int k = 1; k <= K(); ++k)
    if (values[k] < 0 || values[k] > k - 1)
      throw InvalidKneadingMap("Q(" + std::to_string(k) + ") = " + std::to_string(values[k]) +
                               " violates Q(k) <= k-1");
}

bool KneadingMap::bound_ok() const {
  if (values.empty() || values[0] != 0) return false;
  if (K() >= 1 && values[1] != 0) return false;
  for (int k = 2; k <= K(); ++k)
    if (values[k] > k - 2) return false;
  return true;
}

std::optional<std::vector<int>> increasing_modulo_intervals(const KneadingMap& q) {
  q.validate();
  const int K = q.K();
  std::vector<int> w{0, 1};
  int prev = 0, cur = 1;  // q_{n-1}, q_n
  bool saw_second = false;
  for (int k = 1; k <= K; ++k) {
    if (q(k) >= cur) {
      // First index leaving the block: forced boundary q_{n+1} = k.
      w.push_back(k);
      prev = cur;
      cur = k;
      saw_second = true;
    } else if (q(k) < prev) {
      return std::nullopt;  // value below the previous block; no witness exists
    }
  }
  if (!saw_second) return std::nullopt;  // flat prefix (Q = 0 throughout)
  return w;
}

KneadingMap kneading_from_vertex_sets(const std::vector<std::vector<int>>& vertex_sets) {
  const int J = static_cast<int>(vertex_sets.size());
  if (J == 0) throw MalformedSequence("empty vertex sequence");
  for (int j = 1; j <= J; ++j) {
    const auto& v = vertex_sets[j - 1];
    if (v.empty() || !std::is_sorted(v.begin(), v.end()))
      throw MalformedSequence("vertex sets must be sorted and non-empty");
    if (v.front() != j)
      throw MalformedSequence("min V_" + std::to_string(j) + " must be " + std::to_string(j));
    if (!std::binary_search(v.begin(), v.end(), j + 1))
      throw MalformedSequence("V_" + std::to_string(j) + " must contain " + std::to_string(j + 1));
    if (j < J) {
      const auto& next = vertex_sets[j];
      for (int x : v)
        if (x != j && !std::binary_search(next.begin(), next.end(), x))
          throw MalformedSequence("V_j \\ {j} must be contained in V_{j+1}");
    }
  }
  int max_label = 0;
  for (const auto& v : vertex_sets) max_label = std::max(max_label, v.back());
  KneadingMap q;
  q.values.assign(max_label + 1, 0);
  for (int k = 1; k <= max_label; ++k) {
    int first = -1;
    for (int j = 1; j <= J; ++j) {
      const auto& v = vertex_sets[j - 1];
      if (std::binary_search(v.begin(), v.end(), k)) {
        first = j;
        break;
      }
    }
    if (first < 0) throw MalformedSequence("vertex " + std::to_string(k) + " never appears");
    q.values[k] = first - 1;
  }
  q.validate();
  return q;
}

CuttingTimes cutting_times(const KneadingMap& q, int K) {
  if (K > q.K()) throw DepthExceeded("cutting_times beyond the kneading prefix");
  CuttingTimes c;
  c.s.assign(K + 1, 0);
  c.s[0] = 1;
  for (int k = 1; k <= K; ++k) {
    std::int64_t add = c.s[q(k)];
    if (c.s[k - 1] > std::numeric_limits<std::int64_t>::max() - add)
      throw Error("cutting time overflow (use a shorter prefix)");
    c.s[k] = c.s[k - 1] + add;
  }
  return c;
}

std::string OdometerWord::str() const {
  std::string s;
  s.reserve(x.size());
  for (auto b : x) s.push_back(b ? '1' : '0');
  return s;
}

bool is_admissible(const OdometerWord& w, const KneadingMap& q) {
  const int L = w.depth();
  for (int k = 0; k < L; ++k) {
    if (!w.x[k]) continue;
    if (k + 1 > q.K()) continue;  // window start unknown past the prefix
    for (int j = q(k + 1); j <= k - 1; ++j)
      if (j >= 0 && j < L && w.x[j]) return false;
  }
  return true;
}

OdometerWord expansion(std::int64_t n, const KneadingMap& q, int depth) {
  if (n < 0) throw InvalidInput("expansion of a negative integer");
  CuttingTimes c = cutting_times(q, q.K());
  if (n > c.s[q.K()])
    throw DepthExceeded("expansion needs scale values beyond the kneading prefix");
  OdometerWord w;
  w.x.assign(depth, 0);
  w.finite_support = true;
  std::int64_t rest = n;
  int top = q.K();
  while (rest > 0) {
    while (top > 0 && c.s[top] > rest) --top;
    if (c.s[top] > rest) throw Error("greedy expansion failed");
    if (top >= depth) throw DepthExceeded("expansion needs position " + std::to_string(top) +
                                          " at depth " + std::to_string(depth));
    w.x[top] = 1;
    rest -= c.s[top];
    --top;
  }
  return w;
}

namespace {

std::int64_t prefix_sum(const OdometerWord& w, const CuttingTimes& c) {
  std::int64_t s = 0;
  for (int k = 0; k < w.depth(); ++k)
    if (w.x[k]) s += c.s[k];
  return s;
}

int top_one(const OdometerWord& w) {
  for (int k = w.depth() - 1; k >= 0; --k)
    if (w.x[k]) return k;
  return -1;
}

}  // namespace

std::optional<OdometerWord> odometer_successor(const OdometerWord& w, const KneadingMap& q) {
  const int L = w.depth();
  if (L == 0) throw InvalidInput("empty word");
  if (L - 1 > q.K()) throw DepthExceeded("word deeper than the kneading prefix");
  CuttingTimes c = cutting_times(q, q.K());
  std::int64_t n = prefix_sum(w, c);

  OdometerWord next;
  try {
    next = expansion(n + 1, q, L);
  } catch (const DepthExceeded&) {
    return std::nullopt;  // the carry leaves the truncation
  }
  next.finite_support = w.finite_support;
  if (w.finite_support) return next;

  // Truncated word: the new prefix is forced only if every admissible tail
  // compatible with the old prefix stays compatible with the new one.  A
  // tail 1 at position k >= L forces zeros on [Q(k+1), L-1].  Positions
  // beyond the known kneading prefix are treated as having windows above
  // the truncation, which is exact for increasing-modulo-intervals maps
  // with a prefix long enough for the word depth.
  int t = top_one(next);
  for (int k1 = L + 1; k1 <= q.K(); ++k1) {  // k1 = k + 1 over known windows
    int win = q(k1);
    if (win > L - 1) continue;
    bool old_clear = true;
    for (int j = std::max(win, 0); j <= L - 1; ++j)
      if (w.x[j]) {
        old_clear = false;
        break;
      }
    if (old_clear && t >= win) return std::nullopt;
  }
  return next;
}

WordStats word_stats(const OdometerWord& w, const KneadingMap& q, int n) {
  if (n < 0 || n >= w.depth()) throw DepthExceeded("word_stats index outside the truncation");
  CuttingTimes c = cutting_times(q, std::min(n, q.K()));
  WordStats st;
  for (int k = 0; k <= n; ++k)
    if (w.x[k]) st.sigma_partial += c.s[k];
  for (int k = 0; k < w.depth(); ++k)
    if (w.x[k]) {
      st.first_nonzero = k;
      break;
    }
  return st;
}

KneadingMap kneading_from_odometer(const std::vector<std::int64_t>& multipliers) {
  if (multipliers.empty()) throw InvalidMultiplier("need at least one multiplier");
  for (auto m : multipliers)
    if (m < 2) throw InvalidMultiplier("multipliers must be >= 2");
  std::vector<std::int64_t> t(multipliers.size());
  t[0] = multipliers[0] - 1;
  for (size_t i = 1; i < multipliers.size(); ++i) t[i] = t[i - 1] + multipliers[i] - 1;
  KneadingMap q;
  q.values.assign(static_cast<size_t>(t.back()) + 1, 0);
  for (size_t i = 0; i + 1 < multipliers.size(); ++i)
    for (std::int64_t k = t[i] + 1; k <= t[i + 1]; ++k)
      q.values[static_cast<size_t>(k)] = static_cast<int>(t[i]);
  q.validate();
  return q;
}

KneadingMap fibonacci_kneading(int K) {
  KneadingMap q;
  q.values.assign(K + 1, 0);
  for (int k = 2; k <= K; ++k) q.values[k] = k - 2;
  return q;
}

}  // namespace orbitscale

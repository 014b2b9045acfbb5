#include "orbitscale/bratteli.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "orbitscale/errors.hpp"

namespace orbitscale {

void OrderedBratteliDiagram::validate() const {
  if (levels.empty() || levels[0] != std::vector<int>{0})
    throw InvalidInput("level 0 must be the singleton {0}");
  if (edges.size() + 1 != levels.size()) throw InvalidInput("edge levels must match vertex levels");
  for (size_t j = 0; j < edges.size(); ++j) {
    std::set<int> with_out, with_in;
    for (const auto& e : edges[j]) {
      if (vertex_index(static_cast<int>(j), e.src) < 0)
        throw InvalidInput("edge source not in its level");
      if (vertex_index(static_cast<int>(j + 1), e.dst) < 0)
        throw InvalidInput("edge range not in its level");
      with_out.insert(e.src);
      with_in.insert(e.dst);
    }
    for (int v : levels[j])
      if (!with_out.count(v))
        throw InvalidInput("vertex " + std::to_string(v) + " at level " + std::to_string(j) +
                           " has no outgoing edge");
    for (int v : levels[j + 1])
      if (!with_in.count(v))
        throw InvalidInput("vertex " + std::to_string(v) + " at level " + std::to_string(j + 1) +
                           " has no incoming edge");
  }
}

int OrderedBratteliDiagram::vertex_index(int level, int label) const {
  const auto& vs = levels[level];
  auto it = std::lower_bound(vs.begin(), vs.end(), label);
  if (it == vs.end() || *it != label) return -1;
  return static_cast<int>(it - vs.begin());
}

bool OrderedBratteliDiagram::edge_minimal(int j, int eid) const {
  int dst = edges[j][eid].dst;
  for (int i = 0; i < eid; ++i)
    if (edges[j][i].dst == dst) return false;
  return true;
}

bool OrderedBratteliDiagram::edge_maximal(int j, int eid) const {
  int dst = edges[j][eid].dst;
  for (size_t i = eid + 1; i < edges[j].size(); ++i)
    if (edges[j][i].dst == dst) return false;
  return true;
}

int OrderedBratteliDiagram::minimal_incoming(int j, int v) const {
  for (size_t i = 0; i < edges[j].size(); ++i)
    if (edges[j][i].dst == v) return static_cast<int>(i);
  return -1;
}

OrderedBratteliDiagram diagram_from_Q(const KneadingMap& q, int J) {
  q.validate();
  if (!q.bound_ok())
    throw InvalidKneadingMap("diagram needs Q(0) = Q(1) = 0 and Q(k) <= k-2 for k >= 2");
  if (J < 1) throw InvalidInput("diagram depth must be >= 1");
  const int K = q.K();
  if (J > K) throw DepthExceeded("diagram depth beyond the kneading prefix");

  OrderedBratteliDiagram b;
  b.levels.resize(J + 1);
  b.levels[0] = {0};
  for (int k = 1; k <= K; ++k)
    if (q(k) == 0) b.levels[1].push_back(k);
  for (int j = 2; j <= J; ++j)
    for (int k = j; k <= K + 1; ++k)
      if (q(k - 1) <= j - 2) b.levels[j].push_back(k);

  b.edges.resize(J);
  for (int j = 1; j <= J; ++j) {
    const auto& prev = b.levels[j - 1];
    const auto& curr = b.levels[j];
    std::set<std::pair<int, int>> present;
    auto add = [&](int s, int d, bool front) {
      if (!present.insert({s, d}).second) return;
      if (front)
        b.edges[j - 1].insert(b.edges[j - 1].begin(), BratteliEdge{s, d});
      else
        b.edges[j - 1].push_back(BratteliEdge{s, d});
    };
    // {j-1 -> j} first so it is the minimal edge into vertex j.
    add(j - 1, j, false);
    for (int k : curr)
      if (!std::binary_search(prev.begin(), prev.end(), k)) add(j - 1, k, false);
    for (int k : prev)
      if (k != j - 1 && std::binary_search(curr.begin(), curr.end(), k)) add(k, k, false);
  }
  b.validate();
  return b;
}

std::vector<MatZ> transition_matrices(const OrderedBratteliDiagram& b) {
  std::vector<MatZ> out;
  out.reserve(b.edges.size());
  for (int j = 0; j < static_cast<int>(b.edges.size()); ++j) {
    MatZ m(static_cast<int>(b.levels[j].size()), static_cast<int>(b.levels[j + 1].size()));
    for (const auto& e : b.edges[j])
      m(b.vertex_index(j, e.src), b.vertex_index(j + 1, e.dst)) += 1;
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

// Backward all-minimal chain ending at (level, vertex): the edge ids from
// the root, each minimal among its arriving set.
std::optional<std::vector<int>> backward_minimal_chain(const OrderedBratteliDiagram& b, int level,
                                                       int vertex) {
  std::vector<int> ids(level);
  int v = vertex;
  for (int j = level; j >= 1; --j) {
    int eid = b.minimal_incoming(j - 1, v);
    if (eid < 0) return std::nullopt;
    ids[j - 1] = eid;
    v = b.edges[j - 1][eid].src;
  }
  return ids;
}

}  // namespace

MinimalPathResult unique_minimal_path(const OrderedBratteliDiagram& b) {
  MinimalPathResult res;
  const int J = b.depth();
  if (J == 0) {
    res.unique = true;
    return res;
  }
  std::vector<std::vector<int>> chains;
  for (int v : b.levels[J]) {
    auto c = backward_minimal_chain(b, J, v);
    if (!c) continue;
    chains.push_back(std::move(*c));
  }
  if (chains.empty()) return res;
  // Chains that fail to share their level-1 vertex never coalesce: distinct
  // minimal paths within the truncation.
  int v1 = b.edges[0][chains[0][0]].dst;
  for (const auto& c : chains)
    if (b.edges[0][c[0]].dst != v1) return res;
  res.unique = true;
  // Canonical representative: the chain through the smallest deepest label.
  res.path.edge_ids = chains.front();
  return res;
}

std::optional<FinitePath> vershik_successor(const OrderedBratteliDiagram& b, const FinitePath& p) {
  const int J = b.depth();
  if (static_cast<int>(p.edge_ids.size()) != J) throw InvalidInput("path depth mismatch");
  int pivot = -1;
  for (int j = 0; j < J; ++j)
    if (!b.edge_maximal(j, p.edge_ids[j])) {
      pivot = j;
      break;
    }
  if (pivot < 0) return std::nullopt;
  // Successor edge among those arriving at the same vertex.
  int dst = b.edges[pivot][p.edge_ids[pivot]].dst;
  int succ = -1;
  for (size_t i = p.edge_ids[pivot] + 1; i < b.edges[pivot].size(); ++i)
    if (b.edges[pivot][i].dst == dst) {
      succ = static_cast<int>(i);
      break;
    }
  if (succ < 0) throw Error("non-maximal edge without successor");
  FinitePath out = p;
  out.edge_ids[pivot] = succ;
  auto head = backward_minimal_chain(b, pivot, b.edges[pivot][succ].src);
  if (!head) throw Error("no minimal chain to the successor source");
  for (int j = 0; j < pivot; ++j) out.edge_ids[j] = (*head)[j];
  return out;
}

std::string to_dot(const OrderedBratteliDiagram& b) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n";
  for (int j = 0; j <= b.depth(); ++j) {
    os << "  { rank=same;";
    for (int v : b.levels[j]) os << " \"L" << j << "_" << v << "\";";
    os << " }\n";
  }
  for (int j = 0; j < static_cast<int>(b.edges.size()); ++j) {
    std::map<int, int> order_at_dst;
    for (const auto& e : b.edges[j]) {
      int ord = order_at_dst[e.dst]++;
      os << "  \"L" << j << "_" << e.src << "\" -> \"L" << j + 1 << "_" << e.dst
         << "\" [label=\"" << ord << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

ConjugacyReport conjugacy_check(const OrderedBratteliDiagram& b, const KneadingMap& q,
                                long n_steps, int depth) {
  ConjugacyReport rep;
  rep.requested_steps = n_steps;
  if (depth > b.depth()) throw InvalidInput("dictionary depth beyond the diagram truncation");

  auto minimal = unique_minimal_path(b);
  if (!minimal.unique) throw InvalidInput("diagram without a unique minimal path");

  // Pointed anchor: <0> corresponds to the canonical chain through vertex j
  // at level j.  An order corruption relabels the enumeration consistently,
  // so the bare dictionary would stay bijective; the anchor is what breaks.
  rep.anchor_ok = true;
  for (int j = 0; j < b.depth(); ++j) {
    const BratteliEdge& e = b.edges[j][minimal.path.edge_ids[j]];
    if (e.src != j || e.dst != j + 1) rep.anchor_ok = false;
  }

  std::map<std::vector<int>, std::string> path_to_word;
  std::map<std::string, std::vector<int>> word_to_path;
  bool single_valued = true, injective = true;

  FinitePath p = minimal.path;
  for (long n = 0; n <= n_steps; ++n) {
    OdometerWord w = expansion(n, q, q.K() + 1);
    std::string wkey = w.str().substr(0, depth);
    std::vector<int> pkey(p.edge_ids.begin(), p.edge_ids.begin() + depth);

    auto it1 = path_to_word.find(pkey);
    if (it1 == path_to_word.end())
      path_to_word.emplace(pkey, wkey);
    else if (it1->second != wkey)
      single_valued = false;
    auto it2 = word_to_path.find(wkey);
    if (it2 == word_to_path.end())
      word_to_path.emplace(wkey, pkey);
    else if (it2->second != pkey)
      injective = false;

    rep.resolved_steps = n + 1;
    if (n == n_steps) break;
    auto nxt = vershik_successor(b, p);
    if (!nxt) break;  // orbit left the truncation
    p = *nxt;
  }
  rep.distinct_keys = static_cast<long>(path_to_word.size());
  rep.single_valued = single_valued;
  rep.injective = injective;
  rep.pass = rep.anchor_ok && single_valued && injective;
  return rep;
}

}  // namespace orbitscale

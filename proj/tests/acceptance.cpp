// Acceptance suite: end-to-end criteria with pinned tolerances and runtime
// budgets.  Prints one line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "orbitscale/basics.hpp"
#include "orbitscale/bratteli.hpp"
#include "orbitscale/dimgroup.hpp"
#include "orbitscale/errors.hpp"
#include "orbitscale/euclid.hpp"
#include "orbitscale/hilbert.hpp"
#include "orbitscale/logistic.hpp"
#include "orbitscale/odometer.hpp"
#include "orbitscale/report.hpp"

using namespace orbitscale;

namespace {

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

bool g_all = true;

void run(const Criterion& c) {
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = c.body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_budget = c.budget_seconds <= 0 || secs <= c.budget_seconds;
  bool pass = ok && in_budget;
  g_all = g_all && pass;
  std::printf("[%s] criterion %2d: %s (%.2fs%s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.label,
              secs, in_budget ? "" : " OVER BUDGET", detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
}

BasisPtr surd_basis() {
  return MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(2),
                            SymbolicConstant::sqrt(3), SymbolicConstant::sqrt(5),
                            SymbolicConstant::sqrt(7)});
}

BasisPtr golden_basis() {
  return MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(5)});
}

std::vector<GroupElement> golden_gens(const BasisPtr& b) {
  return {GroupElement::one(b), GroupElement(b, {mpq_class(-1, 2), mpq_class(1, 2)})};
}

// 1. Euclid exactness over random independent surd bases.
bool crit1(std::string& detail) {
  BasisPtr basis = surd_basis();
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-2, 2);
  int done = 0;
  long steps_checked = 0;
  while (done < 100) {
    const int d = 2 + static_cast<int>(rng() % 4);  // 2..5
    std::vector<GroupElement> v;
    for (int i = 0; i < d; ++i) {
      std::vector<mpq_class> c(basis->size());
      for (auto& x : c) x = coef(rng);
      v.emplace_back(basis, std::move(c));
    }
    bool zero = false;
    for (auto& e : v) {
      if (e.is_zero()) {
        zero = true;
        break;
      }
      if (sign_of(e) < 0) e = -e;
    }
    if (zero) continue;
    if (lattice_basis(v).size() != static_cast<size_t>(d)) continue;
    std::sort(v.begin(), v.end(), [](const GroupElement& a, const GroupElement& b) {
      GroupElement diff = a - b;
      return !diff.is_zero() && sign_of(diff) > 0;
    });
    std::vector<GroupElement> cur = v;
    auto steps = iterate_algorithm(cur, 5);
    for (const auto& s : steps) {
      auto back = apply_matrix(s.A.entries, s.x_prime);
      for (int i = 0; i < s.d; ++i)
        if (!(back[i] == cur[i])) return false;
      if (!unimodular(s.A.entries)) return false;
      cur = s.x_prime;
      ++steps_checked;
    }
    ++done;
  }
  detail = std::to_string(steps_checked) + " steps exact";
  return true;
}

// 2. Contraction bound, exhaustive 2x2 plus random pairs up to d = 5.
bool crit2(std::string& detail) {
  long checked = 0;
  for (long a1 = 1; a1 <= 10; ++a1)
    for (long a2 = 1; a2 <= 10; ++a2) {
      auto a = admissible_matrix({mpz_class(a1), 1}, {1, 0});
      auto b = admissible_matrix({mpz_class(a2), 1}, {1, 0});
      auto rep = check_contraction(a.entries, b.entries);
      if (!rep.product_strictly_positive || !rep.bound_pass) return false;
      ++checked;
    }
  std::mt19937 rng(22);
  auto random_admissible = [&](int d) {
    std::vector<mpz_class> a(d);
    a[0] = 1 + static_cast<long>(rng() % 50);
    for (int i = 1; i < d; ++i) {
      long upper = a[i - 1].get_si();
      a[i] = 1 + static_cast<long>(rng() % upper);
      if (a[i] > a[i - 1]) a[i] = a[i - 1];
    }
    a[d - 1] = 1;
    for (int i = d - 2; i >= 0; --i)
      if (a[i] < a[i + 1]) a[i] = a[i + 1];
    std::vector<int> rest(d - 1);
    std::iota(rest.begin(), rest.end(), 0);
    std::shuffle(rest.begin(), rest.end(), rng);
    std::vector<int> sigma{d - 1};
    sigma.insert(sigma.end(), rest.begin(), rest.end());
    return admissible_matrix(a, sigma);
  };
  for (int t = 0; t < 500; ++t) {
    int d = 2 + static_cast<int>(rng() % 4);
    auto a = random_admissible(d);
    auto b = random_admissible(d);
    auto rep = check_contraction(a.entries, b.entries);
    if (!rep.product_strictly_positive || !rep.bound_pass) return false;
    ++checked;
  }
  detail = std::to_string(checked) + " pairs decided";
  return true;
}

// 3. Basic-matrix factorization, frozen chain plus 200 random instances.
bool crit3(std::string& detail) {
  FactorChain frozen = factor_into_basics(MatZ{{5, 2}, {2, 1}});
  if (frozen.k != 4 || frozen.w[0] != VertexSet{0, 1} || frozen.w[1] != VertexSet{1, 2, 3} ||
      frozen.w[2] != VertexSet{2, 3} || frozen.w[3] != VertexSet{3, 4, 5} ||
      frozen.w[4] != VertexSet{4, 5})
    return false;
  {
    IndexedMatrix prod = chain_product(frozen.w);
    if (!equal_up_to_reindexing(prod, IndexedMatrix{prod.rows, prod.cols, MatZ{{5, 2}, {2, 1}}}))
      return false;
  }
  std::mt19937 rng(33);
  for (int t = 0; t < 200; ++t) {
    int d = 2 + static_cast<int>(rng() % 4);
    int dp = 2 + static_cast<int>(rng() % 4);
    MatZ m = random_qualifying_matrix(rng, d, dp, 60);
    FactorChain c = factor_into_basics(m);
    IndexedMatrix prod = chain_product(c.w);
    if (!equal_up_to_reindexing(prod, IndexedMatrix{prod.rows, prod.cols, m})) return false;
    mpz_class budget = 0;
    for (int i = 1; i < static_cast<int>(c.a.size()); ++i) budget += c.a[i][0];
    if (budget != m(0, 0) - 2) return false;
  }
  detail = "200 random factorizations exact";
  return true;
}

// 4. Golden pipeline identities and lattice regeneration through the state.
bool crit4(std::string& detail) {
  BasisPtr basis = golden_basis();
  std::vector<GroupElement> gens = golden_gens(basis);
  PipelinePresentation p = build_pipeline(gens, 4);
  VertexAssembly a = assemble_vertex_sequence(p);
  if (a.v.front() != VertexSet{1, 2}) return false;
  if (a.q.size() < 2 || a.q[0] != 1 || a.q[1] != 3) return false;
  for (size_t l = 0; l + 1 < a.t.size(); ++l) {
    std::vector<VertexSet> w(a.v.begin() + (a.t[l] - 1), a.v.begin() + a.t[l + 1]);
    IndexedMatrix prod = chain_product(w);
    if (!equal_up_to_reindexing(prod, IndexedMatrix{prod.rows, prod.cols, p.m[l + 1]}))
      return false;
  }
  // State values of the standard limit generators regenerate the lattice.
  DirectLimitGroup g;
  g.dims = p.ranks;
  for (const auto& m : p.m) g.connecting.push_back(transpose(m));
  g.states = p.bases;
  g.validate();
  std::vector<GroupElement> state_values;
  for (int lvl = 0; lvl <= g.top_level(); ++lvl)
    for (int i = 0; i < g.dims[lvl]; ++i) {
      std::vector<mpz_class> e(g.dims[lvl], 0);
      e[i] = 1;
      state_values.push_back(state_value(g, LimitElement{lvl, e}));
    }
  if (!same_lattice(state_values, gens)) return false;
  detail = "4 levels, all identities exact";
  return true;
}

// 5. Diagram transitions equal basic matrices for the pipeline kneading map.
bool crit5(std::string& detail) {
  BasisPtr basis = golden_basis();
  PipelinePresentation p = build_pipeline(golden_gens(basis), 5);
  VertexAssembly a = assemble_vertex_sequence(p);
  std::vector<std::vector<int>> vsets(a.v.begin(), a.v.end());
  KneadingMap q = kneading_from_vertex_sets(vsets);
  int J = q.K() - 1;
  OrderedBratteliDiagram b = diagram_from_Q(q, J);
  auto mats = transition_matrices(b);
  if (!(mats.at(0) == MatZ{{1, 1}})) return false;
  for (int j = 1; j <= J && j <= static_cast<int>(a.v.size()); ++j)
    if (b.levels[j] != a.v[j - 1]) return false;
  for (int j = 1; j + 1 <= J; ++j) {
    BasicMatrix bm = basic_matrix(b.levels[j], b.levels[j + 1]);
    if (!(mats[j] == bm.entries)) return false;
  }
  detail = "levels 1.." + std::to_string(J);
  return true;
}

// 6. Orbit dictionaries: fibonacci at 10^4 steps, pipeline at 10^3.
bool crit6(std::string& detail) {
  KneadingMap fib = fibonacci_kneading(26);
  OrderedBratteliDiagram bf = diagram_from_Q(fib, 21);
  ConjugacyReport rf = conjugacy_check(bf, fib, 10000, 12);
  if (!(rf.pass && rf.resolved_steps == 10001)) return false;

  BasisPtr basis = golden_basis();
  PipelinePresentation p = build_pipeline(golden_gens(basis), 5);
  VertexAssembly a = assemble_vertex_sequence(p);
  std::vector<std::vector<int>> vsets(a.v.begin(), a.v.end());
  KneadingMap q = kneading_from_vertex_sets(vsets);
  OrderedBratteliDiagram bp = diagram_from_Q(q, 16);
  ConjugacyReport rp = conjugacy_check(bp, q, 1000, 10);
  if (!(rp.pass && rp.resolved_steps == 1001)) return false;
  detail = "dictionaries bijective on both samples";
  return true;
}

// 7. Kneading round trips through the parameter search.
bool crit7(std::string& detail) {
  const mpq_class tol(mpz_class(1), mpz_class(1000000000000L));
  KneadingMap dbl;
  dbl.values.assign(13, 0);
  for (int k = 2; k <= 12; ++k) dbl.values[k] = k - 1;
  LogisticParameter lam = find_lambda(dbl, 12, tol);
  Dyadic w = lam.enclosure.width();
  if (mpfr_cmp_d(w.raw(), 1e-12) > 0) return false;
  HofbauerTower t = hofbauer_tower(lam.value, 4096);
  if (t.s.size() != 13) return false;
  for (int k = 0; k <= 12; ++k)
    if (t.s[k] != (std::int64_t{1} << k)) return false;
  mpq_class near = parse_rational("3.5699456");
  mpq_class diff = lam.value - near;
  if (sgn(diff) < 0) diff = -diff;
  if (diff > mpq_class(1, 1000000)) return false;
  if (lam.precision_used > 512 || t.precision_used > 512) return false;

  BasisPtr basis = golden_basis();
  PipelinePresentation p = build_pipeline(golden_gens(basis), 5);
  VertexAssembly a = assemble_vertex_sequence(p);
  std::vector<std::vector<int>> vsets(a.v.begin(), a.v.end());
  KneadingMap q = kneading_from_vertex_sets(vsets);
  LogisticParameter lam2 = find_lambda(q, 15, tol);
  KneadingMap back = kneading_map_of(lam2.value, 15);
  for (int k = 0; k <= 15; ++k)
    if (back(k) != q(k)) return false;
  if (lam2.precision_used > 512) return false;
  detail = "lambda(2^inf)~" + std::string(lam.enclosure.lo.to_decimal(10)) +
           ", pipeline round trip on [0,15]";
  return true;
}

// 8. Everything at lambda = 4 in exact rational arithmetic.
bool crit8(std::string& detail) {
  HofbauerTower t = hofbauer_tower_rational(4, 51);
  if (t.s.size() != 51) return false;
  for (size_t k = 0; k < t.s.size(); ++k)
    if (t.s[k] != static_cast<std::int64_t>(k + 1)) return false;
  KneadingMap q;
  q.values.assign(52, 0);
  FactorMapReport rep = factor_map_check(4, q, 50, 10);
  if (!rep.orbit_pass || rep.orbit_failures != 0 || rep.orbit_inconclusive != 0) return false;
  detail = "S_k = k+1 through k = 50, orbit membership exact";
  return true;
}

// 9. Admissibility conditions for every pipeline-produced kneading map.
bool crit9(std::string& detail) {
  std::vector<KneadingMap> produced;
  {
    BasisPtr basis = golden_basis();
    PipelinePresentation p = build_pipeline(golden_gens(basis), 5);
    VertexAssembly a = assemble_vertex_sequence(p);
    std::vector<std::vector<int>> vsets(a.v.begin(), a.v.end());
    produced.push_back(kneading_from_vertex_sets(vsets));
  }
  {
    auto b3 = MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(5),
                                 SymbolicConstant::sqrt(2)});
    GroupElement one = GroupElement::one(b3);
    GroupElement alpha(b3, {mpq_class(-1, 2), mpq_class(1, 2), mpq_class(0)});
    GroupElement beta(b3, {mpq_class(-1), mpq_class(0), mpq_class(1)});
    PipelinePresentation p = build_pipeline({one, alpha, beta}, 3);
    VertexAssembly a = assemble_vertex_sequence(p);
    std::vector<std::vector<int>> vsets(a.v.begin(), a.v.end());
    produced.push_back(kneading_from_vertex_sets(vsets));
  }
  long checked = 0;
  for (const auto& q : produced) {
    AdmissibilityReport rep = admissibility_checks(q, q.K());
    if (!rep.hofbauer_pass || !rep.improved_pass) return false;
    if (rep.q3 < 0) return false;
    checked += q.K();
  }
  detail = "2 pipelines, " + std::to_string(checked) + " indices, zero violations";
  return true;
}

// 10. Rational branch against the dyadic adding machine.
bool crit10(std::string& detail) {
  KneadingMap q3 = kneading_from_odometer({2, 2, 2});
  CuttingTimes c3 = cutting_times(q3, q3.K());
  if (c3.s != std::vector<std::int64_t>{1, 2, 4, 8}) return false;

  // Dyadic machine deep enough for n <= 512: ten multipliers of 2.
  KneadingMap q10 = kneading_from_odometer(std::vector<std::int64_t>(10, 2));
  std::set<std::string> words;
  std::vector<int> bits(10, 0);
  for (long n = 0; n <= 512; ++n) {
    OdometerWord w = expansion(n, q10, 10);
    // direct base-2 carry model
    std::string expect;
    for (int i = 0; i < 10; ++i) expect.push_back(bits[i] ? '1' : '0');
    if (w.str() != expect) return false;
    if (n < 512 && !words.insert(w.str()).second) return false;  // injective
    for (int i = 0; i < 10; ++i) {
      if (++bits[i] <= 1) break;
      bits[i] = 0;
    }
  }
  detail = "S = (1,2,4,8); 513 dictionary entries, single-valued and injective";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "euclid exactness and unimodularity on 100 random surd bases", 30, crit1},
      {2, "contraction bound D(AA') <= 2 ln d, exhaustive + 500 random", 60, crit2},
      {3, "basic factorization reproduces the matrix, frozen + 200 random", 60, crit3},
      {4, "golden pipeline identities and state lattice regeneration", 0, crit4},
      {5, "diagram transitions equal basic matrices, level-0 = (1 1)", 0, crit5},
      {6, "odometer/Vershik orbit dictionaries (10^4 and 10^3 steps)", 120, crit6},
      {7, "kneading round trips through the parameter search", 600, crit7},
      {8, "lambda = 4 exact rational checks", 0, crit8},
      {9, "realizability and improved admissibility beyond q_3", 0, crit9},
      {10, "rational branch vs the dyadic adding machine", 0, crit10},
  };
  for (const auto& c : criteria) run(c);
  std::printf("%s\n", g_all ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT");
  return g_all ? 0 : 1;
}

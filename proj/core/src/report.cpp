#include "orbitscale/report.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "orbitscale/errors.hpp"
#include "orbitscale/euclid.hpp"
#include "orbitscale/hilbert.hpp"

namespace orbitscale {

// ------------------------------------------------------------------ file IO

Json group_to_json(const BasisPtr& basis, const std::vector<GroupElement>& elements) {
  Json j;
  j["schema"] = 1;
  Json b = Json::array();
  for (size_t i = 0; i < basis->size(); ++i) b.push_back(basis->constant(i).grammar());
  j["basis"] = std::move(b);
  Json els = Json::array();
  for (const auto& e : elements) {
    Json row = Json::array();
    for (const auto& c : e.coeffs()) row.push_back(c.get_str());
    els.push_back(std::move(row));
  }
  j["elements"] = std::move(els);
  return j;
}

std::pair<BasisPtr, std::vector<GroupElement>> group_from_json(const Json& j) {
  if (!j.contains("basis") || !j.contains("elements"))
    throw InvalidInput("group file needs 'basis' and 'elements'");
  std::vector<SymbolicConstant> consts;
  for (const auto& s : j.at("basis")) consts.push_back(parse_constant(s.get<std::string>()));
  BasisPtr basis = MasterBasis::make(std::move(consts));
  std::vector<GroupElement> elements;
  for (const auto& row : j.at("elements")) {
    std::vector<mpq_class> coeffs;
    for (const auto& c : row) coeffs.emplace_back(c.get<std::string>());
    elements.emplace_back(basis, std::move(coeffs));
  }
  return {basis, std::move(elements)};
}

Json kneading_to_json(const KneadingMap& q) {
  Json j;
  j["schema"] = 1;
  j["Q"] = q.values;
  return j;
}

KneadingMap kneading_from_json(const Json& j) {
  if (!j.contains("Q")) throw InvalidInput("kneading file needs 'Q'");
  KneadingMap q;
  q.values = j.at("Q").get<std::vector<int>>();
  q.validate();
  return q;
}

Json matrix_to_json(const MatZ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
    rows.push_back(std::move(r));
  }
  return rows;
}

MatZ matrix_from_json(const Json& j) {
  int rows = static_cast<int>(j.size());
  if (rows == 0) throw InvalidInput("empty matrix");
  int cols = static_cast<int>(j.at(0).size());
  MatZ m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols) throw InvalidInput("ragged matrix");
    for (int c = 0; c < cols; ++c) {
      const auto& cell = j.at(i).at(c);
      m(i, c) = cell.is_string() ? mpz_class(cell.get<std::string>())
                                 : mpz_class(cell.get<long>());
    }
  }
  return m;
}

Json interval_to_json(const Interval& v) {
  Json j;
  j["lo_hex"] = v.lo.to_hex();
  j["hi_hex"] = v.hi.to_hex();
  j["decimal"] = v.lo.to_decimal(24);
  return j;
}

Json euclid_report(const std::vector<AdmissibleStep>& steps) {
  Json j;
  j["schema"] = 1;
  Json arr = Json::array();
  for (const auto& s : steps) {
    Json st;
    st["d"] = s.d;
    st["d_prime"] = s.d_prime;
    Json a = Json::array();
    for (const auto& x : s.a) a.push_back(x.get_str());
    st["a"] = std::move(a);
    st["sigma"] = s.sigma;
    st["A"] = matrix_to_json(s.A.entries);
    st["unimodular"] = s.d == s.d_prime ? unimodular(s.A.entries) : false;
    arr.push_back(std::move(st));
  }
  j["steps"] = std::move(arr);
  return j;
}

Json chain_to_json(const FactorChain& c) {
  Json j;
  j["k"] = c.k;
  j["tau"] = c.tau;
  Json w = Json::array();
  for (const auto& s : c.w) w.push_back(s);
  j["W"] = std::move(w);
  return j;
}

Json pipeline_to_json(const PipelinePresentation& p, const VertexAssembly& a) {
  Json j;
  j["schema"] = 1;
  j["ranks"] = p.ranks;
  Json ms = Json::array();
  for (const auto& m : p.m) ms.push_back(matrix_to_json(m));
  j["M"] = std::move(ms);
  Json bases = Json::array();
  for (const auto& lvl : p.bases) {
    Json row = Json::array();
    for (const auto& e : lvl) {
      Json cs = Json::array();
      for (const auto& c : e.coeffs()) cs.push_back(c.get_str());
      row.push_back(std::move(cs));
    }
    bases.push_back(std::move(row));
  }
  j["bases"] = std::move(bases);
  Json chains = Json::array();
  for (const auto& c : p.chains) chains.push_back(chain_to_json(c));
  j["chains"] = std::move(chains);
  j["t"] = a.t;
  Json vs = Json::array();
  for (const auto& v : a.v) vs.push_back(v);
  j["V"] = std::move(vs);
  j["q"] = a.q;
  j["qualification_steps"] = p.qualification_steps;
  return j;
}

Json lambda_to_json(const LogisticParameter& p, const HofbauerTower& tower) {
  Json j;
  j["schema"] = 1;
  Json lam;
  lam["exact"] = p.value.get_str();
  lam["lo_hex"] = p.enclosure.lo.to_hex();
  lam["hi_hex"] = p.enclosure.hi.to_hex();
  lam["decimal"] = p.enclosure.lo.to_decimal(24);
  j["lambda"] = std::move(lam);
  j["cutting_times"] = tower.s;
  j["precision_used"] = std::max(p.precision_used, tower.precision_used);
  return j;
}

Json conjugacy_to_json(const ConjugacyReport& r) {
  Json j;
  j["requested_steps"] = r.requested_steps;
  j["resolved_steps"] = r.resolved_steps;
  j["distinct_keys"] = r.distinct_keys;
  j["anchor_ok"] = r.anchor_ok;
  j["single_valued"] = r.single_valued;
  j["injective"] = r.injective;
  j["pass"] = r.pass;
  return j;
}

Json dimgroup_to_json(const DirectLimitGroup& g) {
  Json j;
  j["schema"] = 1;
  j["dims"] = g.dims;
  Json ls = Json::array();
  for (const auto& m : g.connecting) ls.push_back(matrix_to_json(m));
  j["connecting"] = std::move(ls);
  if (g.states) {
    Json sts = Json::array();
    for (const auto& lvl : *g.states) {
      Json row = Json::array();
      for (const auto& e : lvl) {
        Json cs = Json::array();
        for (const auto& c : e.coeffs()) cs.push_back(c.get_str());
        row.push_back(std::move(cs));
      }
      sts.push_back(std::move(row));
    }
    j["states"] = std::move(sts);
  }
  if (g.unit) {
    Json u;
    u["level"] = g.unit->first;
    Json v = Json::array();
    for (const auto& x : g.unit->second) v.push_back(x.get_str());
    u["vector"] = std::move(v);
    j["unit"] = std::move(u);
  }
  return j;
}

Json verify_to_json(const std::vector<CheckResult>& results) {
  Json j;
  j["schema"] = 1;
  Json arr = Json::array();
  bool all = true;
  for (const auto& r : results) {
    Json e;
    e["name"] = r.name;
    e["pass"] = r.pass;
    if (!r.detail.empty()) e["detail"] = r.detail;
    arr.push_back(std::move(e));
    all = all && r.pass;
  }
  j["checks"] = std::move(arr);
  j["pass"] = all;
  return j;
}

std::string orbit_csv(const KneadingMap& q, long steps, int depth) {
  std::ostringstream os;
  os << "n,word,sigma,q\n";
  for (long n = 0; n <= steps; ++n) {
    OdometerWord w = expansion(n, q, q.K() + 1);
    WordStats st = word_stats(w, q, std::min(depth, w.depth()) - 1);
    os << n << "," << w.str().substr(0, depth) << "," << st.sigma_partial << ",";
    if (st.first_nonzero)
      os << *st.first_nonzero;
    else
      os << "-";
    os << "\n";
  }
  return os.str();
}

std::string tower_csv(const HofbauerTower& t, CriticalOrbit& orbit) {
  std::ostringstream os;
  os << "n,cutting,lo_index,hi_index,lo,hi\n";
  for (size_t i = 0; i < t.levels.size(); ++i) {
    const TowerLevel& d = t.levels[i];
    os << i + 1 << "," << (d.cutting ? 1 : 0) << "," << d.lo_index << "," << d.hi_index << ","
       << orbit.point(d.lo_index).lo.to_decimal(17) << ","
       << orbit.point(d.hi_index).hi.to_decimal(17) << "\n";
  }
  return os.str();
}

std::string postcritical_csv(CriticalOrbit& orbit, int n_max) {
  std::ostringstream os;
  os << "n,lo,hi\n";
  for (int n = 0; n <= n_max; ++n)
    os << n << "," << orbit.point(n).lo.to_decimal(17) << ","
       << orbit.point(n).hi.to_decimal(17) << "\n";
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

// --------------------------------------------------------------- pipeline

namespace {

void check(Json& ledger, bool& all, const std::string& stage, const std::string& name, bool ok) {
  Json entry;
  entry["stage"] = stage;
  entry["check"] = name;
  entry["pass"] = ok;
  ledger.push_back(std::move(entry));
  all = all && ok;
}

int pick_diagram_depth(const KneadingMap& q, long steps) {
  // The truncated Vershik orbit of the minimal path stays inside the tower
  // of paths ending at the deepest minimal-chain vertex (label J at level
  // J), so that tower must out-count the requested orbit.
  OrderedBratteliDiagram probe = diagram_from_Q(q, q.K() - 1);
  auto mats = transition_matrices(probe);
  std::vector<mpz_class> counts{1};
  for (int j = 0; j < static_cast<int>(mats.size()); ++j) {
    counts = transpose(mats[j]) * counts;
    int pos = probe.vertex_index(j + 1, j + 1);
    if (pos >= 0 && counts[static_cast<size_t>(pos)] > steps + 1) return j + 1;
  }
  return probe.depth();
}

}  // namespace

PipelineReport run_pipeline(const BasisPtr& basis, const std::vector<GroupElement>& gens,
                            const PipelineOptions& opt) {
  PipelineReport rep;
  Json ledger = Json::array();
  bool all = true;

  rep.data["schema"] = 1;
  rep.data["branch"] = "irrational";
  rep.data["group"] = group_to_json(basis, gens);

  // Euclid stage: iterate on the reduced positive basis and verify the
  // exact identities, unimodularity and the contraction bound.
  std::vector<GroupElement> lat = positive_decreasing_basis(lattice_basis(gens));
  {
    bool exact_ok = true, unimodular_ok = true, contraction_ok = true;
    std::vector<AdmissibleStep> steps = iterate_algorithm(lat, 8);
    std::vector<GroupElement> cur = lat;
    for (const auto& s : steps) {
      auto back = apply_matrix(s.A.entries, s.x_prime);
      for (size_t i = 0; i < back.size(); ++i) exact_ok = exact_ok && back[i] == cur[i];
      unimodular_ok = unimodular_ok && unimodular(s.A.entries);
      cur = s.x_prime;
    }
    for (size_t i = 0; i + 1 < steps.size(); ++i) {
      auto r = check_contraction(steps[i].A.entries, steps[i + 1].A.entries);
      contraction_ok = contraction_ok && r.product_strictly_positive && r.bound_pass;
    }
    rep.data["euclid"] = euclid_report(steps);
    check(ledger, all, "euclid", "exact reconstruction", exact_ok);
    check(ledger, all, "euclid", "unimodular steps", unimodular_ok);
    check(ledger, all, "hilbert", "pair contraction bound", contraction_ok);
  }

  // Pipeline and factorization.
  PipelinePresentation p = build_pipeline(gens, opt.levels);
  VertexAssembly asm_ = assemble_vertex_sequence(p);
  rep.data["pipeline"] = pipeline_to_json(p, asm_);
  {
    DirectLimitGroup g;
    g.dims = p.ranks;
    for (const auto& m : p.m) g.connecting.push_back(transpose(m));
    g.states = p.bases;
    g.unit = std::make_pair(0, std::vector<mpz_class>{1});
    g.validate();
    rep.data["limit_group"] = dimgroup_to_json(g);
  }
  check(ledger, all, "pipeline", "V_1 = {1,2}", asm_.v.at(0) == VertexSet{1, 2});
  check(ledger, all, "pipeline", "q_1 = 1, q_2 = 3",
        asm_.q.size() >= 2 && asm_.q[0] == 1 && asm_.q[1] == 3);
  {
    bool blocks_ok = true;
    for (size_t l = 0; l + 1 < asm_.t.size(); ++l) {
      std::vector<VertexSet> w(asm_.v.begin() + (asm_.t[l] - 1), asm_.v.begin() + asm_.t[l + 1]);
      IndexedMatrix prod = chain_product(w);
      IndexedMatrix target{prod.rows, prod.cols, p.m[l + 1]};
      blocks_ok = blocks_ok && equal_up_to_reindexing(prod, target);
    }
    check(ledger, all, "pipeline", "per-block basic products", blocks_ok);
  }
  check(ledger, all, "pipeline", "vertex block property", vertex_block_property(asm_));

  // Kneading map from the vertex sets.
  std::vector<std::vector<int>> vsets(asm_.v.begin(), asm_.v.end());
  KneadingMap q = kneading_from_vertex_sets(vsets);
  rep.data["kneading"] = kneading_to_json(q);
  check(ledger, all, "kneading", "Q(k) <= k-2 bound", q.bound_ok());
  auto witness = increasing_modulo_intervals(q);
  check(ledger, all, "kneading", "increasing modulo intervals", witness.has_value());
  if (witness) {
    bool agree = true;
    for (size_t i = 1; i < witness->size() && i - 1 < asm_.q.size(); ++i)
      agree = agree && (*witness)[i] == asm_.q[i - 1];
    check(ledger, all, "kneading", "witness matches assembled q", agree);
    rep.data["kneading"]["witness"] = *witness;
  }

  // Bratteli diagram, transition agreement, orbit dictionary.
  {
    int J = pick_diagram_depth(q, opt.vershik_steps);
    OrderedBratteliDiagram b = diagram_from_Q(q, J);
    auto mats = transition_matrices(b);
    bool vsets_ok = true;
    for (int j = 1; j <= J && j <= static_cast<int>(asm_.v.size()); ++j)
      vsets_ok = vsets_ok && b.levels[j] == asm_.v[j - 1];
    check(ledger, all, "bratteli", "diagram vertex sets match the assembly", vsets_ok);
    check(ledger, all, "bratteli", "level-0 transition is (1 1)",
          mats.at(0) == MatZ{{1, 1}});
    bool trans_ok = true;
    for (int j = 1; j + 1 <= J; ++j) {
      BasicMatrix bm = basic_matrix(b.levels[j], b.levels[j + 1]);
      trans_ok = trans_ok && mats[j] == bm.entries;
    }
    check(ledger, all, "bratteli", "transitions equal basic matrices", trans_ok);
    ConjugacyReport conj = conjugacy_check(b, q, opt.vershik_steps, opt.dictionary_depth);
    rep.data["conjugacy"] = conjugacy_to_json(conj);
    check(ledger, all, "bratteli", "orbit dictionary single-valued and injective", conj.pass);
    rep.data["diagram_depth"] = J;
  }

  // Admissibility conditions.
  {
    AdmissibilityReport adm = admissibility_checks(q, q.K());
    Json a;
    a["hofbauer_violations"] = adm.hofbauer_violations;
    a["hofbauer_unresolved"] = adm.hofbauer_unresolved;
    a["improved_violations"] = adm.improved_violations;
    a["q3"] = adm.q3;
    rep.data["admissibility"] = std::move(a);
    check(ledger, all, "admissibility", "realizability condition", adm.hofbauer_pass);
    check(ledger, all, "admissibility", "improved condition beyond q_3", adm.improved_pass);
  }

  // Optional parameter search and factor-map checks.
  if (opt.kneading_depth >= 0) {
    int K = std::min(opt.kneading_depth, q.K());
    LogisticParameter lam = find_lambda(q, K, opt.tol);
    CuttingTimes cs = cutting_times(q, K);
    HofbauerTower tower = hofbauer_tower(lam.value, static_cast<int>(cs.s[K]));
    rep.data["lambda"] = lambda_to_json(lam, tower);
    bool smatch = static_cast<int>(tower.s.size()) == K + 1;
    for (int k = 0; k <= K && smatch; ++k) smatch = tower.s[k] == cs.s[k];
    check(ledger, all, "logistic", "tower re-verification of cutting times", smatch);
    KneadingMap q2 = kneading_map_of(lam.value, K);
    bool roundtrip = true;
    for (int k = 0; k <= K; ++k) roundtrip = roundtrip && q2(k) == q(k);
    check(ledger, all, "logistic", "kneading round trip", roundtrip);
    long n_max = std::min<long>(opt.factor_orbit_max, cs.s[K] - 1);
    FactorMapReport fm = factor_map_check(lam.value, q, n_max, opt.dictionary_depth);
    Json f;
    f["orbit_pairs"] = fm.orbit_pairs;
    f["orbit_failures"] = fm.orbit_failures;
    f["orbit_inconclusive"] = fm.orbit_inconclusive;
    f["nested_chains"] = fm.nested_chains;
    f["nested_failures"] = fm.nested_failures;
    f["separation_pairs"] = fm.separation_pairs;
    f["separation_witnessed"] = fm.separation_witnessed;
    f["separation_inconclusive"] = fm.separation_inconclusive;
    rep.data["factor_map"] = std::move(f);
    check(ledger, all, "logistic", "orbit consistency", fm.orbit_pass);
    check(ledger, all, "logistic", "nested interval chains", fm.nested_pass);
  }

  rep.data["ledger"] = std::move(ledger);
  rep.data["pass"] = all;
  rep.pass = all;
  return rep;
}

PipelineReport run_pipeline_rational(const std::vector<std::int64_t>& multipliers,
                                     const PipelineOptions& opt) {
  PipelineReport rep;
  Json ledger = Json::array();
  bool all = true;
  rep.data["schema"] = 1;
  rep.data["branch"] = "rational";
  rep.data["multipliers"] = multipliers;

  KneadingMap q = kneading_from_odometer(multipliers);
  rep.data["kneading"] = kneading_to_json(q);
  CuttingTimes cs = cutting_times(q, q.K());
  rep.data["S"] = cs.s;

  // Scale values at block ends must be the multiplier products.
  {
    bool ok = true;
    std::int64_t t = 0, prod = 1;
    for (auto m : multipliers) {
      t += m - 1;
      prod *= m;
      ok = ok && cs.s[static_cast<size_t>(t)] == prod;
    }
    check(ledger, all, "odometer", "scales are multiplier products", ok);
  }

  // Dictionary against the direct mixed-radix carry model.
  {
    std::vector<std::int64_t> t(multipliers.size() + 1, 0);
    for (size_t i = 0; i < multipliers.size(); ++i) t[i + 1] = t[i] + multipliers[i] - 1;
    std::int64_t span = 1;
    for (auto m : multipliers) span *= m;
    long n_steps = static_cast<long>(std::min<std::int64_t>(opt.vershik_steps, span - 1));
    bool ok = true;
    std::vector<std::int64_t> digits(multipliers.size(), 0);
    for (long n = 0; n <= n_steps && ok; ++n) {
      OdometerWord w = expansion(n, q, q.K() + 1);
      OdometerWord expected;
      expected.x.assign(q.K() + 1, 0);
      for (size_t i = 0; i < digits.size(); ++i)
        if (digits[i] > 0) expected.x[static_cast<size_t>(t[i] + digits[i] - 1)] = 1;
      ok = ok && w.x == expected.x;
      // base-(m_i) carry
      for (size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < multipliers[i]) break;
        digits[i] = 0;
      }
    }
    check(ledger, all, "odometer", "mixed-radix carry dictionary", ok);
    rep.data["dictionary_steps"] = n_steps;
  }

  if (opt.kneading_depth >= 0) {
    int K = std::min(opt.kneading_depth, q.K());
    LogisticParameter lam = find_lambda(q, K, opt.tol);
    CuttingTimes target = cutting_times(q, K);
    HofbauerTower tower = hofbauer_tower(lam.value, static_cast<int>(target.s[K]));
    rep.data["lambda"] = lambda_to_json(lam, tower);
    bool smatch = static_cast<int>(tower.s.size()) == K + 1;
    for (int k = 0; k <= K && smatch; ++k) smatch = tower.s[k] == target.s[k];
    check(ledger, all, "logistic", "tower re-verification of cutting times", smatch);
  }

  rep.data["ledger"] = std::move(ledger);
  rep.data["pass"] = all;
  rep.pass = all;
  return rep;
}

// ------------------------------------------------------------------ verify

namespace {

BasisPtr golden_basis() {
  return MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(5)});
}

std::vector<GroupElement> golden_gens(const BasisPtr& b) {
  return {GroupElement::one(b), GroupElement(b, {mpq_class(-1, 2), mpq_class(1, 2)})};
}

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         const std::string& detail = "") {
  out.push_back(CheckResult{name, pass, detail});
}

std::vector<CheckResult> suite_exact() {
  std::vector<CheckResult> out;
  auto b = MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(2)});
  GroupElement one = GroupElement::one(b);
  GroupElement r2 = GroupElement::constant(b, 1);
  bool recon = true, range = true;
  for (int i = -3; i <= 3 && recon; ++i)
    for (int j = 1; j <= 3; ++j) {
      GroupElement x = one.scaled(i) + r2.scaled(j - 2);
      GroupElement y = one.scaled(j) + r2.scaled(mpq_class(1, 2));
      auto [qq, r] = floor_ratio(x, y);
      recon = recon && (y.scaled(mpq_class(qq)) + r) == x;
      range = range && sign_of(r) >= 0 && sign_of(y - r) == 1;
    }
  add(out, "exact: floor_ratio reconstruction", recon);
  add(out, "exact: remainder in [0, y)", range);
  std::vector<GroupElement> gens = {one.scaled(2) + r2, one - r2.scaled(3), r2.scaled(5)};
  auto b1 = lattice_basis(gens);
  add(out, "exact: lattice_basis idempotent", same_lattice(b1, lattice_basis(b1)));
  return out;
}

std::vector<CheckResult> suite_euclid() {
  std::vector<CheckResult> out;
  auto b = golden_basis();
  auto gens = golden_gens(b);
  auto steps = iterate_algorithm({gens[0], gens[1]}, 10);
  bool ones = true, uni = true;
  for (const auto& s : steps) {
    ones = ones && s.a == std::vector<mpz_class>{1, 1};
    uni = uni && unimodular(s.A.entries);
  }
  add(out, "euclid: golden partial quotients all (1,1)", ones);
  add(out, "euclid: square steps unimodular", uni);
  return out;
}

std::vector<CheckResult> suite_hilbert() {
  std::vector<CheckResult> out;
  bool ok = true;
  for (long a1 = 1; a1 <= 10 && ok; ++a1)
    for (long a2 = 1; a2 <= 10; ++a2) {
      auto A = admissible_matrix({mpz_class(a1), 1}, {1, 0});
      auto B = admissible_matrix({mpz_class(a2), 1}, {1, 0});
      auto r = check_contraction(A.entries, B.entries);
      ok = ok && r.product_strictly_positive && r.bound_pass;
    }
  add(out, "hilbert: exhaustive 2x2 contraction bound", ok);
  add(out, "hilbert: theta(1 2 / 2 1) = ln 4", theta({1, 2}, {2, 1}).ratio == 4);
  return out;
}

std::vector<CheckResult> suite_dimgroup() {
  std::vector<CheckResult> out;
  auto b = golden_basis();
  PipelinePresentation p = build_pipeline(golden_gens(b), 3);
  DirectLimitGroup g;
  g.dims = p.ranks;
  for (const auto& m : p.m) g.connecting.push_back(transpose(m));
  g.states = p.bases;
  g.validate();
  bool inv = true;
  for (int lvl = 0; lvl <= g.top_level() && inv; ++lvl)
    for (int i = 0; i < g.dims[lvl]; ++i) {
      std::vector<mpz_class> e(g.dims[lvl], 0);
      e[i] = 1;
      LimitElement el{lvl, e};
      GroupElement s0 = state_value(g, el);
      GroupElement s1 = state_value(g, push_forward(g, el, g.top_level()));
      inv = inv && s0 == s1;
    }
  add(out, "dimgroup: state invariant under push_forward", inv);
  return out;
}

std::vector<CheckResult> suite_basics() {
  std::vector<CheckResult> out;
  MatZ m{{5, 2}, {2, 1}};
  FactorChain c = factor_into_basics(m);
  bool shape = c.k == 4 && c.w[0] == VertexSet{0, 1} && c.w[1] == VertexSet{1, 2, 3} &&
               c.w[2] == VertexSet{2, 3} && c.w[3] == VertexSet{3, 4, 5} &&
               c.w[4] == VertexSet{4, 5};
  add(out, "basics: frozen chain for [[5,2],[2,1]]", shape);
  std::mt19937 rng(424242);
  bool prods = true;
  for (int t = 0; t < 25 && prods; ++t) {
    MatZ r = random_qualifying_matrix(rng, 2 + static_cast<int>(rng() % 4),
                                      2 + static_cast<int>(rng() % 4), 60);
    FactorChain ch = factor_into_basics(r);
    IndexedMatrix prod = chain_product(ch.w);
    prods = prods && equal_up_to_reindexing(
                         prod, IndexedMatrix{prod.rows, prod.cols, r});
  }
  add(out, "basics: random qualifying factorizations", prods);
  return out;
}

std::vector<CheckResult> suite_odometer() {
  std::vector<CheckResult> out;
  KneadingMap q = fibonacci_kneading(20);
  CuttingTimes c = cutting_times(q, 20);
  add(out, "odometer: fibonacci scale prefix",
      c.s[0] == 1 && c.s[1] == 2 && c.s[2] == 3 && c.s[3] == 5 && c.s[4] == 8);
  bool succ = true;
  OdometerWord w = expansion(0, q, 21);
  for (long n = 0; n < 200 && succ; ++n) {
    auto nx = odometer_successor(w, q);
    succ = succ && nx.has_value() && nx->x == expansion(n + 1, q, 21).x;
    w = *nx;
  }
  add(out, "odometer: successor equals next expansion", succ);
  auto m32 = kneading_from_odometer({3, 2});
  add(out, "odometer: multipliers (3,2) give S = 1,2,3,6",
      cutting_times(m32, m32.K()).s == std::vector<std::int64_t>{1, 2, 3, 6});
  return out;
}

std::vector<CheckResult> suite_bratteli() {
  std::vector<CheckResult> out;
  KneadingMap q = fibonacci_kneading(24);
  OrderedBratteliDiagram b = diagram_from_Q(q, 16);
  auto mats = transition_matrices(b);
  bool trans = mats.at(0) == MatZ{{1, 1}};
  for (int j = 1; j + 1 <= 16 && trans; ++j)
    trans = trans && mats[j] == basic_matrix(b.levels[j], b.levels[j + 1]).entries;
  add(out, "bratteli: transitions equal basic matrices", trans);
  ConjugacyReport r = conjugacy_check(b, q, 500, 8);
  add(out, "bratteli: fibonacci orbit dictionary", r.pass && r.resolved_steps == 501);
  return out;
}

std::vector<CheckResult> suite_logistic() {
  std::vector<CheckResult> out;
  HofbauerTower t4 = hofbauer_tower_rational(4, 30);
  bool s4 = t4.s.size() == 30;
  for (size_t k = 0; k < t4.s.size() && s4; ++k) s4 = t4.s[k] == static_cast<std::int64_t>(k + 1);
  add(out, "logistic: lambda = 4 cutting times S_k = k+1", s4);
  KneadingMap q0;
  q0.values.assign(9, 0);
  LogisticParameter lam = find_lambda(q0, 8, mpq_class(1, 1000000));
  add(out, "logistic: Q = 0 parameter search returns 4", lam.value == 4);
  return out;
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& selector) {
  std::vector<CheckResult> out;
  auto want = [&](const char* name) { return selector == "all" || selector == name; };
  bool known = selector == "all";
  if (want("exact")) {
    auto r = suite_exact();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (want("euclid")) {
    auto r = suite_euclid();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (want("hilbert")) {
    auto r = suite_hilbert();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (want("dimgroup")) {
    auto r = suite_dimgroup();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (want("basics")) {
    auto r = suite_basics();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (want("odometer")) {
    auto r = suite_odometer();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (want("bratteli")) {
    auto r = suite_bratteli();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (want("logistic")) {
    auto r = suite_logistic();
    out.insert(out.end(), r.begin(), r.end());
    known = true;
  }
  if (!known) throw InvalidInput("unknown verify selector: " + selector);
  return out;
}

}  // namespace orbitscale

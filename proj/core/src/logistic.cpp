#include "orbitscale/logistic.hpp"

#include <algorithm>
#include <set>

#include "orbitscale/errors.hpp"

namespace orbitscale {

CriticalOrbit::CriticalOrbit(mpq_class lambda, long start_bits)
    : lambda_(std::move(lambda)), bits_(std::max(start_bits, 64L)) {
  lambda_.canonicalize();
  if (sgn(lambda_) <= 0 || lambda_ > 4) throw InvalidInput("parameter must lie in (0, 4]");
  c_.push_back(Interval::from_mpq(mpq_class(1, 2), static_cast<mpfr_prec_t>(bits_)));
}

void CriticalOrbit::extend(int n) {
  mpfr_prec_t p = static_cast<mpfr_prec_t>(bits_);
  Interval lam = Interval::from_mpq(lambda_, p);
  Interval quarter = Interval::from_mpq(mpq_class(1, 4), p);
  Interval half = Interval::from_mpq(mpq_class(1, 2), p);
  while (static_cast<int>(c_.size()) <= n) {
    const Interval& x = c_.back();
    // Centered form lam * (1/4 - (x - 1/2)^2): the enclosure width grows
    // with |f'(x)| instead of a flat factor lam per step.
    Interval u = isub(x, half, p);
    Interval y = imul(lam, isub(quarter, isqr(u, p), p), p);
    c_.push_back(std::move(y));
  }
}

void CriticalOrbit::refine() {
  if (bits_ >= prec_cap()) throw UndecidableMembership("critical orbit at the precision cap");
  bits_ = std::min(bits_ * 2, prec_cap());
  size_t n = c_.size();
  mpfr_prec_t p = static_cast<mpfr_prec_t>(bits_);
  c_.clear();
  c_.push_back(Interval::from_mpq(mpq_class(1, 2), p));
  extend(static_cast<int>(n) - 1);
}

const Interval& CriticalOrbit::point(int i) {
  if (i < 0) throw InvalidInput("negative orbit index");
  extend(i);
  return c_[i];
}

int CriticalOrbit::side_of_half(int i) {
  for (;;) {
    const Interval& v = point(i);
    if (mpfr_cmp_ui_2exp(v.lo.raw(), 1, -1) > 0) return 1;
    if (mpfr_cmp_ui_2exp(v.hi.raw(), 1, -1) < 0) return -1;
    if (cmp(v.lo, v.hi) == 0) return mpfr_cmp_ui_2exp(v.lo.raw(), 1, -1);  // exact point
    refine();
  }
}

int CriticalOrbit::compare(int i, int j) {
  if (i == j) return 0;
  for (;;) {
    const Interval& a = point(i);
    const Interval& b = point(j);
    if (cmp(a.hi, b.lo) < 0) return -1;
    if (cmp(b.hi, a.lo) < 0) return 1;
    bool a_point = cmp(a.lo, a.hi) == 0, b_point = cmp(b.lo, b.hi) == 0;
    if (a_point && b_point) return cmp(a.lo, b.lo);
    refine();
  }
}

LogisticParameter make_parameter(const mpq_class& lambda) {
  CriticalOrbit orbit(lambda);
  if (orbit.side_of_half(1) != 1 || orbit.side_of_half(2) != -1)
    throw InvalidInput("unimodal condition f^2(1/2) < 1/2 < f(1/2) fails");
  LogisticParameter p;
  p.value = lambda;
  p.value.canonicalize();
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(orbit.precision(), 128));
  p.enclosure = Interval::from_mpq(p.value, prec);
  p.precision_used = orbit.precision();
  return p;
}

namespace {

HofbauerTower tower_impl(const mpq_class& lambda, int levels_wanted, int cuts_wanted,
                         long level_cap) {
  make_parameter(lambda);  // standing condition
  CriticalOrbit orbit(lambda);
  HofbauerTower t;
  t.lambda = lambda;
  int a = 0, b = 1;  // D_1 = [c_0, c_1]
  long n = 1;
  while ((levels_wanted > 0 && n <= levels_wanted) ||
         (cuts_wanted > 0 && static_cast<int>(t.s.size()) < cuts_wanted)) {
    if (n > level_cap)
      throw Error("tower exceeded " + std::to_string(level_cap) +
                  " levels before collecting the requested cutting times");
    int sa = orbit.side_of_half(a);
    int sb = orbit.side_of_half(b);
    bool cutting = sa <= 0 && sb >= 0;
    t.levels.push_back(TowerLevel{a, b, cutting});
    if (cutting) {
      t.s.push_back(n);
      a = static_cast<int>(n) + 1;
      b = 1;
    } else if (sa > 0) {  // right branch, f decreasing
      int na = b + 1, nb = a + 1;
      a = na;
      b = nb;
    } else {  // left branch, f increasing
      ++a;
      ++b;
    }
    ++n;
  }
  t.precision_used = orbit.precision();
  return t;
}

}  // namespace

HofbauerTower hofbauer_tower(const mpq_class& lambda, int N) {
  if (N < 1) throw InvalidInput("tower needs at least one level");
  return tower_impl(lambda, N, 0, N);
}

HofbauerTower hofbauer_tower_cutting(const mpq_class& lambda, int K) {
  if (K < 0) throw InvalidInput("negative cutting count");
  if (K > 24) throw InvalidInput("cutting-count mode is limited to K <= 24");
  return tower_impl(lambda, 0, K + 1, (1L << K) + 2);
}

HofbauerTower hofbauer_tower_rational(const mpq_class& lambda, int N, long max_bits) {
  mpq_class lam = lambda;
  lam.canonicalize();
  if (sgn(lam) <= 0 || lam > 4) throw InvalidInput("parameter must lie in (0, 4]");
  std::vector<mpq_class> c{mpq_class(1, 2)};
  auto ensure = [&](int i) {
    while (static_cast<int>(c.size()) <= i) {
      mpq_class next = lam * c.back() * (1 - c.back());
      next.canonicalize();
      if (static_cast<long>(mpz_sizeinbase(next.get_den().get_mpz_t(), 2)) > max_bits)
        throw Error("rational tower denominators exceeded the size bound");
      c.push_back(next);
    }
  };
  ensure(2);
  mpq_class half(1, 2);
  if (!(c[2] < half && half < c[1])) throw InvalidInput("unimodal condition fails");

  HofbauerTower t;
  t.lambda = lam;
  int a = 0, b = 1, n = 1;
  while (n <= N) {
    ensure(std::max(a, b) + 1);
    bool cutting = c[a] <= half && half <= c[b];
    t.levels.push_back(TowerLevel{a, b, cutting});
    if (cutting) t.s.push_back(n);
    if (cutting) {
      ensure(n + 1);
      a = n + 1;
      b = 1;
    } else if (c[a] > half) {
      int na = b + 1, nb = a + 1;
      a = na;
      b = nb;
    } else {
      ++a;
      ++b;
    }
    ++n;
  }
  t.precision_used = 0;
  return t;
}

KneadingMap kneading_map_of_tower(const HofbauerTower& t) {
  if (t.s.empty() || t.s[0] != 1) throw NoMatchingIndex("tower without S_0 = 1");
  KneadingMap q;
  q.values.assign(t.s.size(), 0);
  for (size_t k = 1; k < t.s.size(); ++k) {
    std::int64_t gap = t.s[k] - t.s[k - 1];
    auto it = std::lower_bound(t.s.begin(), t.s.end(), gap);
    if (it == t.s.end() || *it != gap)
      throw NoMatchingIndex("cutting-time gap " + std::to_string(gap) +
                            " is not an earlier cutting time");
    q.values[k] = static_cast<int>(it - t.s.begin());
  }
  q.validate();
  return q;
}

KneadingMap kneading_map_of(const mpq_class& lambda, int K) {
  return kneading_map_of_tower(hofbauer_tower_cutting(lambda, K));
}

std::vector<int> kneading_symbols_from_Q(const KneadingMap& q, int K) {
  CuttingTimes c = cutting_times(q, K);
  const std::int64_t n = c.s[K];
  std::vector<int> nu(static_cast<size_t>(n), 0);
  nu[0] = 1;
  for (int k = 1; k <= K; ++k) {
    std::int64_t len = c.s[q(k)];
    std::int64_t base = c.s[k - 1];
    for (std::int64_t i = 0; i < len; ++i) nu[base + i] = nu[i];
    nu[base + len - 1] ^= 1;
  }
  return nu;
}

std::vector<int> itinerary(CriticalOrbit& orbit, int N) {
  std::vector<int> out(N);
  for (int i = 1; i <= N; ++i) {
    int s = orbit.side_of_half(i);
    if (s == 0) throw UndecidableMembership("critical orbit hits 1/2 exactly");
    out[i - 1] = s > 0 ? 1 : 0;
  }
  return out;
}

int parity_lex_compare(const std::vector<int>& a, const std::vector<int>& b) {
  size_t n = std::min(a.size(), b.size());
  int parity = 0;
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      int base = a[i] < b[i] ? -1 : 1;
      return parity % 2 == 0 ? base : -base;
    }
    parity += a[i];
  }
  return 0;
}

AdmissibilityReport admissibility_checks(const KneadingMap& q, int K) {
  if (K > q.K()) throw DepthExceeded("admissibility check beyond the prefix");
  AdmissibilityReport rep;
  for (int k = 1; k <= K; ++k) {
    int base = q(q(q(k)));
    bool decided = false;
    for (int j = 1; k + j <= K && base + j <= K; ++j) {
      int lhs = q(k + j), rhs = q(base + j);
      if (lhs > rhs) {
        decided = true;
        break;
      }
      if (lhs < rhs) {
        rep.hofbauer_violations.push_back(k);
        decided = true;
        break;
      }
    }
    if (!decided) rep.hofbauer_unresolved.push_back(k);
  }
  rep.hofbauer_pass = rep.hofbauer_violations.empty();

  auto witness = increasing_modulo_intervals(q);
  if (witness && witness->size() > 3) rep.q3 = (*witness)[3];
  int start = rep.q3 > 0 ? rep.q3 : 1;
  for (int k = start; k + 1 <= K; ++k) {
    int inner = q(q(q(k))) + 1;
    if (inner > K) continue;
    if (q(k + 1) < q(inner) + 2) rep.improved_violations.push_back(k);
  }
  rep.improved_pass = rep.improved_violations.empty();
  return rep;
}

LogisticParameter find_lambda(const KneadingMap& q_target, int K, const mpq_class& tol) {
  if (sgn(tol) <= 0) throw InvalidInput("tolerance must be positive");
  q_target.validate();
  {
    AdmissibilityReport adm = admissibility_checks(q_target, K);
    if (!adm.hofbauer_pass)
      throw InvalidInput("target kneading map fails the realizability condition");
  }
  CuttingTimes target_s = cutting_times(q_target, K);
  const int N = static_cast<int>(target_s.s[K]);
  std::vector<int> target_nu = kneading_symbols_from_Q(q_target, K);

  auto compare_target = [&](const mpq_class& lambda) {
    CriticalOrbit orbit(lambda);
    int parity = 0;
    for (int i = 1; i <= N; ++i) {
      int s = orbit.side_of_half(i);
      if (s == 0) throw UndecidableMembership("candidate orbit hits 1/2");
      int v = s > 0 ? 1 : 0;
      int t = target_nu[i - 1];
      if (v != t) {
        int base = v < t ? -1 : 1;
        return parity % 2 == 0 ? base : -base;
      }
      parity += t;
    }
    return 0;
  };

  mpq_class lo(13, 4), hi(4);
  std::optional<mpq_class> candidate;
  if (compare_target(hi) == 0) candidate = hi;
  if (!candidate) {
    int clo = compare_target(lo);
    if (clo == 0) candidate = lo;
    if (clo > 0) throw VerificationFailed("target below the searchable parameter range");
  }
  mpq_class floor_width(mpz_class(1), mpz_class(1) << 240);
  while (!candidate) {
    mpq_class width = hi - lo;
    if (width < floor_width)
      throw VerificationFailed("bisection exhausted without hitting the parameter window");
    mpq_class mid = (lo + hi) / 2;
    int c;
    try {
      c = compare_target(mid);
    } catch (const UndecidableMembership&) {
      // Reposition the probe away from a boundary parameter.
      mid = lo + (hi - lo) * mpq_class(9, 16);
      c = compare_target(mid);
    }
    if (c == 0)
      candidate = mid;
    else if (c < 0)
      lo = mid;
    else
      hi = mid;
  }

  // Independent re-verification through the tower: N levels must yield
  // exactly the target cutting times.
  HofbauerTower t = hofbauer_tower(*candidate, N);
  if (t.s != target_s.s) throw VerificationFailed("tower cutting times disagree with the target");
  LogisticParameter p = make_parameter(*candidate);
  p.precision_used = std::max(p.precision_used, t.precision_used);
  (void)tol;  // the returned enclosure is a point, width 0 <= tol
  return p;
}

namespace {

std::vector<std::int64_t> partial_sums(const OdometerWord& w, const CuttingTimes& c) {
  std::vector<std::int64_t> out;
  std::int64_t acc = 0;
  for (int k = 0; k < w.depth(); ++k)
    if (w.x[k]) {
      acc += c.s[k];
      out.push_back(acc);
    }
  return out;
}

}  // namespace

FactorMapReport factor_map_check(const mpq_class& lambda, const KneadingMap& q, long n_max,
                                 int depth) {
  FactorMapReport rep;
  const int K = q.K();
  CuttingTimes cs = cutting_times(q, K);
  if (n_max >= cs.s[K]) throw DepthExceeded("n_max beyond the available scale prefix");
  HofbauerTower tower = hofbauer_tower(lambda, static_cast<int>(n_max));
  // The parameter must realize the kneading prefix on the working range.
  for (int k = 0; k <= K && cs.s[k] <= n_max; ++k)
    if (static_cast<size_t>(k) >= tower.s.size() || tower.s[k] != cs.s[k])
      throw VerificationFailed("parameter does not realize the kneading map on the window");
  CriticalOrbit orbit(lambda);

  auto member = [&](int point_idx, const TowerLevel& d) -> std::optional<bool> {
    try {
      return orbit.compare(point_idx, d.lo_index) >= 0 && orbit.compare(point_idx, d.hi_index) <= 0;
    } catch (const UndecidableMembership&) {
      return std::nullopt;
    }
  };

  // (i) orbit consistency along every expansion.
  for (long n = 1; n <= n_max; ++n) {
    OdometerWord w = expansion(n, q, K + 1);
    for (std::int64_t j : partial_sums(w, cs)) {
      ++rep.orbit_pairs;
      auto ok = member(static_cast<int>(n), tower.levels[static_cast<size_t>(j - 1)]);
      if (!ok)
        ++rep.orbit_inconclusive;
      else if (!*ok)
        ++rep.orbit_failures;
    }
  }
  rep.orbit_pass = rep.orbit_failures == 0;

  // Deterministic word sample: the deepest expansions with at least two
  // digits, plus the maximal admissible word of the requested depth.
  std::vector<OdometerWord> sample;
  for (long n = n_max; n >= 1 && static_cast<long>(sample.size()) < 10; --n) {
    OdometerWord w = expansion(n, q, K + 1);
    int ones = 0;
    for (auto b : w.x) ones += b;
    if (ones >= 2) sample.push_back(std::move(w));
  }
  {
    int d = std::min(depth, K);
    std::int64_t full = cs.s[d] - 1;
    if (full >= 1 && full <= n_max) sample.push_back(expansion(full, q, K + 1));
  }

  // (ii) nested interval chains along sampled words.
  for (const auto& w : sample) {
    auto sums = partial_sums(w, cs);
    if (sums.size() < 2) continue;
    ++rep.nested_chains;
    bool fail = false, inconclusive = false;
    for (size_t i = 0; i + 1 < sums.size(); ++i) {
      const TowerLevel& outer = tower.levels[static_cast<size_t>(sums[i] - 1)];
      const TowerLevel& inner = tower.levels[static_cast<size_t>(sums[i + 1] - 1)];
      try {
        if (!(orbit.compare(inner.lo_index, outer.lo_index) >= 0 &&
              orbit.compare(inner.hi_index, outer.hi_index) <= 0))
          fail = true;
      } catch (const UndecidableMembership&) {
        inconclusive = true;
      }
    }
    if (fail)
      ++rep.nested_failures;
    else if (inconclusive)
      ++rep.nested_inconclusive;
  }
  rep.nested_pass = rep.nested_failures == 0;

  // (iii) separation of distinct sampled words at some level.
  for (size_t i = 0; i < sample.size(); ++i) {
    for (size_t j = i + 1; j < sample.size(); ++j) {
      auto a = partial_sums(sample[i], cs);
      auto b = partial_sums(sample[j], cs);
      if (a == b) continue;
      ++rep.separation_pairs;
      bool witnessed = false;
      size_t m = std::min(a.size(), b.size());
      for (size_t l = 0; l < m && !witnessed; ++l) {
        if (a[l] == b[l]) continue;
        const TowerLevel& da = tower.levels[static_cast<size_t>(a[l] - 1)];
        const TowerLevel& db = tower.levels[static_cast<size_t>(b[l] - 1)];
        try {
          if (orbit.compare(da.hi_index, db.lo_index) < 0 ||
              orbit.compare(db.hi_index, da.lo_index) < 0)
            witnessed = true;
        } catch (const UndecidableMembership&) {
        }
      }
      if (witnessed)
        ++rep.separation_witnessed;
      else
        ++rep.separation_inconclusive;
    }
  }
  return rep;
}

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty number");
  // Optional decimal exponent: mantissa [eE] [+-] digits.
  std::string mantissa = text;
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = text.substr(0, epos);
    try {
      exp10 = std::stol(text.substr(epos + 1));
    } catch (const std::exception&) {
      throw InvalidInput("bad exponent in number: " + text);
    }
  }
  mpq_class q;
  auto dot = mantissa.find('.');
  try {
    if (dot == std::string::npos) {
      q = mpq_class(mantissa);
    } else {
      std::string digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
      size_t frac_len = mantissa.size() - dot - 1;
      mpz_class num(digits);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      q = mpq_class(num, den);
    }
  } catch (const std::exception&) {
    throw InvalidInput("not a rational or decimal number: " + text);
  }
  if (exp10 > 0) {
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    q *= mpq_class(pow);
  } else if (exp10 < 0) {
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
    q /= mpq_class(pow);
  }
  q.canonicalize();
  return q;
}

}  // namespace orbitscale

#ifndef ORBITSCALE_LOGISTIC_HPP
#define ORBITSCALE_LOGISTIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitscale/dyadic.hpp"
#include "orbitscale/odometer.hpp"

namespace orbitscale {

// Forward orbit of the critical point 1/2 under x -> lambda x (1 - x) with
// certified enclosures at a shared working precision, recomputed on demand
// at doubled precision until sign queries resolve.
class CriticalOrbit {
 public:
  explicit CriticalOrbit(mpq_class lambda, long start_bits = kPrecStart);

  const mpq_class& lambda() const { return lambda_; }
  long precision() const { return bits_; }

  // Enclosure of c_i = f^i(1/2).
  const Interval& point(int i);

  // Certified sign of c_i - 1/2 (+1 right, -1 left).  Exact when the
  // enclosure is a point; UndecidableMembership at the precision cap.
  int side_of_half(int i);

  // Certified sign of c_i - c_j; exact index shortcut when i == j.
  int compare(int i, int j);

 private:
  void extend(int n);
  void refine();

  mpq_class lambda_;
  long bits_;
  std::vector<Interval> c_;
};

// Parameter of the logistic family with the unimodal standing condition
// f^2(1/2) < 1/2 < f(1/2) certified on construction.
struct LogisticParameter {
  mpq_class value;       // exact rational parameter
  Interval enclosure;    // point enclosure of value
  long precision_used = 0;
};
LogisticParameter make_parameter(const mpq_class& lambda);

// Tower interval D_n = [c_{lo_index}, c_{hi_index}] with exact endpoint
// orbit indices; cutting marks c_0 in D_n.
struct TowerLevel {
  int lo_index = 0;
  int hi_index = 0;
  bool cutting = false;
};

struct HofbauerTower {
  mpq_class lambda;
  std::vector<TowerLevel> levels;      // D_1..D_N at levels[0..N-1]
  std::vector<std::int64_t> s;         // extracted cutting times S_0..S_K
  long precision_used = 0;
};

// Tower through N levels; membership tests certified by enclosures.
HofbauerTower hofbauer_tower(const mpq_class& lambda, int N);

// Tower extended until K+1 cutting times have appeared.
HofbauerTower hofbauer_tower_cutting(const mpq_class& lambda, int K);

// Fully exact tower over the rationals; usable when the orbit stays small
// (the endpoint lambda = 4 in particular).  Throws when numerators or
// denominators exceed max_bits.
HofbauerTower hofbauer_tower_rational(const mpq_class& lambda, int N, long max_bits = 4096);

// Kneading map from the tower: Q(k) is the index with
// S_k - S_{k-1} = S_{Q(k)}; NoMatchingIndex when the gap is not a scale
// value (periodic attractor on the horizon or corrupted input).
KneadingMap kneading_map_of(const mpq_class& lambda, int K);
KneadingMap kneading_map_of_tower(const HofbauerTower& t);

// Symbol sequence nu_1..nu_N of the target kneading map: nu_1 = 1 and the
// block (S_{k-1}, S_k] copies (0, S_{Q(k)}] with the final symbol flipped.
std::vector<int> kneading_symbols_from_Q(const KneadingMap& q, int K);

// Itinerary symbols of c_1..c_N for the parameter (1 right of 1/2, 0 left).
std::vector<int> itinerary(CriticalOrbit& orbit, int N);

// Signed (parity-lexicographic) comparison of two symbol sequences.
int parity_lex_compare(const std::vector<int>& a, const std::vector<int>& b);

struct AdmissibilityReport {
  std::vector<int> hofbauer_violations;
  std::vector<int> hofbauer_unresolved;  // scan left the prefix before deciding
  std::vector<int> improved_violations;  // k >= q_3 failing Q(k+1) >= Q(Q(Q(k))+1) + 2
  int q3 = -1;
  bool hofbauer_pass = false;
  bool improved_pass = false;
};
AdmissibilityReport admissibility_checks(const KneadingMap& q, int K);

// Bisection on the parameter against the parity-lexicographic order of
// kneading symbol sequences; the returned parameter is re-verified by
// recomputing its tower and matching the cutting times S_0..S_K exactly.
LogisticParameter find_lambda(const KneadingMap& q_target, int K, const mpq_class& tol);

struct FactorMapReport {
  long orbit_pairs = 0;
  long orbit_failures = 0;
  long orbit_inconclusive = 0;
  long nested_chains = 0;
  long nested_failures = 0;
  long nested_inconclusive = 0;
  long separation_pairs = 0;
  long separation_witnessed = 0;
  long separation_inconclusive = 0;
  bool orbit_pass = false;
  bool nested_pass = false;
};

// (i) c_n lies in D_{sigma(<n>|m)} for every partial sum; (ii) the D-chain
// along each sampled word is nested; (iii) sampled distinct words separate
// at some level within `depth`.
FactorMapReport factor_map_check(const mpq_class& lambda, const KneadingMap& q, long n_max,
                                 int depth);

// "4", "p/q", or a decimal literal like "3.57" parsed exactly.
mpq_class parse_rational(const std::string& text);

}  // namespace orbitscale

#endif

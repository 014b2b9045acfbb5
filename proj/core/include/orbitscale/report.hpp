#ifndef ORBITSCALE_REPORT_HPP
#define ORBITSCALE_REPORT_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "orbitscale/basics.hpp"
#include "orbitscale/bratteli.hpp"
#include "orbitscale/dimgroup.hpp"
#include "orbitscale/euclid.hpp"
#include "orbitscale/exact.hpp"
#include "orbitscale/logistic.hpp"
#include "orbitscale/odometer.hpp"

namespace orbitscale {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------ file IO

// Group files: {"schema":1, "basis":[<constant grammar>...],
// "elements":[[<rational>...], ...]}.
Json group_to_json(const BasisPtr& basis, const std::vector<GroupElement>& elements);
std::pair<BasisPtr, std::vector<GroupElement>> group_from_json(const Json& j);

Json kneading_to_json(const KneadingMap& q);
KneadingMap kneading_from_json(const Json& j);

Json matrix_to_json(const MatZ& m);
MatZ matrix_from_json(const Json& j);

Json interval_to_json(const Interval& v);

Json euclid_report(const std::vector<AdmissibleStep>& steps);
Json pipeline_to_json(const PipelinePresentation& p, const VertexAssembly& a);
Json dimgroup_to_json(const DirectLimitGroup& g);
Json verify_to_json(const std::vector<struct CheckResult>& results);
Json chain_to_json(const FactorChain& c);
Json lambda_to_json(const LogisticParameter& p, const HofbauerTower& tower);
Json conjugacy_to_json(const ConjugacyReport& r);

std::string orbit_csv(const KneadingMap& q, long steps, int depth);
std::string tower_csv(const HofbauerTower& t, CriticalOrbit& orbit);
std::string postcritical_csv(CriticalOrbit& orbit, int n_max);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// --------------------------------------------------------------- pipeline

struct PipelineOptions {
  int levels = 4;
  int kneading_depth = -1;   // K for the parameter search; -1 skips it
  long vershik_steps = 1000;
  int dictionary_depth = 10;
  mpq_class tol = mpq_class(1, 1000000000000L);
  long factor_orbit_max = 200;
};

struct PipelineReport {
  Json data;
  bool pass = false;
};

// End-to-end run on the irrational branch: euclid iteration, contraction
// checks, pipeline + factorization, vertex sets, kneading map, diagram and
// orbit dictionary, admissibility, and (optionally) the parameter search
// with factor-map checks.
PipelineReport run_pipeline(const BasisPtr& basis, const std::vector<GroupElement>& gens,
                            const PipelineOptions& opt);

// Rational branch: mixed-radix odometer from multipliers, dyadic-carry
// dictionary, parameter search and tower re-check.
PipelineReport run_pipeline_rational(const std::vector<std::int64_t>& multipliers,
                                     const PipelineOptions& opt);

// ------------------------------------------------------------------ verify

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Deterministic property suites per module; selector "all" runs everything.
std::vector<CheckResult> verify_suite(const std::string& selector);

}  // namespace orbitscale

#endif

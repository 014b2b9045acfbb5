// orbitscale: exact pipelines from finitely generated subgroups of the
// reals to generalized odometers, Bratteli-Vershik models and logistic
// kneading parameters, with certified arithmetic throughout.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "orbitscale/errors.hpp"
#include "orbitscale/report.hpp"

using namespace orbitscale;

namespace {

int run(int argc, char** argv) {
  CLI::App app{"exact numeration-scale pipelines for logistic maps"};
  app.require_subcommand(1);

  // euclid run
  auto* euclid_cmd = app.add_subcommand("euclid", "multidimensional Euclidean algorithm");
  auto* euclid_run = euclid_cmd->add_subcommand("run", "iterate on a group file");
  std::string euclid_group, euclid_report_path;
  int euclid_steps = 8;
  euclid_run->add_option("--group", euclid_group, "group JSON file")->required();
  euclid_run->add_option("--steps", euclid_steps, "number of iterations");
  euclid_run->add_option("--report", euclid_report_path, "output JSON path")->required();

  // pipeline build
  auto* pipe_cmd = app.add_subcommand("pipeline", "group pipeline and vertex sets");
  auto* pipe_build = pipe_cmd->add_subcommand("build", "build the presentation end to end");
  std::string pipe_group, pipe_out, pipe_mult, pipe_tol = "1/1000000000000";
  int pipe_levels = 4, pipe_K = -1, pipe_depth = 10;
  long pipe_steps = 1000;
  pipe_build->add_option("--group", pipe_group, "group JSON file (irrational branch)");
  pipe_build->add_option("--multipliers", pipe_mult, "comma list, rational branch");
  pipe_build->add_option("--levels", pipe_levels, "pipeline levels");
  pipe_build->add_option("--K", pipe_K, "kneading depth for the parameter search (-1 = skip)");
  pipe_build->add_option("--steps", pipe_steps, "orbit dictionary steps");
  pipe_build->add_option("--depth", pipe_depth, "dictionary depth");
  pipe_build->add_option("--tol", pipe_tol, "parameter enclosure tolerance");
  pipe_build->add_option("--out", pipe_out, "output JSON path")->required();

  // factor
  auto* factor_cmd = app.add_subcommand("factor", "factor a matrix into basic matrices");
  std::string factor_matrix, factor_out;
  factor_cmd->add_option("--matrix", factor_matrix, "matrix JSON file (array of rows)")->required();
  factor_cmd->add_option("--out", factor_out, "output JSON path")->required();

  // odometer simulate
  auto* odo_cmd = app.add_subcommand("odometer", "generalized odometer");
  auto* odo_sim = odo_cmd->add_subcommand("simulate", "orbit of <0>");
  std::string odo_q, odo_out;
  long odo_steps = 100;
  int odo_depth = 12;
  odo_sim->add_option("--Q", odo_q, "kneading JSON file")->required();
  odo_sim->add_option("--steps", odo_steps, "orbit length");
  odo_sim->add_option("--depth", odo_depth, "word truncation depth");
  odo_sim->add_option("--out", odo_out, "output CSV path")->required();

  // bratteli check
  auto* brat_cmd = app.add_subcommand("bratteli", "kneading Bratteli diagram");
  auto* brat_check = brat_cmd->add_subcommand("check", "orbit dictionary against the odometer");
  std::string brat_q, brat_out, brat_dot;
  int brat_levels = -1, brat_depth = 10;
  long brat_steps = 1000;
  brat_check->add_option("--Q", brat_q, "kneading JSON file")->required();
  brat_check->add_option("--levels", brat_levels, "diagram depth (-1 = automatic)");
  brat_check->add_option("--steps", brat_steps, "orbit steps");
  brat_check->add_option("--depth", brat_depth, "dictionary depth");
  brat_check->add_option("--out", brat_out, "output JSON path")->required();
  brat_check->add_option("--dot", brat_dot, "optional DOT export path");

  // logistic find / tower
  auto* log_cmd = app.add_subcommand("logistic", "rigorous logistic-map dynamics");
  auto* log_find = log_cmd->add_subcommand("find", "parameter realizing a kneading map");
  std::string find_q, find_out, find_tol = "1/1000000000000";
  int find_K = 10;
  log_find->add_option("--Q", find_q, "kneading JSON file")->required();
  log_find->add_option("--depth", find_K, "kneading depth K");
  log_find->add_option("--tol", find_tol, "enclosure tolerance (rational or decimal)");
  log_find->add_option("--out", find_out, "output JSON path")->required();
  auto* log_tower = log_cmd->add_subcommand("tower", "interval tower and cutting times");
  std::string tower_lambda, tower_csv_path, tower_orbit;
  int tower_n = 200;
  log_tower->add_option("--lambda", tower_lambda, "parameter: '4', 'p/q' or decimal")->required();
  log_tower->add_option("--N", tower_n, "tower levels");
  log_tower->add_option("--csv", tower_csv_path, "output CSV path")->required();
  log_tower->add_option("--orbit", tower_orbit, "optional postcritical orbit CSV");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "module property suites");
  std::string verify_sel = "all", verify_json;
  verify_cmd->add_option("selector", verify_sel, "module name or 'all'");
  verify_cmd->add_option("--json", verify_json, "also write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }

  if (euclid_run->parsed()) {
    auto [basis, gens] = group_from_json(read_json_file(euclid_group));
    auto start = positive_decreasing_basis(lattice_basis(gens));
    auto steps = iterate_algorithm(start, euclid_steps);
    write_text_file(euclid_report_path, euclid_report(steps).dump(2) + "\n");
    std::cout << "wrote " << euclid_report_path << " (" << steps.size() << " steps)\n";
    return 0;
  }

  if (pipe_build->parsed()) {
    PipelineOptions opt;
    opt.levels = pipe_levels;
    opt.kneading_depth = pipe_K;
    opt.vershik_steps = pipe_steps;
    opt.dictionary_depth = pipe_depth;
    opt.tol = parse_rational(pipe_tol);
    PipelineReport rep;
    if (!pipe_mult.empty()) {
      std::vector<std::int64_t> ms;
      std::stringstream ss(pipe_mult);
      for (std::string tok; std::getline(ss, tok, ',');) ms.push_back(std::stoll(tok));
      rep = run_pipeline_rational(ms, opt);
    } else if (!pipe_group.empty()) {
      auto [basis, gens] = group_from_json(read_json_file(pipe_group));
      rep = run_pipeline(basis, gens, opt);
    } else {
      std::cerr << "pipeline build needs --group or --multipliers\n";
      return 2;
    }
    write_text_file(pipe_out, rep.data.dump(2) + "\n");
    std::cout << "wrote " << pipe_out << " pass=" << (rep.pass ? "true" : "false") << "\n";
    return rep.pass ? 0 : 1;
  }

  if (factor_cmd->parsed()) {
    MatZ m = matrix_from_json(read_json_file(factor_matrix));
    FactorChain c = factor_into_basics(m);
    Json j = chain_to_json(c);
    j["matrix"] = matrix_to_json(m);
    IndexedMatrix prod = chain_product(c.w);
    j["product_matches"] = equal_up_to_reindexing(prod, IndexedMatrix{prod.rows, prod.cols, m});
    write_text_file(factor_out, j.dump(2) + "\n");
    std::cout << "wrote " << factor_out << " (k=" << c.k << ")\n";
    return 0;
  }

  if (odo_sim->parsed()) {
    KneadingMap q = kneading_from_json(read_json_file(odo_q));
    write_text_file(odo_out, orbit_csv(q, odo_steps, odo_depth));
    std::cout << "wrote " << odo_out << "\n";
    return 0;
  }

  if (brat_check->parsed()) {
    KneadingMap q = kneading_from_json(read_json_file(brat_q));
    int levels = brat_levels > 0 ? brat_levels : q.K() - 1;
    OrderedBratteliDiagram b = diagram_from_Q(q, levels);
    if (!brat_dot.empty()) write_text_file(brat_dot, to_dot(b));
    ConjugacyReport r = conjugacy_check(b, q, brat_steps, brat_depth);
    Json j = conjugacy_to_json(r);
    j["levels"] = levels;
    write_text_file(brat_out, j.dump(2) + "\n");
    std::cout << "wrote " << brat_out << " pass=" << (r.pass ? "true" : "false") << "\n";
    return r.pass ? 0 : 1;
  }

  if (log_find->parsed()) {
    KneadingMap q = kneading_from_json(read_json_file(find_q));
    LogisticParameter lam = find_lambda(q, find_K, parse_rational(find_tol));
    CuttingTimes cs = cutting_times(q, find_K);
    HofbauerTower tower = hofbauer_tower(lam.value, static_cast<int>(cs.s[find_K]));
    write_text_file(find_out, lambda_to_json(lam, tower).dump(2) + "\n");
    std::cout << "wrote " << find_out << " lambda~" << lam.enclosure.lo.to_decimal(17) << "\n";
    return 0;
  }

  if (log_tower->parsed()) {
    mpq_class lambda = parse_rational(tower_lambda);
    HofbauerTower t = hofbauer_tower(lambda, tower_n);
    CriticalOrbit orbit(lambda);
    write_text_file(tower_csv_path, tower_csv(t, orbit));
    if (!tower_orbit.empty()) write_text_file(tower_orbit, postcritical_csv(orbit, tower_n));
    std::cout << "wrote " << tower_csv_path << " (" << t.s.size() << " cutting times)\n";
    return 0;
  }

  if (verify_cmd->parsed()) {
    auto results = verify_suite(verify_sel);
    bool all = true;
    for (const auto& r : results) {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n";
      all = all && r.pass;
    }
    if (!verify_json.empty()) write_text_file(verify_json, verify_to_json(results).dump(2) + "\n");
    return all ? 0 : 1;
  }

  std::cerr << "no subcommand\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const PrecisionCapExceeded& e) {
    std::cerr << "precision cap: " << e.what() << "\n";
    return 3;
  } catch (const UndecidableMembership& e) {
    std::cerr << "precision cap: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "verification: " << e.what() << "\n";
    return 1;
  }
}

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include "gowers/cube.h"
#include "gowers/dynamics.h"
#include "gowers/error.h"
#include "gowers/finite_system.h"
#include "gowers/function_io.h"
#include "gowers/function_space.h"
#include "gowers/gowers.h"
#include "gowers/heisenberg.h"
#include "gowers/phase_poly.h"
#include "gowers/system_io.h"
#include "report.h"
#include "suite.h"

namespace gowers::cli {
namespace {

using report::Json;

void emit_result(const std::string& name, const Json& result, const RunConfig& config) {
  const std::string text = report::canonical_json(result);
  std::fputs(text.c_str(), stdout);
  if (!config.out_dir.empty()) report::write_artifact(config.out_dir, name + ".json", text);
}

// Relative artifact paths land in --out-dir when one is given.
void write_file(const std::string& path, const std::string& content, const RunConfig& config) {
  std::filesystem::path target(path);
  if (target.is_relative() && !config.out_dir.empty()) target = config.out_dir / target;
  const std::string dir = target.has_parent_path() ? target.parent_path().string() : ".";
  report::write_artifact(dir, target.filename().string(), content);
}

Json norm_json(const NormReport& r) {
  Json out = {{"k", r.k},
              {"value", r.value},
              {"power", r.power},
              {"method", std::string(method_name(r.method))},
              {"term_count", r.term_count}};
  if (!r.warning.empty()) out["warning"] = r.warning;
  return out;
}

Json exponents_json(const ExponentFunction& P) {
  return {{"p", P.space().p()}, {"n", P.space().n()}, {"m", P.m()}, {"exponents", P.exponents()}};
}

LaurentWindow torus_from(const HeisenbergWindow& window, const std::vector<int>& coeffs,
                         const char* name) {
  if (static_cast<int>(coeffs.size()) > window.m) {
    throw DomainError(std::string("--") + name + " has more coefficients than the window");
  }
  LaurentWindow out = window.zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.set(-1 - static_cast<int>(i), coeffs[i]);
  return out;
}

std::vector<int> torus_coeffs(const LaurentWindow& w, int m) {
  std::vector<int> out;
  for (int i = 0; i < m; ++i) out.push_back(static_cast<int>(w.coeff(-1 - i)));
  return out;
}

}  // namespace

int run_norm(const NormArgs& args, const RunConfig& config) {
  const GroupFunction f = load_function(args.input).function;
  Json result;
  report::Table table{{"k", "method", "value", "power", "term_count"}, {}};
  auto add_row = [&](const NormReport& r) {
    table.rows.push_back({static_cast<long long>(r.k), std::string(method_name(r.method)),
                          r.value, r.power, static_cast<long long>(r.term_count)});
  };
  if (args.method == "both") {
    const NormReport direct = gowers_norm_direct(f, args.k, config.options);
    const NormReport fast = gowers_norm_fast(f, args.k, config.options);
    result = {{"direct", norm_json(direct)},
              {"fast", norm_json(fast)},
              {"difference", std::abs(direct.value - fast.value)}};
    add_row(direct);
    add_row(fast);
  } else {
    NormReport r;
    if (args.method == "direct") {
      r = gowers_norm_direct(f, args.k, config.options);
    } else if (args.method == "fast") {
      r = gowers_norm_fast(f, args.k, config.options);
    } else if (args.method == "recursive") {
      r = gowers_norm_recursive(f, args.k, config.options);
    } else {
      r = gowers_norm(f, args.k, config.options);
    }
    result = norm_json(r);
    add_row(r);
  }
  if (!args.emit.empty()) write_file(args.emit, table.to_csv(), config);
  emit_result("norm", result, config);
  return 0;
}

int run_cube(const CubeArgs& args, const RunConfig& config) {
  const FiniteSystem system =
      args.system.empty() ? translation_system(args.p, args.n) : load_system(args.system);
  const CubeMeasure cubes = cube_space(system, args.k, config.options);
  double total = 0;
  for (double w : cubes.weights) total += w;
  if (!args.emit_support.empty()) {
    report::Table table;
    for (std::size_t v = 0; v < cubes.vertices; ++v) table.columns.push_back("v" + std::to_string(v));
    table.columns.push_back("weight");
    table.columns.push_back("orbit");
    for (std::size_t s = 0; s < cubes.size(); ++s) {
      std::vector<report::Cell> row;
      for (std::uint32_t x : cubes.cube(s)) row.emplace_back(static_cast<long long>(x));
      row.emplace_back(cubes.weights[s]);
      row.emplace_back(static_cast<long long>(cubes.block_of[s]));
      table.rows.push_back(std::move(row));
    }
    write_file(args.emit_support, table.to_csv(), config);
  }
  emit_result("cube",
              {{"k", args.k},
               {"points", system.size()},
               {"vertices", cubes.vertices},
               {"cubes", cubes.size()},
               {"orbits", cubes.blocks.size()},
               {"total_weight", total}},
              config);
  return 0;
}

int run_phase_check(const PhaseCheckArgs& args, const RunConfig& config) {
  const LoadedFunction loaded = load_function(args.input);
  const DegreeCertificate cert = loaded.exponents ? degree_test(*loaded.exponents, args.k_max)
                                                  : degree_test(loaded.function, args.k_max);
  Json result = {{"k_max", cert.k_max},
                 {"derivatives_checked", cert.derivatives_checked},
                 {"exact", loaded.exponents.has_value()},
                 {"degree", cert.degree ? Json(*cert.degree) : Json(nullptr)}};
  if (loaded.exponents) {
    result["torsion"] = loaded.exponents->plus_constant(-(*loaded.exponents)[0]).torsion();
  }
  if (args.audit_k) {
    if (!loaded.exponents) throw ContractError("--audit needs an input with exponents");
    const TorsionAudit a = torsion_audit(certify(*loaded.exponents), *args.audit_k);
    Json audit = {{"k", a.k},
                  {"rotation", a.rotation},
                  {"asserted_torsion", a.asserted_torsion},
                  {"minimal_torsion", a.minimal_torsion},
                  {"values_ok", a.values_ok},
                  {"line_torsion", a.line_torsion},
                  {"lines_checked", a.lines_checked},
                  {"line_ok", a.line_ok},
                  {"line_up_to_constant_ok", a.line_up_to_constant_ok},
                  {"power_ok", a.power_ok},
                  {"passed", a.passed()}};
    if (a.line_failure) {
      audit["line_failure"] = {{"g", a.line_failure->g},
                               {"x", a.line_failure->x},
                               {"torsion", a.line_failure->torsion}};
    }
    if (a.power_degree) audit["power_degree"] = *a.power_degree;
    result["audit"] = audit;
  }
  emit_result("phase-check", result, config);
  return 0;
}

int run_inverse_search(const InverseSearchArgs& args, const RunConfig& config) {
  const InverseSearchOptions search{args.unsafe_low_char};
  std::vector<std::pair<double, double>> observations;  // (norm, correlation)
  Json result;
  int p = args.p;
  int n = args.n;
  if (!args.input.empty()) {
    const GroupFunction f = load_function(args.input).function;
    p = f.space().p();
    n = f.space().n();
    const CorrelationResult r = inverse_search(f, args.k, config.options, search);
    const double norm = gowers_norm(f, args.k, config.options).value;
    observations.emplace_back(norm, r.correlation);
    result = {{"k", args.k},
              {"norm", norm},
              {"correlation", r.correlation},
              {"witness_index", r.witness_index},
              {"searched_count", r.searched_count},
              {"witness", exponents_json(r.witness.exponent)}};
  } else {
    if (p < 2 || n < 1 || args.trials < 1) {
      throw ContractError("inverse-search needs --input or --p, --n and --trials");
    }
    // Noisy phase polynomials of degree < k, mixed by a uniform weight.
    const Space space(p, n);
    const PhasePolynomialFamily family(p, n, args.k, inverse_search_torsion(p, args.k), true);
    Rng rng(config.seed);
    for (int t = 0; t < args.trials; ++t) {
      ExponentFunction P = ExponentFunction::zero(space, family.m());
      for (std::size_t i = 0; i < family.generators().size(); ++i) {
        const auto order = static_cast<std::uint64_t>(
            checked_pow(p, family.generators()[i].log_order));
        P = P + family.generator(i).times(static_cast<std::int64_t>(rng.uniform(order)));
      }
      std::vector<Complex> noise(space.size());
      for (auto& z : noise) z = rng.unit_disk();
      const double s = rng.uniform_real();
      const GroupFunction f =
          P.to_function().scaled(1 - s) + GroupFunction(space, std::move(noise)).scaled(s);
      observations.emplace_back(gowers_norm(f, args.k, config.options).value,
                                inverse_search(f, args.k, config.options, search).correlation);
    }
    result = {{"k", args.k}, {"p", p}, {"n", n}, {"trials", args.trials}};
  }

  report::Table table{{"p", "n", "k", "delta", "min_correlation", "trials"}, {}};
  Json rows = Json::array();
  for (double delta : args.deltas) {
    long long trials = 0;
    double min_corr = std::numeric_limits<double>::infinity();
    for (const auto& [u, c] : observations) {
      if (u >= delta) {
        ++trials;
        min_corr = std::min(min_corr, c);
      }
    }
    std::vector<report::Cell> row = {static_cast<long long>(p), static_cast<long long>(n),
                                     static_cast<long long>(args.k), delta};
    if (trials > 0) {
      row.emplace_back(min_corr);
    } else {
      row.emplace_back(std::string());
    }
    row.emplace_back(trials);
    table.rows.push_back(std::move(row));
    rows.push_back({{"delta", delta},
                    {"trials", trials},
                    {"min_correlation", trials > 0 ? Json(min_corr) : Json(nullptr)}});
  }
  if (!args.deltas.empty()) result["deltas"] = rows;
  if (!args.emit.empty()) write_file(args.emit, table.to_csv(), config);
  emit_result("inverse-search", result, config);
  return 0;
}

int run_cocycle(const CocycleArgs& args, const RunConfig& config) {
  const FiniteSystem system = load_system(args.system);
  const CocycleTable rho = load_cocycle(args.rho, system);
  Json result = {{"check", args.check}};
  if (args.check == "cocycle") {
    const CocycleCheck c = is_cocycle(system, rho, config.options);
    result["ok"] = c.ok;
    if (!c.ok) result["witness"] = {{"g", c.g}, {"g2", c.g2}, {"x", c.x}};
  } else if (args.check == "coboundary") {
    const CoboundaryResult r = solve_coboundary(system, rho, config.options);
    result["solved"] = r.solved();
    if (r.witness) {
      result["potential"] = r.witness->potential;
      result["basepoints"] = r.witness->basepoints;
    }
    if (r.obstruction) {
      Json cycle = Json::array();
      for (const CycleEdge& e : r.obstruction->cycle) {
        cycle.push_back({{"from", e.from}, {"to", e.to}, {"g", e.g}, {"forward", e.forward}});
      }
      result["obstruction"] = {{"cycle", cycle}, {"holonomy", r.obstruction->holonomy}};
    }
  } else if (args.check.rfind("type:", 0) == 0 || args.check.rfind("torsion:", 0) == 0) {
    const std::size_t colon = args.check.find(':');
    int k = 0;
    try {
      k = std::stoi(args.check.substr(colon + 1));
    } catch (const std::exception&) {
      throw ContractError("bad order in --check " + args.check);
    }
    result["k"] = k;
    if (args.check[1] == 'y') {
      const TypeTestResult t = type_test(system, rho, k, config.options);
      result["passed"] = t.passed;
      result["cube_points"] = t.cube_points;
    } else {
      const CocycleTorsionAudit a = cocycle_torsion_audit(system, rho, k, config.options);
      result["ok"] = a.ok;
      result["asserted_torsion"] = a.asserted_torsion;
      result["measured_torsion"] = a.measured_torsion;
      if (a.witness) result["witness"] = {{"g", a.witness->first}, {"x", a.witness->second}};
    }
  } else {
    throw ContractError("--check must be cocycle, coboundary, type:K or torsion:K");
  }
  emit_result("cocycle", result, config);
  return 0;
}

int run_heisenberg(const HeisenbergArgs& args, const RunConfig& config) {
  const HeisenbergWindow window{args.p, args.window, args.gdeg};
  validate(window);
  Rng rng(config.seed);
  HeisenbergParams params = random_params(window, rng);
  if (args.alpha) params.alpha = torus_from(window, *args.alpha, "alpha");
  if (args.beta) params.beta = torus_from(window, *args.beta, "beta");
  if (args.gamma) params.gamma = torus_from(window, *args.gamma, "gamma");
  const HeisenbergCertificate cert = certify_phase_polynomial(params, window, config.options);
  emit_result("heisenberg",
              {{"p", args.p},
               {"window", args.window},
               {"gdeg", args.gdeg},
               {"alpha", torus_coeffs(params.alpha, window.m)},
               {"beta", torus_coeffs(params.beta, window.m)},
               {"gamma", torus_coeffs(params.gamma, window.m)},
               {"group_size", cert.group_size},
               {"cases_checked", cert.cases_checked},
               {"identity_verified", cert.identity_verified},
               {"nonvanishing_order", cert.nonvanishing_order},
               {"degree", cert.degree ? Json(*cert.degree) : Json(nullptr)},
               {"u3_norm", cert.u3_norm}},
              config);
  return 0;
}

int run_selftest(const SelftestArgs& args, const RunConfig& config) {
  acceptance::SuiteConfig suite;
  suite.seed = config.seed;
  suite.threads = config.options.threads;
  suite.budget = config.options.budget;
  suite.out_dir = config.out_dir.empty() ? "selftest-artifacts" : config.out_dir;
  std::vector<int> ids = args.only;
  if (ids.empty()) {
    // The determinism criterion reruns this command and is left to the
    // acceptance binary.
    for (int id = 1; id < acceptance::kCriteria; ++id) ids.push_back(id);
  }
  std::vector<acceptance::CriterionResult> results;
  int failed = 0;
  for (int id : ids) {
    if (id < 1 || id >= acceptance::kCriteria) {
      throw ContractError("selftest runs criteria 1.." + std::to_string(acceptance::kCriteria - 1));
    }
    results.push_back(acceptance::run_criterion(id, suite));
    std::printf("%s\n", acceptance::format_line(results.back()).c_str());
    std::fflush(stdout);
    failed += !results.back().passed();
  }
  acceptance::write_summary(results, suite);
  std::printf("%zu criteria, %d failed; artifacts in %s\n", results.size(), failed,
              suite.out_dir.c_str());
  return failed == 0 ? 0 : 1;
}

}  // namespace gowers::cli

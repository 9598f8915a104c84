#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "gowers/error.h"

namespace {

constexpr int kExitContract = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitUsage = 64;

// GOWERS_BUDGET, when set, replaces the default budget (a flag still wins).
bool budget_from_env(std::uint64_t& budget) {
  const char* env = std::getenv("GOWERS_BUDGET");
  if (env == nullptr || *env == '\0') return true;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) return false;
  budget = v;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gowers::cli;

  CLI::App app{"Uniformity norms, phase polynomials, cube spaces and cocycles"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig config;
  if (!budget_from_env(config.options.budget)) {
    std::fprintf(stderr, "error: GOWERS_BUDGET must be a positive integer\n");
    return kExitUsage;
  }
  app.add_option("--threads", config.options.threads, "Worker threads")
      ->check(CLI::Range(1, 256));
  app.add_option("--seed", config.seed, "Seed for randomized inputs");
  app.add_option("--budget", config.options.budget, "Scalar operations allowed per call")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-dir", config.out_dir, "Directory for artifacts");

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "U^k norm of a function");
  norm_cmd->add_option("--input", norm.input, "Function JSON")->required();
  norm_cmd->add_option("--k", norm.k, "Order")->required()->check(CLI::Range(1, 16));
  norm_cmd->add_option("--method", norm.method, "Evaluation path")
      ->check(CLI::IsMember({"auto", "direct", "fast", "recursive", "both"}));
  norm_cmd->add_option("--emit", norm.emit, "CSV report");

  CubeArgs cube;
  auto* cube_cmd = app.add_subcommand("cube", "Cube measure of a system");
  cube_cmd->add_option("--p", cube.p, "Prime");
  cube_cmd->add_option("--n", cube.n, "Dimension");
  cube_cmd->add_option("--k", cube.k, "Level")->required()->check(CLI::Range(0, 16));
  cube_cmd->add_option("--system", cube.system, "System JSON instead of a translation system");
  cube_cmd->add_option("--emit-support", cube.emit_support, "CSV of cubes and weights");

  PhaseCheckArgs phase;
  auto* phase_cmd = app.add_subcommand("phase-check", "Degree certificate of a phase");
  phase_cmd->add_option("--input", phase.input, "Function JSON")->required();
  phase_cmd->add_option("--kmax", phase.k_max, "Largest degree tried")->check(CLI::Range(0, 64));
  phase_cmd->add_option("--audit", phase.audit_k, "Run the torsion audit at this order");

  InverseSearchArgs inverse;
  auto* inverse_cmd =
      app.add_subcommand("inverse-search", "Best correlating phase polynomial");
  inverse_cmd->add_option("--input", inverse.input, "Function JSON");
  inverse_cmd->add_option("--k", inverse.k, "Order")->required()->check(CLI::Range(1, 16));
  inverse_cmd->add_option("--delta", inverse.deltas, "Norm thresholds for the CSV");
  inverse_cmd->add_option("--emit", inverse.emit, "CSV p,n,k,delta,min_correlation,trials");
  inverse_cmd->add_flag("--unsafe-low-char", inverse.unsafe_low_char, "Allow k > p");
  inverse_cmd->add_option("--p", inverse.p, "Prime for random trials");
  inverse_cmd->add_option("--n", inverse.n, "Dimension for random trials");
  inverse_cmd->add_option("--trials", inverse.trials, "Number of random functions");

  CocycleArgs cocycle;
  auto* cocycle_cmd = app.add_subcommand("cocycle", "Cocycle, coboundary and type checks");
  cocycle_cmd->add_option("--system", cocycle.system, "System JSON")->required();
  cocycle_cmd->add_option("--rho", cocycle.rho, "Cocycle JSON")->required();
  cocycle_cmd->add_option("--check", cocycle.check, "cocycle|coboundary|type:K|torsion:K");

  HeisenbergArgs heis;
  std::vector<int> alpha, beta, gamma;
  auto* heis_cmd = app.add_subcommand("heisenberg", "Phase certificate of the F_p[t] example");
  heis_cmd->add_option("--p", heis.p, "Odd prime");
  heis_cmd->add_option("--window", heis.window, "Torus precision m");
  heis_cmd->add_option("--gdeg", heis.gdeg, "Acting polynomials have degree below this");
  auto* alpha_opt = heis_cmd->add_option("--alpha", alpha, "Coefficients of t^-1, t^-2, ...");
  auto* beta_opt = heis_cmd->add_option("--beta", beta, "Coefficients of t^-1, t^-2, ...");
  auto* gamma_opt = heis_cmd->add_option("--gamma", gamma, "Coefficients of t^-1, t^-2, ...");

  SelftestArgs selftest;
  auto* selftest_cmd = app.add_subcommand("selftest", "Acceptance checks 1-13");
  selftest_cmd->add_option("--only", selftest.only, "Run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (alpha_opt->count()) heis.alpha = alpha;
  if (beta_opt->count()) heis.beta = beta;
  if (gamma_opt->count()) heis.gamma = gamma;

  try {
    if (*norm_cmd) return run_norm(norm, config);
    if (*cube_cmd) return run_cube(cube, config);
    if (*phase_cmd) return run_phase_check(phase, config);
    if (*inverse_cmd) return run_inverse_search(inverse, config);
    if (*cocycle_cmd) return run_cocycle(cocycle, config);
    if (*heis_cmd) return run_heisenberg(heis, config);
    if (*selftest_cmd) return run_selftest(selftest, config);
  } catch (const gowers::ContractError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitContract;
  } catch (const gowers::CapacityError& e) {
    std::fprintf(stderr, "capacity: %s\n", e.what());
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}

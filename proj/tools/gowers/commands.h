#ifndef GOWERS_TOOLS_COMMANDS_H_
#define GOWERS_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gowers/compute.h"

namespace gowers::cli {

// Settings shared by every subcommand.
struct RunConfig {
  ComputeOptions options;
  std::uint64_t seed = 7;
  // Where artifacts without an explicit path go; also receives a copy of
  // each subcommand's JSON result when set.
  std::string out_dir;
};

struct NormArgs {
  std::string input;
  int k = 2;
  std::string method = "auto";
  std::string emit;
};

struct CubeArgs {
  int p = 2;
  int n = 1;
  int k = 1;
  std::string system;
  std::string emit_support;
};

struct PhaseCheckArgs {
  std::string input;
  int k_max = 4;
  // Audits the value and line conditions at this order when set.
  std::optional<int> audit_k;
};

struct InverseSearchArgs {
  std::string input;
  int k = 2;
  std::vector<double> deltas;
  std::string emit;
  bool unsafe_low_char = false;
  // Without --input: random functions on F_p^n.
  int p = 0;
  int n = 0;
  int trials = 0;
};

struct CocycleArgs {
  std::string system;
  std::string rho;
  std::string check = "cocycle";
};

struct HeisenbergArgs {
  int p = 3;
  int window = 2;
  int gdeg = 2;
  // Coefficients of t^-1, t^-2, ...; random from the seed when absent.
  std::optional<std::vector<int>> alpha;
  std::optional<std::vector<int>> beta;
  std::optional<std::vector<int>> gamma;
};

struct SelftestArgs {
  std::vector<int> only;
};

// Each command prints its JSON result on stdout and returns the exit code.
int run_norm(const NormArgs& args, const RunConfig& config);
int run_cube(const CubeArgs& args, const RunConfig& config);
int run_phase_check(const PhaseCheckArgs& args, const RunConfig& config);
int run_inverse_search(const InverseSearchArgs& args, const RunConfig& config);
int run_cocycle(const CocycleArgs& args, const RunConfig& config);
int run_heisenberg(const HeisenbergArgs& args, const RunConfig& config);
int run_selftest(const SelftestArgs& args, const RunConfig& config);

}  // namespace gowers::cli

#endif  // GOWERS_TOOLS_COMMANDS_H_

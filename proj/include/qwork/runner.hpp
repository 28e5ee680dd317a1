#pragma once

// Seeded experiment runner: builds reproducible instance ensembles, runs the
// scheme/condition experiments, and writes machine-readable reports.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwork/theorems.hpp"

namespace qwork {

struct RunConfig {
  std::string command = "all";  // table1 | je-class | scaling | upsilon | gaussian-limit | all
  std::vector<int> dims = {2, 3, 4};
  std::vector<std::uint64_t> seeds;
  std::vector<double> betas = {1.0};
  std::vector<double> xs = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> beta_hbars = {1e-1, 1e-2, 1e-3, 1e-4};
  double tol_pass = 1e-8;
  double tol_fail = 1e-3;
  int max_fock_cutoff = 512;
  std::string out_dir = "reports";
};

// A seeded process instance with a generic (coherent, full-rank) test state.
// Hamiltonians are normalized to unit operator norm.
struct Instance {
  int dim = 0;
  std::uint64_t seed = 0;
  HermitianOperator h;
  HermitianOperator h_final;
  UnitaryOperator u;
  DensityMatrix rho;

  Process process() const { return Process(h, h_final, u); }
};

// Noncommuting by construction: ||[U† H' U, H]|| > 1e-6 (reseeded otherwise).
Instance make_instance(int dim, std::uint64_t seed);
// All operators share one eigenbasis; every scheme satisfies every condition.
Instance make_commuting_instance(int dim, std::uint64_t seed);
// Unit-norm Hamiltonian/generator pair with tr(rho [h, H]) bounded away from 0.
struct PiInstance {
  int dim = 0;
  std::uint64_t seed = 0;
  HermitianOperator h_system;
  HermitianOperator generator;
  DensityMatrix rho;
};
PiInstance make_pi_instance(int dim, std::uint64_t seed);

// The four scheme constructors keyed by name, in report order.
const std::vector<std::pair<std::string, SchemeFactory>>& scheme_factories();

// "1..50" and plain integers.
std::vector<std::uint64_t> expand_seed_ranges(const std::vector<std::string>& specs);

nlohmann::json report_to_json(const ConditionReport& r);

struct CommandResult {
  nlohmann::json report;
  bool match = false;
};

CommandResult run_table1(const RunConfig& cfg);
CommandResult run_je_class(const RunConfig& cfg);
CommandResult run_scaling(const RunConfig& cfg);
CommandResult run_upsilon(const RunConfig& cfg);
CommandResult run_gaussian_limit(const RunConfig& cfg, std::string* csv_out = nullptr);

// Executes the configured command(s), writes one JSON report per command
// (plus the CSV for gaussian-limit) under cfg.out_dir. Returns 0 when every
// observed pattern matches the predicted one, 1 on a mismatch, 2 on I/O
// failure.
int run(const RunConfig& cfg);

}  // namespace qwork

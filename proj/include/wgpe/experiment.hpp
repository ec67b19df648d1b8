// Experiment harness: runs (method, mesh) ladders for the built-in example
// problems or custom configurations, estimates convergence orders from
// mesh-doubling sequences, attaches two-sided eigenvalue bounds per level,
// and emits CSV / JSON / text-table reports.

#ifndef WGPE_EXPERIMENT_HPP
#define WGPE_EXPERIMENT_HPP

#include "wgpe/bounds.hpp"
#include "wgpe/conforming.hpp"
#include "wgpe/eigensolve.hpp"
#include "wgpe/problem.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wgpe {

enum class Method { WgK1, WgK2, P1, P2 };

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

/// Built-in problems; `beta` overrides the registry default.
/// example1: (-8,8)^2, V = 1, beta = 1
/// example2: (-1,1)^2, V = x^2+y^2, beta = 2
/// example3: (-6,6)^2, V = x^2+y^2, beta in {20, 200, 2000} (default 20)
/// example4: (-8,8)^2, V = x^2+y^2 + 8 exp(-(x-1)^2-y^2), beta = 400
ProblemSpec example_problem(const std::string& id,
                            std::optional<double> beta = std::nullopt);

struct ExperimentConfig {
  std::string example = "example1";  ///< registry id, or "custom"
  ProblemSpec problem;               ///< resolved problem
  std::vector<Method> methods = {Method::WgK1};
  std::vector<int> mesh_ladder = {16, 32, 64, 128};
  double epsilon = 0.1;
  ScfConfig scf;
  std::string out;                   ///< output path; empty writes to stdout
  std::string format = "table";      ///< csv | json | table
  int jobs = 0;                      ///< parallel cells; 0 = hardware
  std::string history_dir;           ///< when set, per-cell SCF history CSVs

  /// Throws std::invalid_argument on a non-increasing ladder, bad format, or
  /// an invalid problem.
  void validate() const;
};

/// Parses a JSON experiment configuration. Accepted keys: example, beta,
/// domain ([xmin,xmax,ymin,ymax]), potential ({kind, ...}), methods, N,
/// epsilon, scf ({damping, tol_lambda, tol_state, tol_residual, max_iters,
/// inner_tol, adaptive_damping}), out, format, jobs, history_dir.
/// Throws std::invalid_argument on malformed input.
ExperimentConfig parse_config(const std::string& json_text);

struct CellResult {
  Method method = Method::WgK1;
  int N = 0;
  double h = 0.0;
  bool ok = false;
  std::string error;
  double lambda = 0.0;
  double energy = 0.0;
  double l4norm4 = 0.0;
  int iters = 0;
  double residual = 0.0;
  std::optional<double> order_lambda;
  std::optional<double> order_energy;
  std::optional<double> lambda_lower;
  std::optional<double> lambda_upper;
};

struct ConvergenceReport {
  std::string example;
  double epsilon = 0.1;
  double beta = 0.0;
  std::vector<CellResult> rows;  ///< method-major, N ascending
  bool all_ok = true;
};

/// Solves one (method, N) cell on a shared mesh.
GroundState solve_cell(std::shared_ptr<const TriMesh> mesh, const ProblemSpec& spec,
                       Method method, double epsilon, const ScfConfig& scf);

/// Runs every requested cell (independent cells may run concurrently),
/// recording per-cell failures without aborting the ladder.
ConvergenceReport run_experiment(const ExperimentConfig& config);

/// log2 of the ratio of successive differences of a mesh-doubling sequence
/// (coarse, middle, fine); nullopt when a difference vanishes or the
/// differences change sign.
std::optional<double> order_estimate(double coarse, double middle, double fine);

void emit_csv(const ConvergenceReport& report, std::ostream& out);
void emit_json(const ConvergenceReport& report, std::ostream& out);
void emit_table(const ConvergenceReport& report, std::ostream& out);

/// Dispatches on config.format and config.out. Returns the paths written
/// (empty when writing to stdout).
std::vector<std::string> emit_report(const ConvergenceReport& report,
                                     const ExperimentConfig& config);

}  // namespace wgpe

#endif

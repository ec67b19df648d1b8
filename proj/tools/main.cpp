// Command-line experiment driver: solves ground states over mesh ladders for
// the built-in examples (or a custom problem from a JSON config), reports
// eigenvalues, energies, convergence orders and two-sided bounds.

#include "wgpe/assembly.hpp"
#include "wgpe/experiment.hpp"
#include "wgpe/wg_space.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Weak Galerkin ground states of Gross-Pitaevskii problems "
               "with two-sided eigenvalue bounds"};

  std::string config_path;
  std::string example;
  std::vector<std::string> methods;
  std::vector<int> ladder;
  double epsilon = -1.0;
  double beta = -1.0;
  bool beta_set = false;
  std::string out;
  std::string format;
  int jobs = -1;
  std::string history_dir;
  std::string dump_mesh;
  std::string dump_matrix;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--example", example, "built-in problem: example1..example4");
  app.add_option("--method", methods,
                 "methods to run: wg_k1, wg_k2, p1, p2 (repeatable)")
      ->delimiter(',');
  app.add_option("--N", ladder, "mesh ladder, e.g. 16,32,64,128")->delimiter(',');
  app.add_option("--epsilon", epsilon, "stabilizer exponent parameter in (0,1)");
  app.add_option("--beta", beta, "nonlinearity strength override")
      ->each([&](const std::string&) { beta_set = true; });
  app.add_option("--out", out, "output file (default: stdout)");
  app.add_option("--format", format, "csv | json | table");
  app.add_option("--jobs", jobs, "parallel cells (0 = hardware)");
  app.add_option("--history-dir", history_dir, "directory for SCF history CSVs");
  app.add_option("--dump-mesh", dump_mesh,
                 "write <prefix>_N<n>.node/.ele for each ladder level");
  app.add_option("--dump-matrix", dump_matrix,
                 "write MatrixMarket <prefix>_K.mtx/_M.mtx (WG k=1, coarsest N)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return (code == 0) ? 0 : 1;
  }

  wgpe::ExperimentConfig config;
  try {
    if (!config_path.empty()) {
      config = wgpe::parse_config(read_file(config_path));
    }
    // Flags win over the config file.
    if (!example.empty()) {
      config.example = example;
      config.problem = wgpe::example_problem(
          example, beta_set ? std::optional<double>(beta) : std::nullopt);
    } else if (config_path.empty()) {
      config.problem = wgpe::example_problem(
          config.example, beta_set ? std::optional<double>(beta) : std::nullopt);
    } else if (beta_set) {
      config.problem.term.beta = beta;
    }
    if (!methods.empty()) {
      config.methods.clear();
      for (const auto& name : methods) {
        const auto m = wgpe::parse_method(name);
        if (!m) {
          throw std::invalid_argument("unknown method '" + name + "'");
        }
        config.methods.push_back(*m);
      }
    }
    if (!ladder.empty()) {
      config.mesh_ladder = ladder;
    }
    if (epsilon > 0.0) {
      config.epsilon = epsilon;
    }
    if (!out.empty()) {
      config.out = out;
    }
    if (!format.empty()) {
      config.format = format;
    }
    if (jobs >= 0) {
      config.jobs = jobs;
    }
    if (!history_dir.empty()) {
      config.history_dir = history_dir;
    }
    config.validate();
  } catch (const std::exception& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  }

  try {
    if (!dump_mesh.empty()) {
      for (int n : config.mesh_ladder) {
        const auto mesh = wgpe::TriMesh::uniform(config.problem.domain, n);
        mesh.export_node_ele(dump_mesh + "_N" + std::to_string(n));
      }
    }
    if (!dump_matrix.empty()) {
      const auto mesh = std::make_shared<wgpe::TriMesh>(
          wgpe::TriMesh::uniform(config.problem.domain, config.mesh_ladder.front()));
      const wgpe::WgSpace space(mesh, 1);
      const auto ops = wgpe::assemble_linear(space, config.problem, config.epsilon);
      ops.stiffness.write_matrix_market(dump_matrix + "_K.mtx");
      ops.mass.write_matrix_market(dump_matrix + "_M.mtx");
    }

    const wgpe::ConvergenceReport report = wgpe::run_experiment(config);
    wgpe::emit_report(report, config);

    if (!report.all_ok) {
      for (const auto& row : report.rows) {
        if (!row.ok) {
          std::cerr << "cell failed: " << wgpe::method_name(row.method) << " N="
                    << row.N << ": " << row.error << "\n";
        }
      }
      return 2;
    }
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}

#include "wgpe/experiment.hpp"

#include "wgpe/wg_space.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wgpe {

namespace {

std::string fmt17(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string method_name(Method m)
{
  switch (m) {
  case Method::WgK1:
    return "wg_k1";
  case Method::WgK2:
    return "wg_k2";
  case Method::P1:
    return "p1";
  case Method::P2:
    return "p2";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name)
{
  if (name == "wg_k1") {
    return Method::WgK1;
  }
  if (name == "wg_k2") {
    return Method::WgK2;
  }
  if (name == "p1") {
    return Method::P1;
  }
  if (name == "p2") {
    return Method::P2;
  }
  return std::nullopt;
}

ProblemSpec example_problem(const std::string& id, std::optional<double> beta)
{
  ProblemSpec spec;
  spec.name = id;
  if (id == "example1") {
    spec.domain = Rect::square(-8.0, 8.0);
    spec.potential = Potential::constant(1.0);
    spec.term.beta = beta.value_or(1.0);
  } else if (id == "example2") {
    spec.domain = Rect::square(-1.0, 1.0);
    spec.potential = Potential::harmonic();
    spec.term.beta = beta.value_or(2.0);
  } else if (id == "example3") {
    spec.domain = Rect::square(-6.0, 6.0);
    spec.potential = Potential::harmonic();
    spec.term.beta = beta.value_or(20.0);
  } else if (id == "example4") {
    spec.domain = Rect::square(-8.0, 8.0);
    spec.potential = Potential::harmonic_plus_gaussian(8.0, 1.0, 0.0);
    spec.term.beta = beta.value_or(400.0);
  } else {
    throw std::invalid_argument("example_problem: unknown example id '" + id + "'");
  }
  spec.validate();
  return spec;
}

void ExperimentConfig::validate() const
{
  problem.validate();
  scf.validate();
  if (mesh_ladder.empty()) {
    throw std::invalid_argument("ExperimentConfig: empty mesh ladder");
  }
  for (size_t i = 0; i < mesh_ladder.size(); ++i) {
    if (mesh_ladder[i] < 1) {
      throw std::invalid_argument("ExperimentConfig: mesh sizes must be >= 1");
    }
    if (i > 0 && mesh_ladder[i] <= mesh_ladder[i - 1]) {
      throw std::invalid_argument(
          "ExperimentConfig: mesh ladder must be strictly increasing");
    }
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("ExperimentConfig: epsilon must be in (0,1)");
  }
  if (format != "csv" && format != "json" && format != "table") {
    throw std::invalid_argument("ExperimentConfig: format must be csv, json or table");
  }
  if (jobs < 0) {
    throw std::invalid_argument("ExperimentConfig: jobs must be >= 0");
  }
}

GroundState solve_cell(std::shared_ptr<const TriMesh> mesh, const ProblemSpec& spec,
                       Method method, double epsilon, const ScfConfig& scf)
{
  switch (method) {
  case Method::WgK1:
  case Method::WgK2: {
    const WgSpace space(mesh, method == Method::WgK1 ? 1 : 2);
    const AssembledOperators ops = assemble_linear(space, spec, epsilon);
    return scf_solve(ops, spec.term, scf);
  }
  case Method::P1:
  case Method::P2: {
    const LagrangeSpace space(mesh, method == Method::P1 ? 1 : 2);
    return scf_solve_conforming(space, spec, scf);
  }
  }
  throw std::logic_error("solve_cell: unreachable");
}

std::optional<double> order_estimate(double coarse, double middle, double fine)
{
  const double d1 = coarse - middle;
  const double d2 = middle - fine;
  if (d2 == 0.0 || d1 * d2 <= 0.0) {
    return std::nullopt;
  }
  return std::log2(d1 / d2);
}

ConvergenceReport run_experiment(const ExperimentConfig& config)
{
  config.validate();

  struct Task {
    Method method;
    int N;
    size_t row;
  };

  // Shared meshes per ladder level.
  std::map<int, std::shared_ptr<const TriMesh>> meshes;
  for (int n : config.mesh_ladder) {
    meshes[n] = std::make_shared<TriMesh>(TriMesh::uniform(config.problem.domain, n));
  }

  ConvergenceReport report;
  report.example = config.example;
  report.epsilon = config.epsilon;
  report.beta = config.problem.term.beta;

  std::vector<Task> tasks;
  for (Method m : config.methods) {
    for (int n : config.mesh_ladder) {
      tasks.push_back({m, n, report.rows.size()});
      CellResult row;
      row.method = m;
      row.N = n;
      row.h = meshes[n]->h();
      report.rows.push_back(row);
    }
  }

  std::vector<GroundState> states(tasks.size());

  const auto run_task = [&](const Task& task) {
    CellResult& row = report.rows[task.row];
    try {
      states[task.row] =
          solve_cell(meshes[task.N], config.problem, task.method, config.epsilon,
                     config.scf);
      const GroundState& gs = states[task.row];
      row.ok = true;
      row.lambda = gs.lambda;
      row.energy = gs.energy;
      row.l4norm4 = gs.l4norm4;
      row.iters = gs.iterations;
      row.residual = gs.residual;
      if (!config.history_dir.empty()) {
        write_history_csv(gs, config.history_dir + "/" + report.example + "_" +
                                  method_name(task.method) + "_N" +
                                  std::to_string(task.N) + ".csv");
      }
    } catch (const std::exception& err) {
      row.ok = false;
      row.error = err.what();
    }
  };

  int jobs = config.jobs;
  if (jobs == 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
  }
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));

  if (jobs == 1) {
    for (const Task& task : tasks) {
      run_task(task);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const size_t i = next.fetch_add(1);
          if (i >= tasks.size()) {
            return;
          }
          run_task(tasks[i]);
        }
      });
    }
    for (auto& worker : workers) {
      worker.join();
    }
  }

  // Convergence orders per method on consecutive doubling levels.
  const size_t levels = config.mesh_ladder.size();
  for (size_t m = 0; m < config.methods.size(); ++m) {
    const size_t base = m * levels;
    for (size_t i = 2; i < levels; ++i) {
      const CellResult& r0 = report.rows[base + i - 2];
      const CellResult& r1 = report.rows[base + i - 1];
      CellResult& r2 = report.rows[base + i];
      if (!r0.ok || !r1.ok || !r2.ok) {
        continue;
      }
      if (r1.N != 2 * r0.N || r2.N != 2 * r1.N) {
        continue;
      }
      r2.order_lambda = order_estimate(r0.lambda, r1.lambda, r2.lambda);
      r2.order_energy = order_estimate(r0.energy, r1.energy, r2.energy);
    }
  }

  // Per-level bound report whenever WG k=1, P1 and P2 all solved.
  const auto find_state = [&](Method m, int n) -> const GroundState* {
    for (size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].method == m && tasks[i].N == n && report.rows[tasks[i].row].ok) {
        return &states[tasks[i].row];
      }
    }
    return nullptr;
  };
  for (size_t lvl = 0; lvl < levels; ++lvl) {
    const int n = config.mesh_ladder[lvl];
    const GroundState* wg = find_state(Method::WgK1, n);
    const GroundState* p1 = find_state(Method::P1, n);
    const GroundState* p2 = find_state(Method::P2, n);
    if (!wg || !p1 || !p2) {
      continue;
    }
    const BoundReport br = bound_report(*wg, *p1, *p2);
    for (CellResult& row : report.rows) {
      if (row.N == n && row.ok) {
        row.lambda_lower = br.lower;
        row.lambda_upper = br.upper;
      }
    }
  }

  report.all_ok = true;
  for (const CellResult& row : report.rows) {
    report.all_ok = report.all_ok && row.ok;
  }
  return report;
}

void emit_csv(const ConvergenceReport& report, std::ostream& out)
{
  out << "example,method,N,h,lambda,energy,l4norm4,iters,order_lambda,"
         "order_energy,lambda_lower,lambda_upper\n";
  for (const CellResult& row : report.rows) {
    out << report.example << "," << method_name(row.method) << "," << row.N << ","
        << fmt17(row.h) << ",";
    if (row.ok) {
      out << fmt17(row.lambda) << "," << fmt17(row.energy) << ","
          << fmt17(row.l4norm4) << "," << row.iters << ",";
    } else {
      out << ",,,,";
    }
    out << (row.order_lambda ? fmt17(*row.order_lambda) : "") << ","
        << (row.order_energy ? fmt17(*row.order_energy) : "") << ","
        << (row.lambda_lower ? fmt17(*row.lambda_lower) : "") << ","
        << (row.lambda_upper ? fmt17(*row.lambda_upper) : "") << "\n";
  }
}

void emit_json(const ConvergenceReport& report, std::ostream& out)
{
  nlohmann::ordered_json j;
  j["example"] = report.example;
  j["epsilon"] = report.epsilon;
  j["beta"] = report.beta;
  j["rows"] = nlohmann::ordered_json::array();
  for (const CellResult& row : report.rows) {
    nlohmann::ordered_json r;
    r["example"] = report.example;
    r["method"] = method_name(row.method);
    r["N"] = row.N;
    r["h"] = row.h;
    if (row.ok) {
      r["lambda"] = row.lambda;
      r["energy"] = row.energy;
      r["l4norm4"] = row.l4norm4;
      r["iters"] = row.iters;
    } else {
      r["error"] = row.error;
    }
    if (row.order_lambda) {
      r["order_lambda"] = *row.order_lambda;
    }
    if (row.order_energy) {
      r["order_energy"] = *row.order_energy;
    }
    if (row.lambda_lower) {
      r["lambda_lower"] = *row.lambda_lower;
    }
    if (row.lambda_upper) {
      r["lambda_upper"] = *row.lambda_upper;
    }
    r["ok"] = row.ok;
    j["rows"].push_back(std::move(r));
  }
  out << j.dump(2) << "\n";
}

void emit_table(const ConvergenceReport& report, std::ostream& out)
{
  const auto methods_in = [&] {
    std::vector<Method> ms;
    for (const CellResult& row : report.rows) {
      if (ms.empty() || ms.back() != row.method) {
        ms.push_back(row.method);
      }
    }
    return ms;
  }();

  out << "# " << report.example << " (beta=" << report.beta
      << ", eps=" << report.epsilon << ")\n";
  for (Method m : methods_in) {
    out << "\n[" << method_name(m) << "]\n";
    std::vector<const CellResult*> rows;
    for (const CellResult& row : report.rows) {
      if (row.method == m) {
        rows.push_back(&row);
      }
    }
    out << "N      ";
    for (const auto* row : rows) {
      out << "  " << row->N;
    }
    out << "  Order\n";
    out << "lambda ";
    std::optional<double> last_order_l, last_order_e;
    for (const auto* row : rows) {
      out << "  " << (row->ok ? fmt6(row->lambda) : "failed");
      if (row->order_lambda) {
        last_order_l = row->order_lambda;
      }
      if (row->order_energy) {
        last_order_e = row->order_energy;
      }
    }
    out << "  " << (last_order_l ? fmt6(*last_order_l).substr(0, 4) : "-") << "\n";
    out << "E      ";
    for (const auto* row : rows) {
      out << "  " << (row->ok ? fmt6(row->energy) : "failed");
    }
    out << "  " << (last_order_e ? fmt6(*last_order_e).substr(0, 4) : "-") << "\n";
  }

  bool any_bounds = false;
  for (const CellResult& row : report.rows) {
    if (row.lambda_lower) {
      any_bounds = true;
    }
  }
  if (any_bounds) {
    out << "\n[bounds]\nN      lower         upper         gap\n";
    std::vector<int> seen;
    for (const CellResult& row : report.rows) {
      if (!row.lambda_lower || !row.lambda_upper) {
        continue;
      }
      if (std::find(seen.begin(), seen.end(), row.N) != seen.end()) {
        continue;
      }
      seen.push_back(row.N);
      out << row.N << "  " << fmt6(*row.lambda_lower) << "  "
          << fmt6(*row.lambda_upper) << "  "
          << fmt17(*row.lambda_upper - *row.lambda_lower) << "\n";
    }
  }
}

ExperimentConfig parse_config(const std::string& json_text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("parse_config: ") + err.what());
  }

  ExperimentConfig config;
  try {
    std::optional<double> beta;
    if (j.contains("beta")) {
      beta = j.at("beta").get<double>();
    }

    if (j.contains("example") && j.at("example").get<std::string>() != "custom") {
      config.example = j.at("example").get<std::string>();
      config.problem = example_problem(config.example, beta);
    } else {
      config.example = "custom";
      ProblemSpec spec;
      spec.name = "custom";
      if (!j.contains("domain") || !j.contains("potential") || !beta) {
        throw std::invalid_argument(
            "parse_config: custom problems need domain, potential and beta");
      }
      const auto dom = j.at("domain");
      if (!dom.is_array() || dom.size() != 4) {
        throw std::invalid_argument(
            "parse_config: domain must be [xmin, xmax, ymin, ymax]");
      }
      spec.domain = Rect{dom[0].get<double>(), dom[1].get<double>(),
                         dom[2].get<double>(), dom[3].get<double>()};
      const auto pot = j.at("potential");
      const std::string kind = pot.at("kind").get<std::string>();
      if (kind == "constant") {
        spec.potential = Potential::constant(pot.at("c").get<double>());
      } else if (kind == "harmonic") {
        spec.potential = Potential::harmonic();
      } else if (kind == "harmonic_plus_gaussian") {
        spec.potential = Potential::harmonic_plus_gaussian(
            pot.at("amplitude").get<double>(), pot.at("x0").get<double>(),
            pot.at("y0").get<double>());
      } else {
        throw std::invalid_argument("parse_config: unknown potential kind '" + kind +
                                    "'");
      }
      spec.term.beta = *beta;
      config.problem = spec;
    }

    if (j.contains("methods")) {
      config.methods.clear();
      for (const auto& name : j.at("methods")) {
        const auto m = parse_method(name.get<std::string>());
        if (!m) {
          throw std::invalid_argument("parse_config: unknown method '" +
                                      name.get<std::string>() + "'");
        }
        config.methods.push_back(*m);
      }
    }
    if (j.contains("N")) {
      config.mesh_ladder = j.at("N").get<std::vector<int>>();
    }
    if (j.contains("epsilon")) {
      config.epsilon = j.at("epsilon").get<double>();
    }
    if (j.contains("scf")) {
      const auto& s = j.at("scf");
      if (s.contains("damping")) {
        config.scf.damping = s.at("damping").get<double>();
      }
      if (s.contains("tol_lambda")) {
        config.scf.tol_lambda = s.at("tol_lambda").get<double>();
      }
      if (s.contains("tol_state")) {
        config.scf.tol_state = s.at("tol_state").get<double>();
      }
      if (s.contains("tol_residual")) {
        config.scf.tol_residual = s.at("tol_residual").get<double>();
      }
      if (s.contains("max_iters")) {
        config.scf.max_iters = s.at("max_iters").get<int>();
      }
      if (s.contains("inner_tol")) {
        config.scf.inner_tol = s.at("inner_tol").get<double>();
      }
      if (s.contains("adaptive_damping")) {
        config.scf.adaptive_damping = s.at("adaptive_damping").get<bool>();
      }
    }
    if (j.contains("out")) {
      config.out = j.at("out").get<std::string>();
    }
    if (j.contains("format")) {
      config.format = j.at("format").get<std::string>();
    }
    if (j.contains("jobs")) {
      config.jobs = j.at("jobs").get<int>();
    }
    if (j.contains("history_dir")) {
      config.history_dir = j.at("history_dir").get<std::string>();
    }
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("parse_config: ") + err.what());
  }

  config.validate();
  return config;
}

std::vector<std::string> emit_report(const ConvergenceReport& report,
                                     const ExperimentConfig& config)
{
  const auto write = [&](std::ostream& out) {
    if (config.format == "csv") {
      emit_csv(report, out);
    } else if (config.format == "json") {
      emit_json(report, out);
    } else {
      emit_table(report, out);
    }
  };

  if (config.out.empty()) {
    write(std::cout);
    return {};
  }
  std::ofstream out(config.out);
  if (!out) {
    throw std::runtime_error("emit_report: cannot open " + config.out);
  }
  write(out);
  return {config.out};
}

}  // namespace wgpe

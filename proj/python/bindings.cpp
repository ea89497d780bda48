// Copyright 2026 The qctrl-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "qctrl/harness/aggregate.hpp"
#include "qctrl/harness/benchmark.hpp"
#include "qctrl/optim/grape.hpp"
#include "qctrl/optim/spsa.hpp"
#include "qctrl/symbolic/expression.hpp"
#include "qctrl/tasks/reference.hpp"
#include "qctrl/tasks/task.hpp"
#include "qctrl/version.hpp"

namespace py = pybind11;
using namespace qctrl;

namespace {

tasks::TaskSpec make_task(int id, std::optional<int> n_slices, std::optional<double> total_time,
                          std::optional<std::uint64_t> fixture_seed) {
  tasks::TaskOverrides ov;
  ov.n_slices = n_slices;
  ov.total_time = total_time;
  ov.fixture_seed = fixture_seed;
  return tasks::build_task(id, ov);
}

py::dict task_info(int id, std::optional<int> n_slices, std::optional<double> total_time,
                   std::optional<std::uint64_t> fixture_seed) {
  const auto s = make_task(id, n_slices, total_time, fixture_seed);
  py::list channels;
  for (const auto& c : s.channels) {
    py::dict d;
    d["name"] = c.name;
    d["lower"] = c.lower;
    d["upper"] = c.upper;
    d["policy"] = std::string(tasks::to_string(c.policy));
    channels.append(d);
  }
  py::dict params;
  for (const auto& p : s.params) params[py::str(p.name)] = p.value;
  py::dict out;
  out["id"] = s.id;
  out["roman"] = tasks::roman(s.id);
  out["title"] = s.title;
  out["hilbert_dim"] = s.hilbert_dim;
  out["channels"] = channels;
  out["n_slices"] = s.grid.n_slices();
  out["total_time"] = s.grid.total_time();
  out["time_scale"] = s.time_scale;
  out["evolution"] = std::string(tasks::to_string(s.evolution));
  out["fidelity"] = std::string(tasks::to_string(s.fidelity));
  out["params"] = params;
  out["noise_sign_count"] = s.noise_sign_count();
  return out;
}

py::dict rejection_dict(const Rejection& r) {
  py::dict d;
  d["code"] = std::string(to_string(r.code));
  d["message"] = r.message;
  d["offset"] = r.span.offset;
  d["length"] = r.span.length;
  d["describe"] = r.describe();
  return d;
}

py::dict parse_expression(const std::string& source) {
  py::dict out;
  const auto parsed = symbolic::parse(source);
  out["ok"] = parsed.ok();
  if (parsed) {
    out["coefficients"] = parsed.value().coefficients();
    out["render"] = parsed.value().render();
  } else {
    out["error"] = rejection_dict(parsed.error());
  }
  return out;
}

double evaluate_expression(const std::string& source, double t, double total_time,
                           const std::map<std::string, double>& params) {
  const auto parsed = symbolic::parse(source);
  if (!parsed) throw py::value_error(parsed.error().describe());
  const auto v = parsed.value().evaluate(t, total_time, params);
  if (!v) throw py::value_error(v.error().reason);
  return v.value();
}

py::dict spsa(const std::function<double(const RealVector&)>& f, const RealVector& x0, int budget, double a,
              double c, double A, std::uint64_t seed, const RealVector& lower, const RealVector& upper) {
  optim::SpsaConfig cfg;
  cfg.budget = budget;
  cfg.a = a > 0.0 ? a : optim::default_spsa_a(x0);
  cfg.c = c;
  cfg.A = A;
  cfg.seed = seed;
  cfg.lower = lower;
  cfg.upper = upper;
  const auto r = optim::spsa_minimize(f, x0, cfg);
  py::dict out;
  out["x"] = r.theta;
  out["value"] = r.value;
  out["trace"] = r.trace.values;
  out["best_so_far"] = r.trace.best_so_far;
  out["evaluations"] = r.trace.evaluations;
  return out;
}

py::dict grape(int id, const RealMatrix& initial, int max_iterations, std::optional<int> n_slices,
               std::optional<double> total_time) {
  const auto s = make_task(id, n_slices, total_time, std::nullopt);
  optim::GrapeConfig cfg;
  cfg.max_iterations = max_iterations;
  optim::GrapeResult r;
  {
    py::gil_scoped_release release;
    r = optim::grape_optimize(s, tasks::Protocol{initial}, cfg);
  }
  py::dict out;
  out["amplitudes"] = r.protocol.amplitudes;
  out["fidelity"] = r.fidelity;
  out["iterations"] = r.iterations;
  out["evaluations"] = r.trace.evaluations;
  out["infidelity_trace"] = r.trace.values;
  return out;
}

py::dict run_benchmark(const std::vector<std::string>& task_names, const std::string& output_path,
                       const std::string& method, double sigma, int K, int B_opt, double epsilon, int repetitions,
                       std::uint64_t seed, std::uint64_t noise_seed,
                       const std::optional<std::vector<std::vector<std::string>>>& script,
                       const std::optional<std::string>& fixture_path, int parallelism) {
  harness::BenchmarkOptions o;
  for (const auto& name : task_names) {
    const auto id = tasks::parse_task_id(name);
    if (!id) throw py::value_error("unknown task '" + name + "'");
    o.tasks.push_back(*id);
  }
  const auto m = loop::parse_method(method);
  if (!m) throw py::value_error("unknown method '" + method + "'");
  o.config.method = *m;
  o.config.sigma = sigma;
  o.config.K = K;
  o.config.B_opt = B_opt;
  o.config.epsilon = epsilon;
  o.config.repetitions = repetitions;
  o.config.seed = seed;
  o.config.noise_seed = noise_seed;
  o.output_path = output_path;
  o.parallelism = parallelism;
  if (script) {
    agents::ScriptFixture f;
    f.repetitions = *script;
    o.clients.fixture = f;
    o.clients.fixture_label = "python";
  } else if (fixture_path) {
    o.clients.fixture = agents::load_script_fixture(*fixture_path);
    o.clients.fixture_label = *fixture_path;
  }
  harness::BenchmarkOutcome r;
  {
    py::gil_scoped_release release;
    r = harness::run_benchmark(o);
  }
  py::dict out;
  out["runs"] = r.runs;
  out["faults"] = r.faults;
  out["errors"] = r.errors;
  out["messages"] = r.messages;
  out["ok"] = r.ok();
  return out;
}

std::map<std::string, std::string> aggregate(const std::vector<std::string>& paths, double threshold) {
  std::vector<harness::ResultFile> files;
  for (const auto& p : paths) files.push_back(harness::read_result_file(p));
  std::map<std::string, std::string> out;
  for (const auto& [name, text] : harness::aggregate(files, threshold).tables()) out[name] = text;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum-control benchmark core";
  m.attr("__version__") = kVersion;
  m.attr("TASK_COUNT") = tasks::kTaskCount;

  m.def("roman", &tasks::roman, py::arg("task_id"));
  m.def("parse_task_id", &tasks::parse_task_id, py::arg("text"));
  m.def("task_info", &task_info, py::arg("task_id"), py::arg("n_slices") = py::none(),
        py::arg("total_time") = py::none(), py::arg("fixture_seed") = py::none());
  m.def(
      "evaluate",
      [](int id, const RealMatrix& amplitudes, double sigma, std::uint64_t noise_seed, std::optional<int> n_slices,
         std::optional<double> total_time, std::optional<std::uint64_t> fixture_seed) {
        const auto s = make_task(id, n_slices, total_time, fixture_seed);
        py::gil_scoped_release release;
        return tasks::evaluate_protocol(tasks::apply_noise(s, sigma, noise_seed).first, amplitudes);
      },
      py::arg("task_id"), py::arg("amplitudes"), py::arg("sigma") = 0.0, py::arg("noise_seed") = 0,
      py::arg("n_slices") = py::none(), py::arg("total_time") = py::none(), py::arg("fixture_seed") = py::none());
  m.def(
      "noise_signs",
      [](int id, double sigma, std::uint64_t seed) {
        return tasks::apply_noise(tasks::build_task(id), sigma, seed).second.signs();
      },
      py::arg("task_id"), py::arg("sigma"), py::arg("noise_seed"));
  m.def(
      "reference_protocol",
      [](int id, const std::string& variant, std::optional<int> n_slices) -> std::optional<RealMatrix> {
        const auto s = make_task(id, n_slices, std::nullopt, std::nullopt);
        const auto p = tasks::reference_protocol(s, variant);
        if (!p) return std::nullopt;
        return p->amplitudes;
      },
      py::arg("task_id"), py::arg("variant") = "", py::arg("n_slices") = py::none());

  m.def("parse_expression", &parse_expression, py::arg("source"));
  m.def("evaluate_expression", &evaluate_expression, py::arg("source"), py::arg("t"), py::arg("total_time"),
        py::arg("params") = std::map<std::string, double>{});

  m.def("spsa_minimize", &spsa, py::arg("objective"), py::arg("x0"), py::arg("budget"), py::arg("a") = 0.0,
        py::arg("c") = 0.1, py::arg("A") = 50.0, py::arg("seed") = 0, py::arg("lower") = RealVector(),
        py::arg("upper") = RealVector());
  m.def("grape", &grape, py::arg("task_id"), py::arg("initial"), py::arg("max_iterations") = 2000,
        py::arg("n_slices") = py::none(), py::arg("total_time") = py::none());

  m.def("run_benchmark", &run_benchmark, py::arg("tasks"), py::arg("output_path"), py::arg("method") = "vf-qctrl",
        py::arg("sigma") = 0.0, py::arg("K") = 50, py::arg("B_opt") = 1000, py::arg("epsilon") = 1e-3,
        py::arg("repetitions") = 1, py::arg("seed") = 0, py::arg("noise_seed") = 0, py::arg("script") = py::none(),
        py::arg("fixture_path") = py::none(), py::arg("parallelism") = 1);
  m.def("aggregate", &aggregate, py::arg("paths"), py::arg("threshold") = 0.999);
}

// Copyright 2026 The qscovert Authors
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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qscovert/bounds.hpp"
#include "qscovert/commands.hpp"
#include "qscovert/config.hpp"
#include "qscovert/covertness.hpp"
#include "qscovert/linalg.hpp"
#include "qscovert/linksim.hpp"

namespace py = pybind11;
using namespace qscovert;

namespace {

FadingModel model_from(const std::string& json_text, int rows, int cols) {
  return model_from_json(Json::parse(json_text), rows, cols);
}

McOptions mc_options(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  return {seed, trials, workers};
}

py::dict estimate_dict(const BoundEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["ci_half_width"] = e.ci_half_width;
  d["trials"] = e.trials;
  d["seed"] = e.seed;
  return d;
}

py::dict point_dict(const BoundPoint& p) {
  py::dict d;
  d["n"] = p.n;
  d["rate"] = p.rate;
  d["sqrt_n_rate"] = p.sqrt_n_rate;
  d["kind"] = to_string(p.kind);
  d["raw_rate"] = p.estimate.value;
  d["ci_half_width"] = p.estimate.ci_half_width;
  return d;
}

CovertParams params(std::int64_t n, double epsilon, double delta, double lambda0, int n_a, int n_b,
                    int n_w, const std::string& gain) {
  CovertParams p = CovertParams::with_defaults(n, epsilon, delta, lambda0, {n_a, n_b, n_w});
  p.gain = parse_gain_convention(gain);
  return p;
}

std::string run(const std::string& command, const std::string& config_json, std::uint64_t seed,
                unsigned workers, std::uint64_t trials) {
  RunOverrides ov;
  if (seed != 0) ov.seed = seed;
  if (workers != 0) ov.workers = workers;
  if (trials != 0) ov.trials = trials;
  return run_command(load_config(command, Json::parse(config_json), ov));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Covert-communication benchmarks for quasi-static MIMO fading";
  m.attr("__version__") = version();

  static py::exception<Error> error(m, "QscovertError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("spectral_norm", &spectral_norm, py::arg("m"));
  m.def("singular_values", &singular_values, py::arg("m"));
  m.def("orthonormalize", [](const ComplexMatrix& a) { return orthonormalize(a); }, py::arg("m"));
  m.def("principal_angles", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return principal_angles(a, b).angles;
  }, py::arg("a"), py::arg("b"));
  m.def("subspace_sin_sq", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return subspace_sin_sq(a, b);
  }, py::arg("a"), py::arg("b"));
  m.def("gsvd", [](const ComplexMatrix& h_b, const ComplexMatrix& h_w) {
    const auto g = gsvd(h_b, h_w);
    py::dict d;
    d["L"] = g.l;
    d["lambda_b"] = g.lambda_b;
    d["V_b"] = g.v_b;
    d["lambda_w"] = g.lambda_w;
    d["V_w"] = g.v_w;
    return d;
  }, py::arg("h_b"), py::arg("h_w"));
  m.def("logdet_psd", [](const ComplexMatrix& a) { return logdet_psd(a); }, py::arg("m"));

  m.def("power_ach", [](std::int64_t n, double epsilon, double delta, double lambda0, int n_a) {
    return power_ach(params(n, epsilon, delta, lambda0, n_a, n_a, n_a, "singular_value"));
  }, py::arg("n"), py::arg("epsilon"), py::arg("delta"), py::arg("lambda0") = 1.0, py::arg("n_a") = 2);
  m.def("power_con", [](std::int64_t n, double epsilon, double delta, double lambda0, int n_a) {
    return power_con(params(n, epsilon, delta, lambda0, n_a, n_a, n_a, "singular_value"));
  }, py::arg("n"), py::arg("epsilon"), py::arg("delta"), py::arg("lambda0") = 1.0, py::arg("n_a") = 2);
  m.def("kl_output_vs_noise", &kl_output_vs_noise, py::arg("scaled_gram"), py::arg("n"));
  m.def("pinsker_floor", &pinsker_floor, py::arg("delta"));
  m.def("delta_n", &delta_n, py::arg("n"), py::arg("rho"));

  m.def("kappa_epsilon", [](const std::string& model, double lambda0, double epsilon, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers, const std::string& gain, int rows, int cols) {
    return estimate_dict(kappa_epsilon(model_from(model, rows, cols), lambda0, epsilon, mc_options(trials, seed, workers),
                                       parse_gain_convention(gain)));
  }, py::arg("model"), py::arg("lambda0"), py::arg("epsilon"), py::arg("trials"), py::arg("seed") = 1,
     py::arg("workers") = 1, py::arg("gain") = "singular_value", py::arg("rows") = 2, py::arg("cols") = 2);
  m.def("first_order_rate", [](std::int64_t n, double epsilon, double delta, double kappa) {
    return point_dict(first_order_rate(n, epsilon, delta, kappa));
  }, py::arg("n"), py::arg("epsilon"), py::arg("delta"), py::arg("kappa"));
  m.def("covert_outage_rate", [](const std::string& model, double psi, double epsilon, std::uint64_t trials,
                                 std::uint64_t seed, const std::string& gain, int rows, int cols) {
    return estimate_dict(covert_outage_rate(model_from(model, rows, cols), psi, epsilon, mc_options(trials, seed, 1),
                                            parse_gain_convention(gain)));
  }, py::arg("model"), py::arg("psi"), py::arg("epsilon"), py::arg("trials"), py::arg("seed") = 1,
     py::arg("gain") = "singular_value", py::arg("rows") = 2, py::arg("cols") = 2);
  m.def("ach_rate_bound", [](std::int64_t n, double epsilon, double delta, const std::string& model,
                             std::uint64_t trials, std::uint64_t seed, double lambda0, int n_a, int n_b,
                             int n_w, const std::string& gain) {
    return point_dict(ach_rate_bound(params(n, epsilon, delta, lambda0, n_a, n_b, n_w, gain), model_from(model, n_a, n_b),
                                     mc_options(trials, seed, 1)));
  }, py::arg("n"), py::arg("epsilon"), py::arg("delta"), py::arg("model"), py::arg("trials"),
     py::arg("seed") = 1, py::arg("lambda0") = 1.0, py::arg("n_a") = 2, py::arg("n_b") = 2, py::arg("n_w") = 2,
     py::arg("gain") = "singular_value");
  m.def("con_rate_bound", [](std::int64_t n, double epsilon, double delta, const std::string& model,
                             std::uint64_t trials, std::uint64_t seed, double lambda0, int n_a, int n_b,
                             int n_w, const std::string& gain) {
    return point_dict(con_rate_bound(params(n, epsilon, delta, lambda0, n_a, n_b, n_w, gain), model_from(model, n_a, n_b),
                                     mc_options(trials, seed, 1)));
  }, py::arg("n"), py::arg("epsilon"), py::arg("delta"), py::arg("model"), py::arg("trials"),
     py::arg("seed") = 1, py::arg("lambda0") = 1.0, py::arg("n_a") = 2, py::arg("n_b") = 2, py::arg("n_w") = 2,
     py::arg("gain") = "singular_value");

  m.def("run_command", &run, py::arg("command"), py::arg("config_json"), py::arg("seed") = 0,
        py::arg("workers") = 0, py::arg("trials") = 0,
        "Runs a CLI command on a JSON config string and returns the output text.");
}

// Copyright 2026 The tcx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tcx/dsl.hpp"
#include "tcx/error.hpp"
#include "tcx/ifsm.hpp"
#include "tcx/protocols.hpp"
#include "tcx/simkernel.hpp"
#include "tcx/synth.hpp"
#include "tcx/workload.hpp"

namespace py = pybind11;

namespace {

tcx::WorkloadKind workload_kind(const std::string& name) {
  auto kind = tcx::parse_workload_kind(name);
  if (!kind) throw tcx::Error("invalid-workload", "unknown workload kind '" + name + "'");
  return *kind;
}

tcx::ChannelSet channels_for(const std::string& mode) {
  const auto& models = tcx::reference_models();
  if (mode == "coherent") return tcx::coherent_channels(models);
  if (mode == "conventional") return tcx::conventional_channels(models);
  if (mode == "reference") return tcx::reference_channels(models);
  throw tcx::Error("invalid-mode", "mode must be coherent, conventional or reference");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Timing-coherent transactor synthesis and co-simulation";

  // Raised for every library failure; args are (code, message).
  static PyObject* tcx_error =
      PyErr_NewException("tcx._core.TcxError", PyExc_RuntimeError, nullptr);
  m.attr("TcxError") = py::handle(tcx_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const tcx::Error& e) {
      PyErr_SetObject(tcx_error, py::make_tuple(e.code(), e.what()).ptr());
    }
  });

  py::class_<tcx::InterfaceFsm>(m, "InterfaceFsm")
      .def_readonly("name", &tcx::InterfaceFsm::name)
      .def_readonly("initial", &tcx::InterfaceFsm::initial)
      .def_readonly("final_state", &tcx::InterfaceFsm::final_state)
      .def_readonly("states", &tcx::InterfaceFsm::states)
      .def_property_readonly("role",
                             [](const tcx::InterfaceFsm& f) { return std::string(to_string(f.role)); })
      .def_property_readonly("level",
                             [](const tcx::InterfaceFsm& f) { return std::string(to_string(f.level)); })
      .def_property_readonly("transitions",
                             [](const tcx::InterfaceFsm& f) {
                               std::vector<std::string> out;
                               for (const auto& t : f.transitions) out.push_back(to_string(t));
                               return out;
                             })
      .def("__eq__", [](const tcx::InterfaceFsm& a, const tcx::InterfaceFsm& b) { return a == b; })
      .def("serialize", &tcx::serialize_fsm);

  py::class_<tcx::PayloadMapping>(m, "PayloadMapping")
      .def_readonly("name", &tcx::PayloadMapping::name)
      .def_property_readonly("entries",
                             [](const tcx::PayloadMapping& p) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& e : p.entries) out.emplace_back(e.label(), e.signal);
                               return out;
                             })
      .def("serialize", &tcx::serialize_mapping);

  py::class_<tcx::TransactorFsm>(m, "TransactorFsm")
      .def_readonly("name", &tcx::TransactorFsm::name)
      .def_property_readonly("pair_count",
                             [](const tcx::TransactorFsm& g) { return g.pairs().size(); })
      .def_property_readonly("transition_count",
                             [](const tcx::TransactorFsm& g) { return g.transitions.size(); })
      .def("serialize", &tcx::serialize_transactor);

  m.def("parse_interface_spec", &tcx::parse_interface_spec, py::arg("text"));
  m.def("serialize_fsm", &tcx::serialize_fsm, py::arg("fsm"));
  m.def("parse_payload_mapping", &tcx::parse_payload_mapping, py::arg("text"));
  m.def("parse_transactor", &tcx::parse_transactor, py::arg("text"));
  m.def("complement", py::overload_cast<const tcx::InterfaceFsm&>(&tcx::complement),
        py::arg("fsm"));
  m.def("prepare_target", &tcx::prepare_target, py::arg("fsm"));
  m.def("find_last_handshake_state", &tcx::find_last_handshake_state, py::arg("fsm"));
  m.def(
      "validate",
      [](const tcx::InterfaceFsm& fsm) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : tcx::validate(fsm).violations) out.emplace_back(v.code, v.message);
        return out;
      },
      py::arg("fsm"), "List of (code, message) violations; empty when valid.");

  m.def(
      "generate_transactor",
      [](const tcx::InterfaceFsm& target, const tcx::InterfaceFsm& initiator,
         const tcx::PayloadMapping& mapping) {
        return tcx::generate_transactor(target, initiator, mapping);
      },
      py::arg("target"), py::arg("initiator"), py::arg("mapping"));

  m.def(
      "reference_files",
      [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& f : tcx::reference_files()) out.emplace_back(f.name, f.text);
        return out;
      },
      "(file name, text) of every shipped reference model.");

  m.def(
      "wrap_clock_for_call",
      [](std::int64_t begin, std::int64_t delay, std::int64_t ca_now, std::int64_t period) {
        auto w = tcx::wrap_clock_for_call(begin, delay, ca_now, period);
        return std::make_pair(w.pvt_end_ns, w.hold_cycles);
      },
      py::arg("begin_ns"), py::arg("returned_delay_ns"), py::arg("ca_now_ns"),
      py::arg("period_ns"));

  m.def(
      "generate_workload",
      [](const std::string& kind, std::size_t n, std::uint64_t seed) {
        return tcx::serialize_workload(tcx::generate_workload(workload_kind(kind), n, seed));
      },
      py::arg("kind"), py::arg("n"), py::arg("seed"), "Workload file text.");

  m.def(
      "simulate",
      [](const std::string& mode, const std::string& workload, std::size_t n,
         std::uint64_t seed, std::int64_t delay_base, const std::string& contention_prob,
         std::optional<std::uint64_t> delay_seed) {
        const tcx::WorkloadSpec spec = tcx::generate_workload(workload_kind(workload), n, seed);
        tcx::DelayModel delays;
        delays.base_latency_cycles = delay_base;
        std::tie(delays.contention_numerator, delays.contention_denominator) =
            tcx::parse_probability(contention_prob);
        delays.seed = delay_seed.value_or(seed);
        tcx::SimOptions options;
        if (mode == "conventional") options.mode = tcx::TimingMode::conventional;
        return tcx::serialize_trace(
            tcx::run_cosimulation(channels_for(mode), spec, delays, options));
      },
      py::arg("mode") = "coherent", py::arg("workload") = "general_channel", py::arg("n") = 1,
      py::arg("seed") = 1, py::arg("delay_base") = 5, py::arg("contention_prob") = "0",
      py::arg("delay_seed") = py::none(),
      "Runs the reference library in the given mode and returns the trace CSV.");

  m.def(
      "compare_traces",
      [](const std::string& test, const std::string& reference) {
        const auto r = tcx::compare_traces(tcx::parse_trace(test), tcx::parse_trace(reference));
        py::dict out;
        out["erroneous"] = r.erroneous;
        out["total"] = r.total;
        out["payload_mismatches"] = r.payload_mismatches;
        out["error_rate"] = r.rate_text();
        return out;
      },
      py::arg("test_csv"), py::arg("reference_csv"));
}

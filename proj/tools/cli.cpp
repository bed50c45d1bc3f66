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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "tcx/dsl.hpp"
#include "tcx/error.hpp"
#include "tcx/protocols.hpp"
#include "tcx/simkernel.hpp"
#include "tcx/synth.hpp"
#include "tcx/workload.hpp"

namespace tcx::cli {
namespace {

namespace fs = std::filesystem;

// Failure with an explicit exit code.
struct Failure {
  int exit_code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes every (path, content) pair or none: all contents are ready before
// the first file is opened.
void write_files(const std::vector<std::pair<std::string, std::string>>& files) {
  for (const auto& [path, content] : files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kInputError, "cannot write '" + path + "'"};
    out << content;
  }
}

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw Failure{kInputError, path + ": " + e.code() + ": " + e.what()};
  }
}

InterfaceFsm load_fsm(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_interface_spec(t); });
}

PayloadMapping load_mapping(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_payload_mapping(t); });
}

TransactorFsm load_transactor(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_transactor(t); });
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const SimulationError*>(&e)) return kSimulationError;
  if (dynamic_cast<const CompareError*>(&e)) return kCompareError;
  if (dynamic_cast<const SynthesisError*>(&e)) {
    return e.code() == "invalid-input" ? kInputError : kSynthesisError;
  }
  if (dynamic_cast<const FsmError*>(&e)) return kSynthesisError;
  return kInputError;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string initiator;
  std::string target;
  std::string map;
  std::string out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const InterfaceFsm initiator = load_fsm(a.initiator);
  const InterfaceFsm target = load_fsm(a.target);
  const PayloadMapping mapping = load_mapping(a.map);
  const InterfaceFsm t_side = prepare_target(complement(initiator));
  const InterfaceFsm i_side = complement(target);
  SynthStats stats;
  const TransactorFsm g = generate_transactor(t_side, i_side, mapping, {}, &stats);
  write_files({{a.out, serialize_transactor(g)}});
  out << "transactor " << g.name << ": " << g.pairs().size() << " state pairs, "
      << g.transitions.size() << " transitions -> " << a.out << "\n";
  std::size_t worst_bound = 0;
  for (const auto& s : stats.steps) {
    worst_bound = std::max(worst_bound, s.target_outdegree + s.initiator_outdegree);
  }
  out << "search: " << stats.expansions << " expansions, " << stats.pushes << " pushes, "
      << stats.revisits << " revisits, " << stats.pruned_pairs << " pairs pruned\n";
  out << "per-step candidates: max " << stats.max_examined() << ", n+m bound "
      << (stats.within_bound() ? "held" : "VIOLATED") << " on all " << stats.steps.size()
      << " steps (largest n+m = " << worst_bound << ")\n";
  return kOk;
}

// ---------------------------------------------------------------- sim

struct SimArgs {
  std::string transactor;
  std::string read_transactor;
  bool conventional = false;
  bool reference = false;
  std::string master;
  std::string slave;
  std::string map;
  std::string workload = "general_channel";
  std::size_t n = 1;
  std::uint64_t seed = 1;
  std::string workload_file;
  std::string workload_out;
  std::int64_t delay_base = 5;
  std::string contention_prob = "0";
  std::int64_t contention_min = 1;
  std::int64_t contention_max = 4;
  std::optional<std::uint64_t> delay_seed;
  std::string trace_out;
  std::string events_out;
};

ChannelSet custom_channels(const SimArgs& a) {
  if (a.master.empty() || a.slave.empty()) {
    throw Failure{kInputError, "--master and --slave must be given together"};
  }
  InterfaceFsm master = load_fsm(a.master);
  InterfaceFsm slave = load_fsm(a.slave);
  if (a.reference) {
    return {{master, std::nullopt, prepare_target(complement(master))}, std::nullopt};
  }
  if (a.conventional || a.transactor.empty()) {
    if (a.map.empty()) throw Failure{kInputError, "--map is required to build a transactor"};
    const PayloadMapping mapping = load_mapping(a.map);
    if (a.conventional) {
      auto conv = conventional_transactor(complement(master), complement(slave), mapping);
      return {{master, conv.fsm, slave}, std::nullopt};
    }
    auto g = generate_transactor(prepare_target(complement(master)), complement(slave), mapping);
    return {{master, g, slave}, std::nullopt};
  }
  return {{master, load_transactor(a.transactor), slave}, std::nullopt};
}

ChannelSet library_channels(const SimArgs& a) {
  const ReferenceModels& models = reference_models();
  if (a.reference) return reference_channels(models);
  if (a.conventional) return conventional_channels(models);
  ChannelSet set = coherent_channels(models);
  if (!a.transactor.empty()) set.write.transactor = load_transactor(a.transactor);
  if (!a.read_transactor.empty()) set.read->transactor = load_transactor(a.read_transactor);
  return set;
}

int cmd_sim(const SimArgs& a, std::ostream& out) {
  if (a.reference && a.conventional) {
    throw Failure{kInputError, "--reference and --conventional are exclusive"};
  }
  WorkloadSpec workload;
  if (!a.workload_file.empty()) {
    workload = parse_file(a.workload_file, [](const std::string& t) { return parse_workload(t); });
  } else {
    auto kind = parse_workload_kind(a.workload);
    if (!kind) throw Failure{kInputError, "unknown workload kind '" + a.workload + "'"};
    workload = generate_workload(*kind, a.n, a.seed);
  }
  DelayModel delays;
  delays.base_latency_cycles = a.delay_base;
  std::tie(delays.contention_numerator, delays.contention_denominator) =
      parse_probability(a.contention_prob);
  delays.contention_min_cycles = a.contention_min;
  delays.contention_max_cycles = a.contention_max;
  delays.seed = a.delay_seed.value_or(workload.seed);
  try {
    delays.check();
  } catch (const SimulationError& e) {
    throw Failure{kInputError, e.code() + ": " + e.what()};
  }

  const bool custom = !a.master.empty() || !a.slave.empty() || !a.map.empty();
  const ChannelSet channels = custom ? custom_channels(a) : library_channels(a);
  SimOptions options;
  if (a.conventional) options.mode = TimingMode::conventional;

  const SimTrace trace = run_cosimulation(channels, workload, delays, options);

  std::vector<std::pair<std::string, std::string>> files;
  const std::string csv = serialize_trace(trace);
  if (!a.trace_out.empty()) files.emplace_back(a.trace_out, csv);
  if (!a.events_out.empty()) files.emplace_back(a.events_out, serialize_events(trace));
  if (!a.workload_out.empty()) files.emplace_back(a.workload_out, serialize_workload(workload));
  write_files(files);
  if (a.trace_out.empty()) {
    out << csv;
  } else {
    out << workload.transfers.size() << " transactions, " << trace.records.size()
        << " records -> " << a.trace_out << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::vector<std::string> tests;
  std::vector<std::string> references;
  std::vector<std::string> approaches;
  std::vector<std::string> workloads;
  std::string report;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  if (a.tests.size() != a.references.size() || a.tests.empty()) {
    throw Failure{kInputError, "give one --reference per --test"};
  }
  auto label = [](const std::vector<std::string>& labels, std::size_t i, std::string fallback) {
    return i < labels.size() ? labels[i] : fallback;
  };
  struct Row {
    std::string approach;
    std::string workload;
    ErrorReport report;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < a.tests.size(); ++i) {
    auto load = [](const std::string& path) {
      const std::string text = read_file(path);
      try {
        return parse_trace(text);
      } catch (const Error& e) {
        throw Failure{kInputError, path + ": " + e.code() + ": " + e.what()};
      }
    };
    const SimTrace test = load(a.tests[i]);
    const SimTrace ref = load(a.references[i]);
    rows.push_back({label(a.approaches, i, "test"),
                    label(a.workloads, i, "workload" + std::to_string(i + 1)),
                    compare_traces(test, ref)});
  }

  std::ostringstream report;
  report << "format=tcx-compare-report-1\n";
  report << "pairs=" << rows.size() << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string key = "pair." + std::to_string(i + 1) + ".";
    report << key << "approach=" << r.approach << "\n";
    report << key << "workload=" << r.workload << "\n";
    report << key << "test=" << a.tests[i] << "\n";
    report << key << "reference=" << a.references[i] << "\n";
    report << key << "transactions=" << r.report.total << "\n";
    report << key << "erroneous=" << r.report.erroneous << "\n";
    report << key << "error_rate=" << r.report.erroneous << "/" << r.report.total << "\n";
    report << key << "payload_mismatches=" << r.report.payload_mismatches << "\n";
    for (const auto& v : r.report.verdicts) {
      report << key << "txn." << v.txn_id << "=" << (v.erroneous ? "erroneous" : "ok")
             << (v.payload_mismatch ? ",payload-mismatch" : "") << "\n";
    }
  }
  if (!a.report.empty()) write_files({{a.report, report.str()}});

  for (const auto& r : rows) {
    out << r.approach << " / " << r.workload << ": error_rate: " << r.report.rate_text() << "\n";
  }
  if (rows.size() > 1) {
    std::vector<std::string> approaches;
    std::vector<std::string> workloads;
    std::map<std::pair<std::string, std::string>, std::string> cell;
    for (const auto& r : rows) {
      if (std::find(approaches.begin(), approaches.end(), r.approach) == approaches.end()) {
        approaches.push_back(r.approach);
      }
      if (std::find(workloads.begin(), workloads.end(), r.workload) == workloads.end()) {
        workloads.push_back(r.workload);
      }
      const std::string text = r.report.rate_text();
      cell[{r.approach, r.workload}] = text.substr(text.find("= ") + 2);
    }
    std::size_t width = 8;
    for (const auto& w : workloads) width = std::max(width, w.size() + 2);
    std::size_t first = 10;
    for (const auto& ap : approaches) first = std::max(first, ap.size() + 2);
    out << "\nerror rate by approach and workload\n";
    out << std::string(first, ' ');
    for (const auto& w : workloads) out << w << std::string(width - w.size(), ' ');
    out << "\n";
    for (const auto& ap : approaches) {
      out << ap << std::string(first - ap.size(), ' ');
      for (const auto& w : workloads) {
        auto it = cell.find({ap, w});
        const std::string text = it == cell.end() ? "-" : it->second;
        out << text << std::string(width - std::min(width, text.size()), ' ');
      }
      out << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- export-refs

int cmd_export(const std::string& dir, std::ostream& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kInputError, "cannot create '" + dir + "': " + ec.message()};
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& f : reference_files()) {
    files.emplace_back((fs::path(dir) / f.name).string(), std::string(f.text));
  }
  write_files(files);
  for (const auto& f : reference_files()) out << (fs::path(dir) / f.name).string() << "\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Timing-coherent transactor synthesis and co-simulation", "tcx"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a transactor (.tfsm)");
  synth_cmd->add_option("--initiator", synth.initiator, "Initiator-side component (.ifsm)")
      ->required();
  synth_cmd->add_option("--target", synth.target, "Target-side component (.ifsm)")->required();
  synth_cmd->add_option("--map", synth.map, "Payload mapping (.pmap)")->required();
  synth_cmd->add_option("-o,--out", synth.out, "Output .tfsm path")->required();

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("sim", "Run a co-simulation and write its trace");
  sim_cmd->add_option("--transactor", sim.transactor, "Transactor for writes (.tfsm)");
  sim_cmd->add_option("--read-transactor", sim.read_transactor, "Transactor for reads (.tfsm)");
  sim_cmd->add_flag("--conventional", sim.conventional, "Use the conventional baseline");
  sim_cmd->add_flag("--reference", sim.reference, "Run the pure-CA reference configuration");
  sim_cmd->add_option("--master", sim.master, "CA master model (.ifsm)");
  sim_cmd->add_option("--slave", sim.slave, "Slave model (.ifsm)");
  sim_cmd->add_option("--map", sim.map, "Payload mapping (.pmap)");
  sim_cmd->add_option("--workload", sim.workload, "general_channel | multimedia | mixed");
  sim_cmd->add_option("--n", sim.n, "Number of transfers")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "Workload seed");
  sim_cmd->add_option("--workload-file", sim.workload_file, "Read the workload from a file");
  sim_cmd->add_option("--workload-out", sim.workload_out, "Write the workload to a file");
  sim_cmd->add_option("--delay-base", sim.delay_base, "Base slave latency in cycles");
  sim_cmd->add_option("--contention-prob", sim.contention_prob, "e.g. 0.3 or 3/10");
  sim_cmd->add_option("--contention-min", sim.contention_min, "Fewest contention cycles");
  sim_cmd->add_option("--contention-max", sim.contention_max, "Most contention cycles");
  sim_cmd->add_option("--delay-seed", sim.delay_seed, "Delay seed (default: workload seed)");
  sim_cmd->add_option("--trace-out", sim.trace_out, "Trace CSV path (default: stdout)");
  sim_cmd->add_option("--events-out", sim.events_out, "Event log CSV path");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare traces against reference traces");
  cmp_cmd->add_option("--test", cmp.tests, "Test trace (repeatable)")->required();
  cmp_cmd->add_option("--reference", cmp.references, "Reference trace (repeatable)")->required();
  cmp_cmd->add_option("--approach", cmp.approaches, "Row label per pair");
  cmp_cmd->add_option("--workload", cmp.workloads, "Column label per pair");
  cmp_cmd->add_option("--report", cmp.report, "Structured report path");

  std::string export_dir;
  auto* export_cmd = app.add_subcommand("export-refs", "Write the reference models to disk");
  export_cmd->add_option("--dir", export_dir, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth, out);
    if (sim_cmd->parsed()) return cmd_sim(sim, out);
    if (cmp_cmd->parsed()) return cmd_compare(cmp, out);
    if (export_cmd->parsed()) return cmd_export(export_dir, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const SimulationError& e) {
    err << "error: " << e.code() << ": " << e.what();
    if (e.txn_id()) err << " (txn_id " << *e.txn_id() << ")";
    err << "\n";
    return kSimulationError;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kInputError;
}

}  // namespace tcx::cli

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

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "tcx/error.hpp"
#include "tcx/simkernel.hpp"

namespace tcx {
namespace {

constexpr std::string_view kTraceHeader = "txn_id,side,begin_ns,end_ns,payload_digest";
constexpr std::string_view kEventHeader = "time_ns,component,description";

std::string join_ids(const std::vector<std::uint64_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  if (ids.size() > 10) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
T parse_number(std::string_view text, int base, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed-trace",
                "line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<TransactionPair> extract_transactions(const SimTrace& trace) {
  std::map<std::uint64_t, TransactionPair> by_txn;
  std::map<std::uint64_t, std::pair<int, int>> counts;
  for (const auto& r : trace.records) {
    auto& slot = by_txn[r.txn_id];
    auto& [ca, pvt] = counts[r.txn_id];
    if (r.side == RecordSide::ca) {
      slot.ca = r;
      ++ca;
    } else {
      slot.pvt = r;
      ++pvt;
    }
  }
  std::vector<std::uint64_t> orphans;
  for (const auto& [txn, c] : counts) {
    if (c.first != 1 || c.second != 1) orphans.push_back(txn);
  }
  if (!orphans.empty()) {
    throw CompareError("orphan-record",
                       "transactions without exactly one record per side: " + join_ids(orphans));
  }
  std::vector<TransactionPair> out;
  out.reserve(by_txn.size());
  for (auto& [txn, pair] : by_txn) out.push_back(pair);
  return out;
}

ErrorReport compare_traces(const SimTrace& test, const SimTrace& reference) {
  const auto test_pairs = extract_transactions(test);
  const auto ref_pairs = extract_transactions(reference);
  std::set<std::uint64_t> test_ids;
  std::set<std::uint64_t> ref_ids;
  for (const auto& p : test_pairs) test_ids.insert(p.ca.txn_id);
  for (const auto& p : ref_pairs) ref_ids.insert(p.ca.txn_id);
  if (test_ids != ref_ids) {
    std::vector<std::uint64_t> diff;
    std::set_symmetric_difference(test_ids.begin(), test_ids.end(), ref_ids.begin(),
                                  ref_ids.end(), std::back_inserter(diff));
    throw CompareError("workload-mismatch",
                       "traces cover different transactions: " + join_ids(diff));
  }
  ErrorReport report;
  for (std::size_t i = 0; i < test_pairs.size(); ++i) {
    const auto& t = test_pairs[i];
    const auto& r = ref_pairs[i];
    TransactionVerdict v;
    v.txn_id = t.ca.txn_id;
    v.erroneous = t.ca.begin_ns != r.ca.begin_ns || t.ca.end_ns != r.ca.end_ns ||
                  t.pvt.begin_ns != r.pvt.begin_ns || t.pvt.end_ns != r.pvt.end_ns;
    v.payload_mismatch = t.ca.payload_digest != r.ca.payload_digest ||
                         t.pvt.payload_digest != r.pvt.payload_digest;
    report.erroneous += v.erroneous ? 1 : 0;
    report.payload_mismatches += v.payload_mismatch ? 1 : 0;
    report.verdicts.push_back(v);
  }
  report.total = report.verdicts.size();
  return report;
}

std::string ErrorReport::rate_text() const {
  const std::uint64_t tenths = total == 0 ? 0 : (erroneous * 1000 + total / 2) / total;
  return std::to_string(erroneous) + "/" + std::to_string(total) + " = " +
         std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::string format_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

std::string serialize_trace(const SimTrace& trace) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& r : trace.records) {
    out += std::to_string(r.txn_id) + "," + std::string(to_string(r.side)) + "," +
           std::to_string(r.begin_ns) + "," + std::to_string(r.end_ns) + "," +
           format_digest(r.payload_digest) + "\n";
  }
  return out;
}

SimTrace parse_trace(std::string_view text) {
  SimTrace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw Error("malformed-trace", "line 1: expected header '" + std::string(kTraceHeader) + "'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos;) {
      cells.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    cells.push_back(rest);
    if (cells.size() != 5) {
      throw Error("malformed-trace", "line " + std::to_string(line_no) + ": expected 5 fields");
    }
    TransactionRecord r;
    r.txn_id = parse_number<std::uint64_t>(cells[0], 10, line_no);
    if (cells[1] == "CA") {
      r.side = RecordSide::ca;
    } else if (cells[1] == "PVT") {
      r.side = RecordSide::pvt;
    } else {
      throw Error("malformed-trace", "line " + std::to_string(line_no) + ": side must be CA or PVT");
    }
    r.begin_ns = parse_number<TimeNs>(cells[2], 10, line_no);
    r.end_ns = parse_number<TimeNs>(cells[3], 10, line_no);
    if (cells[4].size() != 16) {
      throw Error("malformed-trace",
                  "line " + std::to_string(line_no) + ": digest must be 16 hex digits");
    }
    r.payload_digest = parse_number<std::uint64_t>(cells[4], 16, line_no);
    if (r.end_ns < r.begin_ns) {
      throw Error("malformed-trace", "line " + std::to_string(line_no) + ": end before begin");
    }
    trace.records.push_back(r);
  }
  std::sort(trace.records.begin(), trace.records.end());
  return trace;
}

std::string serialize_events(const SimTrace& trace) {
  std::string out(kEventHeader);
  out += '\n';
  for (const auto& e : trace.events) {
    out += std::to_string(e.time_ns) + "," + csv_field(e.component) + "," +
           csv_field(e.description) + "\n";
  }
  return out;
}

}  // namespace tcx

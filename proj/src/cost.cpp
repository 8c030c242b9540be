#include "redsim/cost.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace redsim {

CostReport cost_report(const std::vector<RedundantCircuit>& circuits,
                       const std::string& baseline,
                       const GateWeights& weights) {
  CostReport report;
  report.baseline = baseline;
  const CostEntry* base = nullptr;

  report.entries.reserve(circuits.size());
  for (const auto& circuit : circuits) {
    CostEntry entry;
    entry.scheme = scheme_name(circuit.scheme);
    entry.gates = gate_count(circuit.netlist, weights);
    entry.depth = depth(circuit.netlist);
    report.entries.push_back(entry);
  }
  for (const auto& entry : report.entries) {
    if (entry.scheme == baseline) {
      base = &entry;
      break;
    }
  }
  if (base == nullptr) {
    throw std::invalid_argument("cost_report: baseline scheme '" + baseline +
                                "' is not among the evaluated circuits");
  }
  for (auto& entry : report.entries) {
    entry.gate_ratio = base->gates > 0.0 ? entry.gates / base->gates : 0.0;
    entry.depth_ratio =
        base->depth > 0 ? static_cast<double>(entry.depth) / base->depth : 0.0;
  }
  return report;
}

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string s(buf);
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    auto last = s.find_last_not_of('0');
    if (last == dot) last -= 1;  // "3.000000" -> "3"
    s.erase(last + 1);
  }
  return s;
}

std::string cost_report_csv(const CostReport& report) {
  std::ostringstream out;
  out << "scheme,gates,depth,gate_ratio,depth_ratio\n";
  for (const auto& entry : report.entries) {
    out << entry.scheme << ',' << format_fixed(entry.gates) << ',' << entry.depth
        << ',' << format_fixed(entry.gate_ratio) << ','
        << format_fixed(entry.depth_ratio) << '\n';
  }
  return out.str();
}

}  // namespace redsim

#pragma once

#include <string>
#include <vector>

#include "redsim/generators.hpp"
#include "redsim/netlist.hpp"

namespace redsim {

/// Proxy cost of one circuit: weighted gate count plus unit-delay critical-path
/// depth, with ratios normalized against a chosen baseline circuit.
struct CostEntry {
  std::string scheme;
  double gates = 0.0;
  int depth = 0;
  double gate_ratio = 1.0;
  double depth_ratio = 1.0;
};

struct CostReport {
  std::string baseline;
  std::vector<CostEntry> entries;
};

/// Computes gate counts and depths for each circuit and normalizes against the
/// entry whose scheme name equals `baseline`.  Throws std::invalid_argument if
/// no entry matches the baseline name.
CostReport cost_report(const std::vector<RedundantCircuit>& circuits,
                       const std::string& baseline,
                       const GateWeights& weights = GateWeights{});

/// Renders a report as CSV (header `scheme,gates,depth,gate_ratio,depth_ratio`).
std::string cost_report_csv(const CostReport& report);

/// Formats a double with up to six decimal places and no trailing zeros, so
/// emitted tables are byte-stable across runs.
std::string format_fixed(double value);

}  // namespace redsim

#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "redsim/cost.hpp"
#include "redsim/generators.hpp"

using namespace redsim;

namespace {

std::vector<RedundantCircuit> standard_circuits() {
  std::vector<RedundantCircuit> circuits;
  circuits.push_back(build_single(AdderSpec{32, 0}));
  circuits.push_back(build_tmr_adder(AdderSpec{32, 0}));
  circuits.push_back(build_fac(AdderSpec{32, 10}));
  return circuits;
}

const CostEntry& entry_of(const CostReport& report, const std::string& scheme) {
  for (const auto& entry : report.entries) {
    if (entry.scheme == scheme) return entry;
  }
  throw std::logic_error("missing scheme " + scheme);
}

}  // namespace

TEST_CASE("baseline entry normalizes to ratio one") {
  const CostReport report = cost_report(standard_circuits(), "tmr");
  CHECK(report.baseline == "tmr");
  const auto& tmr = entry_of(report, "tmr");
  CHECK(tmr.gate_ratio == 1.0);
  CHECK(tmr.depth_ratio == 1.0);
}

TEST_CASE("unknown baseline is rejected") {
  CHECK_THROWS_AS(cost_report(standard_circuits(), "mvrpr"), std::invalid_argument);
}

TEST_CASE("32-bit cost orderings") {
  const CostReport report = cost_report(standard_circuits(), "tmr");
  const auto& single = entry_of(report, "single");
  const auto& tmr = entry_of(report, "tmr");
  const auto& fac = entry_of(report, "fac");

  CHECK(single.gates < fac.gates);
  CHECK(fac.gates < tmr.gates);
  CHECK(fac.depth < tmr.depth);
  CHECK(fac.depth <= single.depth);

  CHECK(fac.gate_ratio < 1.0);
  CHECK(single.gate_ratio < fac.gate_ratio);
  CHECK(fac.depth_ratio < 1.0);
}

TEST_CASE("pinned structural constants of the generated 32-bit circuits") {
  // Frozen from the emitted structures: a 4-bit-group lookahead adder is 22
  // levels deep at width 32, the reduced adder (L=10) 17, the majority layer
  // adds 3, and full TMR pays the adder's 22 plus the voter.
  const CostReport report = cost_report(standard_circuits(), "tmr");
  CHECK(entry_of(report, "single").depth == 22);
  CHECK(entry_of(report, "tmr").depth == 25);
  CHECK(entry_of(report, "fac").depth == 20);
  CHECK(entry_of(report, "single").gates == 321.0);
  CHECK(entry_of(report, "tmr").gates == 3 * 321.0 + gate_count(build_voter(3, 33)));
}

TEST_CASE("TMR depth decomposes into unit depth plus voter depth") {
  for (int width : {8, 16, 32}) {
    const auto tmr = build_tmr_adder(AdderSpec{width, 0});
    CHECK(depth(tmr.netlist) ==
          depth(build_cla(width)) + depth(build_voter(3, width + 1)));
  }
}

TEST_CASE("weighted gate counts respect custom weights") {
  std::vector<RedundantCircuit> circuits;
  circuits.push_back(build_single(AdderSpec{8, 0}));
  GateWeights heavy_xor;
  heavy_xor[GateKind::Xor] = 10.0;
  const CostReport weighted = cost_report(circuits, "single", heavy_xor);
  const CostReport plain = cost_report(circuits, "single");
  CHECK(weighted.entries[0].gates > plain.entries[0].gates);
}

TEST_CASE("CSV rendering is stable and parseable") {
  const CostReport report = cost_report(standard_circuits(), "tmr");
  const std::string csv = cost_report_csv(report);
  CHECK(csv.rfind("scheme,gates,depth,gate_ratio,depth_ratio\n", 0) == 0);
  CHECK(csv.find("tmr,") != std::string::npos);
  CHECK(csv.find(",1,1\n") != std::string::npos);  // baseline ratios collapse to 1
  CHECK(cost_report_csv(report) == csv);
}

TEST_CASE("number formatting strips trailing zeros") {
  CHECK(format_fixed(1.0) == "1");
  CHECK(format_fixed(0.5) == "0.5");
  CHECK(format_fixed(0.284574) == "0.284574");
  CHECK(format_fixed(12.100000) == "12.1");
  CHECK(format_fixed(0.0) == "0");
  CHECK(format_fixed(-2.5) == "-2.5");
}

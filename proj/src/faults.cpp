#include "redsim/faults.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace redsim {

namespace {

/// Input assignments packed 64 per block: lanes[block][flat_bit] holds lane
/// words, valid[block] masks the meaningful lanes of the last block.
struct InputBlocks {
  std::vector<std::vector<std::uint64_t>> lanes;
  std::vector<std::uint64_t> valid;
  std::uint64_t total = 0;
};

std::uint64_t width_mask(std::size_t bits) {
  return bits >= 64 ? ~0ull : (1ull << bits) - 1;
}

InputBlocks make_blocks(const Netlist& nl, const InputSpec& spec) {
  const int bits = nl.total_input_bits();
  InputBlocks blocks;

  if (spec.mode == InputSpec::Mode::Exhaustive) {
    if (bits > 20) {
      throw std::invalid_argument("exhaustive inputs require total input width <= 20 bits");
    }
    blocks.total = 1ull << bits;
  } else {
    if (spec.samples == 0) throw std::invalid_argument("sampled inputs require at least one sample");
    blocks.total = spec.samples;
  }

  const std::uint64_t n_blocks = (blocks.total + 63) / 64;
  blocks.lanes.assign(n_blocks, std::vector<std::uint64_t>(bits, 0));
  blocks.valid.assign(n_blocks, ~0ull);
  if (blocks.total % 64 != 0) blocks.valid.back() = (1ull << (blocks.total % 64)) - 1;

  if (spec.mode == InputSpec::Mode::Exhaustive) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
      for (int i = 0; i < bits; ++i) {
        std::uint64_t word = 0;
        for (int lane = 0; lane < 64; ++lane) {
          std::uint64_t g = b * 64 + static_cast<std::uint64_t>(lane);
          if (g >= blocks.total) break;
          word |= ((g >> i) & 1u) << lane;
        }
        blocks.lanes[b][i] = word;
      }
    }
  } else {
    std::mt19937_64 rng(spec.seed);
    for (std::uint64_t s = 0; s < blocks.total; ++s) {
      const std::uint64_t b = s / 64;
      const int lane = static_cast<int>(s % 64);
      int flat = 0;
      for (const auto& port : nl.input_ports()) {
        std::uint64_t value = rng() & width_mask(port.bits.size());
        for (std::size_t i = 0; i < port.bits.size(); ++i, ++flat) {
          blocks.lanes[b][flat] |= ((value >> i) & 1u) << lane;
        }
      }
    }
  }
  return blocks;
}

std::string input_mode_string(const Netlist& nl, const InputSpec& spec) {
  if (spec.mode == InputSpec::Mode::Exhaustive) {
    return "exhaustive(2^" + std::to_string(nl.total_input_bits()) + ")";
  }
  return spec.describe();
}

/// Fault-free lane words of the sum nets, per block.
std::vector<std::vector<std::uint64_t>> make_baseline(Evaluator& ev, const InputBlocks& blocks,
                                                      const std::vector<NetId>& sum_nets) {
  std::vector<std::vector<std::uint64_t>> base(blocks.lanes.size());
  for (std::size_t b = 0; b < blocks.lanes.size(); ++b) {
    ev.run_packed(blocks.lanes[b], {});
    base[b].reserve(sum_nets.size());
    for (NetId net : sum_nets) base[b].push_back(ev.net_values()[net]);
  }
  return base;
}

std::uint64_t gather_bits(const std::vector<std::uint64_t>& words, int lane) {
  std::uint64_t value = 0;
  for (std::size_t s = 0; s < words.size(); ++s) {
    value |= ((words[s] >> lane) & 1u) << s;
  }
  return value;
}

/// Evaluates `faults` over every block, comparing the sum nets against the
/// fault-free baseline. Returns {any difference, worst |error|}.
std::pair<bool, std::uint64_t> run_faulted(Evaluator& ev, const InputBlocks& blocks,
                                           const std::vector<std::vector<std::uint64_t>>& baseline,
                                           const std::vector<NetId>& sum_nets,
                                           std::span<const Fault> faults) {
  bool differs = false;
  std::uint64_t worst = 0;
  std::vector<std::uint64_t> faulty(sum_nets.size());
  for (std::size_t b = 0; b < blocks.lanes.size(); ++b) {
    ev.run_packed(blocks.lanes[b], faults);
    const auto& values = ev.net_values();
    std::uint64_t diff = 0;
    for (std::size_t s = 0; s < sum_nets.size(); ++s) {
      faulty[s] = values[sum_nets[s]];
      diff |= (faulty[s] ^ baseline[b][s]) & blocks.valid[b];
    }
    if (diff == 0) continue;
    differs = true;
    for (int lane = 0; lane < 64; ++lane) {
      if (((diff >> lane) & 1u) == 0) continue;
      std::uint64_t got = gather_bits(faulty, lane);
      std::uint64_t want = gather_bits(baseline[b], lane);
      std::uint64_t err = got > want ? got - want : want - got;
      worst = std::max(worst, err);
    }
  }
  return {differs, worst};
}

std::vector<Fault> enumerate_kind(const RedundantCircuit& circuit,
                                  std::span<const std::string> scope, bool flips) {
  const Netlist& nl = circuit.netlist;
  const auto known = nl.region_labels();
  for (const auto& label : scope) {
    if (std::find(known.begin(), known.end(), label) == known.end()) {
      throw std::invalid_argument("enumerate_faults: unknown region '" + label + "'");
    }
  }
  std::unordered_set<std::string_view> scoped(scope.begin(), scope.end());

  std::vector<Fault> faults;
  for (NetId net = 0; net < nl.net_count(); ++net) {
    const std::string& region = nl.region(net);
    if (region.empty() || scoped.find(region) == scoped.end()) continue;
    if (flips) {
      faults.push_back(Fault{net, FaultKind::BitFlip, region});
    } else {
      faults.push_back(Fault{net, FaultKind::StuckAt0, region});
      faults.push_back(Fault{net, FaultKind::StuckAt1, region});
    }
  }
  return faults;
}

}  // namespace

std::string InputSpec::describe() const {
  if (mode == Mode::Exhaustive) return "exhaustive";
  return "sampled(n=" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
}

std::vector<Fault> enumerate_faults(const RedundantCircuit& circuit,
                                    std::span<const std::string> scope) {
  return enumerate_kind(circuit, scope, false);
}

std::vector<Fault> enumerate_flip_faults(const RedundantCircuit& circuit,
                                         std::span<const std::string> scope) {
  return enumerate_kind(circuit, scope, true);
}

FaultCampaignReport run_campaign(const RedundantCircuit& circuit, std::span<const Fault> faults,
                                 const InputSpec& inputs, int jobs) {
  const Netlist& nl = circuit.netlist;
  InputBlocks blocks = make_blocks(nl, inputs);

  Evaluator base_ev(nl);
  const auto baseline = make_baseline(base_ev, blocks, circuit.sum_bits);

  FaultCampaignReport report;
  report.scheme = circuit.scheme;
  for (const auto& fault : faults) {
    if (fault.region.empty()) continue;
    if (std::find(report.scope.begin(), report.scope.end(), fault.region) ==
        report.scope.end()) {
      report.scope.push_back(fault.region);
    }
  }
  report.input_mode = input_mode_string(nl, inputs);
  report.inputs_tested = blocks.total;
  report.faults_total = faults.size();
  report.outcomes.resize(faults.size());

  jobs = std::clamp<int>(jobs, 1, faults.empty() ? 1 : static_cast<int>(faults.size()));
  auto worker = [&](int start) {
    Evaluator ev(nl);
    for (std::size_t f = static_cast<std::size_t>(start); f < faults.size();
         f += static_cast<std::size_t>(jobs)) {
      auto [differs, worst] =
          run_faulted(ev, blocks, baseline, circuit.sum_bits, faults.subspan(f, 1));
      report.outcomes[f] = FaultOutcome{faults[f], !differs, worst};
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }

  for (const auto& outcome : report.outcomes) {
    if (outcome.masked) {
      ++report.faults_masked;
    } else {
      ++report.faults_propagated;
      report.worst_error = std::max(report.worst_error, outcome.worst_error);
    }
  }
  return report;
}

UnitTestResult faulty_unit_test(const RedundantCircuit& circuit, int replica,
                                const InputSpec& inputs) {
  if (replica < 0 || replica >= static_cast<int>(circuit.replica_outputs.size())) {
    throw std::invalid_argument("faulty_unit_test: unknown replica " + std::to_string(replica));
  }
  const Netlist& nl = circuit.netlist;
  InputBlocks blocks = make_blocks(nl, inputs);
  Evaluator ev(nl);
  const auto baseline = make_baseline(ev, blocks, circuit.sum_bits);

  std::vector<Fault> flips;
  for (NetId net : circuit.replica_outputs[static_cast<std::size_t>(replica)]) {
    flips.push_back(Fault{net, FaultKind::BitFlip, nl.region(net)});
  }
  auto [differs, worst] = run_faulted(ev, blocks, baseline, circuit.sum_bits, flips);
  (void)worst;
  return differs ? UnitTestResult::Exposed : UnitTestResult::Masked;
}

PairRunResult run_fault_pair(const RedundantCircuit& circuit, const Fault& first,
                             const Fault& second, const InputSpec& inputs) {
  const Netlist& nl = circuit.netlist;

  auto replica_of = [&](const Fault& f) {
    const std::string& region = f.region.empty() ? nl.region(f.net) : f.region;
    return circuit.replica_of_region(region);
  };
  const int r1 = replica_of(first);
  const int r2 = replica_of(second);

  PairRunResult result;
  result.outside_single_fault_guarantee = (r1 < 0 || r2 < 0 || r1 != r2);

  InputBlocks blocks = make_blocks(nl, inputs);
  Evaluator ev(nl);
  const auto baseline = make_baseline(ev, blocks, circuit.sum_bits);
  const Fault pair[2] = {first, second};
  auto [differs, worst] = run_faulted(ev, blocks, baseline, circuit.sum_bits, pair);
  (void)worst;
  result.propagated = differs;
  return result;
}

}  // namespace redsim

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "redsim/generators.hpp"
#include "redsim/netlist.hpp"

namespace redsim {

/// Input coverage for a campaign: every assignment of the circuit's input
/// ports (exhaustive, total input width capped at 20 bits) or `samples`
/// seeded uniform draws.
struct InputSpec {
  enum class Mode : std::uint8_t { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static InputSpec exhaustive() { return {Mode::Exhaustive, 0, 0}; }
  static InputSpec sampled(std::uint64_t n, std::uint64_t seed) {
    return {Mode::Sampled, n, seed};
  }
  std::string describe() const;
};

/// Verdict for one injected fault over the whole input set.
struct FaultOutcome {
  Fault fault;
  bool masked = true;
  /// Max over inputs of |faulty sum - fault-free sum|, both read as unsigned
  /// integers from the circuit's LSB-first sum bits. Zero when masked.
  std::uint64_t worst_error = 0;
};

struct FaultCampaignReport {
  Scheme scheme = Scheme::Single;
  std::vector<std::string> scope;
  std::string input_mode;
  std::uint64_t inputs_tested = 0;
  std::uint64_t faults_total = 0;
  std::uint64_t faults_masked = 0;
  std::uint64_t faults_propagated = 0;
  std::uint64_t worst_error = 0;  // max over all faults
  std::vector<FaultOutcome> outcomes;  // in enumeration order
};

/// Stuck-at-0 and stuck-at-1 on every net tagged with a scoped region, in
/// ascending net order (stuck-at-0 first per net). Unknown region -> error.
std::vector<Fault> enumerate_faults(const RedundantCircuit& circuit,
                                    std::span<const std::string> scope);

/// Bit-flip fault on every scoped net (transient mode: the net's computed
/// value is inverted on every input vector).
std::vector<Fault> enumerate_flip_faults(const RedundantCircuit& circuit,
                                         std::span<const std::string> scope);

/// Runs every fault in isolation over the input set and classifies it as
/// masked (all outputs always equal fault-free) or propagated. `jobs`
/// workers split the fault list; the report is identical for any count.
FaultCampaignReport run_campaign(const RedundantCircuit& circuit, std::span<const Fault> faults,
                                 const InputSpec& inputs, int jobs = 1);

enum class UnitTestResult : std::uint8_t { Masked, Exposed };

/// Adversarially corrupts one whole replica: every pre-voter output bit of
/// replica `replica` is inverted on every input. Masked iff the circuit's
/// outputs still equal fault-free on every tested input.
UnitTestResult faulty_unit_test(const RedundantCircuit& circuit, int replica,
                                const InputSpec& inputs);

/// Two simultaneous faults (extension mode; the single-fault guarantee
/// covers only fault sets confined to one replica's regions).
struct PairRunResult {
  bool outside_single_fault_guarantee = false;
  bool propagated = false;
};
PairRunResult run_fault_pair(const RedundantCircuit& circuit, const Fault& first,
                             const Fault& second, const InputSpec& inputs);

}  // namespace redsim

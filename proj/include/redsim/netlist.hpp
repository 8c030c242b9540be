#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redsim {

using NetId = std::uint32_t;
inline constexpr NetId kNoNet = 0xffffffffu;

/// Combinational cell kinds. TIE0/TIE1 take no inputs, NOT/BUF take one,
/// everything else takes exactly two.
enum class GateKind : std::uint8_t { And, Or, Xor, Not, Nand, Nor, Tie0, Tie1, Buf };
inline constexpr int kGateKindCount = 9;

int gate_arity(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

struct Gate {
  GateKind kind;
  NetId out;
  NetId in0 = kNoNet;
  NetId in1 = kNoNet;
};

/// Named bit group. bits[0] is the least significant bit.
struct Port {
  std::string name;
  std::vector<NetId> bits;
};

enum class FaultKind : std::uint8_t { StuckAt0, StuckAt1, BitFlip };

std::string_view fault_kind_name(FaultKind kind);
std::optional<FaultKind> fault_kind_from_name(std::string_view name);

/// A single perturbation bound to one net. The region label, when non-empty,
/// must match the tag of the faulted net.
struct Fault {
  NetId net = kNoNet;
  FaultKind kind = FaultKind::StuckAt0;
  std::string region;
};

/// Gate-level combinational circuit over densely numbered nets.
///
/// A net is either an input-port bit (driven by the caller's assignment) or
/// the output of exactly one gate. Netlists are mutated only while being
/// built; after validate() reports ok they are treated as immutable and may
/// be shared freely across threads.
class Netlist {
public:
  NetId add_net();
  NetId add_nets(int count);  // returns the first of `count` fresh ids

  /// Adds a gate driving a fresh net; returns that net.
  NetId add_gate(GateKind kind, NetId in0 = kNoNet, NetId in1 = kNoNet);
  /// Adds a gate driving an existing net (used by the text-format reader).
  void add_gate_driving(NetId out, GateKind kind, NetId in0 = kNoNet, NetId in1 = kNoNet);

  void add_input_port(std::string name, std::vector<NetId> bits);
  /// Allocates `width` fresh nets and declares them as an input port.
  std::vector<NetId> add_input_port(std::string name, int width);
  void add_output_port(std::string name, std::vector<NetId> bits);
  void rename_output_port(std::string_view old_name, std::string new_name);

  void set_region(NetId net, std::string label);

  std::uint32_t net_count() const { return net_count_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Port>& input_ports() const { return inputs_; }
  const std::vector<Port>& output_ports() const { return outputs_; }

  /// Region tag of a net; empty when untagged.
  const std::string& region(NetId net) const;
  bool has_region_tags() const;
  std::vector<std::string> region_labels() const;  // distinct, in first-use order
  std::vector<NetId> nets_in_region(std::string_view label) const;

  const Port* find_input(std::string_view name) const;
  const Port* find_output(std::string_view name) const;
  int total_input_bits() const;
  int total_output_bits() const;
  /// Input-port bits flattened in declaration order, LSB of the first port first.
  std::vector<NetId> flat_input_nets() const;
  std::vector<NetId> flat_output_nets() const;

private:
  std::uint32_t net_count_ = 0;
  std::vector<Gate> gates_;
  std::vector<Port> inputs_;
  std::vector<Port> outputs_;
  std::vector<std::string> region_;  // per net, "" = untagged
};

struct Diagnostics {
  bool ok = true;
  std::string message;  // first violated invariant, with the offending net/gate
};

/// Structural validation. Checks, in order: net-id bounds, gate arity,
/// exactly-one-driver for every non-input net, input ports not driven by
/// gates and not overlapping, acyclicity, region-tag consistency (when any
/// tag is present, every gate-output net must carry one), and output
/// reachability.
Diagnostics validate(const Netlist& netlist);

/// Longest input-to-output path in gate traversals. TIE gates sit at level 0.
int depth(const Netlist& netlist);

struct GateWeights {
  /// Logic gates weigh 1, TIE cells weigh 0 (order matches GateKind).
  double weight[kGateKindCount] = {1, 1, 1, 1, 1, 1, 0, 0, 1};
  static GateWeights defaults() { return {}; }
  double& operator[](GateKind k) { return weight[static_cast<int>(k)]; }
  double operator[](GateKind k) const { return weight[static_cast<int>(k)]; }
};

double gate_count(const Netlist& netlist, const GateWeights& weights = GateWeights::defaults());

/// Reusable evaluation engine. Holds the topological order plus per-net
/// scratch, so one Evaluator serves many assignments without reallocation.
/// Not thread-safe; give each worker its own instance.
///
/// Values travel as 64-lane words: lane i of a net's word is its value under
/// the i-th assignment of a packed batch. The scalar run() entry points wrap
/// the packed core with a single broadcast lane.
class Evaluator {
public:
  /// Requires validate(netlist).ok; throws std::invalid_argument otherwise.
  /// Holds a reference: the netlist must outlive the evaluator.
  explicit Evaluator(const Netlist& netlist);
  explicit Evaluator(Netlist&&) = delete;  // would dangle

  /// One word per input port (bits packed LSB-first); returns one word per
  /// output port. Throws std::invalid_argument on a missing/extra/oversized
  /// port word.
  std::vector<std::uint64_t> run(std::span<const std::uint64_t> port_inputs);
  std::vector<std::uint64_t> run(std::span<const std::uint64_t> port_inputs,
                                 std::span<const Fault> faults);

  /// Lane-parallel evaluation over 64 assignments. `input_lanes` carries one
  /// word per flattened input bit (see Netlist::flat_input_nets). After the
  /// call net_values() exposes every net's lane word.
  void run_packed(std::span<const std::uint64_t> input_lanes,
                  std::span<const Fault> faults);

  const std::vector<std::uint64_t>& net_values() const { return values_; }
  const Netlist& netlist() const { return *netlist_; }

private:
  const Netlist* netlist_;
  std::vector<NetId> flat_inputs_;
  std::vector<std::uint32_t> topo_;        // gate indices, topologically sorted
  std::vector<std::uint64_t> values_;      // per net, 64 lanes
  std::vector<std::uint8_t> override_;     // per net: 0 none, else FaultKind+1
  std::vector<NetId> override_dirty_;
};

/// One-shot helpers over a fresh Evaluator.
std::vector<std::uint64_t> evaluate(const Netlist& netlist,
                                    std::span<const std::uint64_t> port_inputs);
std::vector<std::uint64_t> evaluate_with_fault(const Netlist& netlist,
                                               std::span<const std::uint64_t> port_inputs,
                                               const Fault& fault);

}  // namespace redsim

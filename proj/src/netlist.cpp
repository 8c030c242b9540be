#include "redsim/netlist.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace redsim {

namespace {

constexpr std::array<std::string_view, kGateKindCount> kGateNames = {
    "AND", "OR", "XOR", "NOT", "NAND", "NOR", "TIE0", "TIE1", "BUF"};

constexpr std::array<std::string_view, 3> kFaultNames = {"stuck0", "stuck1", "flip"};

std::string net_str(NetId net) { return "net " + std::to_string(net); }

}  // namespace

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::Tie0:
    case GateKind::Tie1:
      return 0;
    case GateKind::Not:
    case GateKind::Buf:
      return 1;
    default:
      return 2;
  }
}

std::string_view gate_name(GateKind kind) { return kGateNames[static_cast<int>(kind)]; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (int i = 0; i < kGateKindCount; ++i) {
    if (kGateNames[i] == name) return static_cast<GateKind>(i);
  }
  return std::nullopt;
}

std::string_view fault_kind_name(FaultKind kind) { return kFaultNames[static_cast<int>(kind)]; }

std::optional<FaultKind> fault_kind_from_name(std::string_view name) {
  for (int i = 0; i < 3; ++i) {
    if (kFaultNames[i] == name) return static_cast<FaultKind>(i);
  }
  return std::nullopt;
}

NetId Netlist::add_net() {
  if (net_count_ == std::numeric_limits<NetId>::max()) {
    throw std::length_error("net id space exhausted");
  }
  return net_count_++;
}

NetId Netlist::add_nets(int count) {
  if (count <= 0) throw std::invalid_argument("add_nets: count must be positive");
  NetId first = net_count_;
  for (int i = 0; i < count; ++i) add_net();
  return first;
}

NetId Netlist::add_gate(GateKind kind, NetId in0, NetId in1) {
  NetId out = add_net();
  add_gate_driving(out, kind, in0, in1);
  return out;
}

void Netlist::add_gate_driving(NetId out, GateKind kind, NetId in0, NetId in1) {
  int arity = gate_arity(kind);
  if ((arity >= 1) != (in0 != kNoNet) || (arity >= 2) != (in1 != kNoNet)) {
    throw std::invalid_argument(std::string("gate ") + std::string(gate_name(kind)) +
                                " given wrong number of inputs");
  }
  gates_.push_back(Gate{kind, out, in0, in1});
}

void Netlist::add_input_port(std::string name, std::vector<NetId> bits) {
  if (bits.empty()) throw std::invalid_argument("input port must have at least one bit");
  inputs_.push_back(Port{std::move(name), std::move(bits)});
}

std::vector<NetId> Netlist::add_input_port(std::string name, int width) {
  if (width <= 0) throw std::invalid_argument("input port must have at least one bit");
  std::vector<NetId> bits(static_cast<std::size_t>(width));
  for (auto& b : bits) b = add_net();
  add_input_port(std::move(name), bits);
  return bits;
}

void Netlist::add_output_port(std::string name, std::vector<NetId> bits) {
  if (bits.empty()) throw std::invalid_argument("output port must have at least one bit");
  outputs_.push_back(Port{std::move(name), std::move(bits)});
}

void Netlist::rename_output_port(std::string_view old_name, std::string new_name) {
  for (auto& p : outputs_) {
    if (p.name == old_name) {
      p.name = std::move(new_name);
      return;
    }
  }
  throw std::invalid_argument("rename_output_port: no output port named '" +
                              std::string(old_name) + "'");
}

void Netlist::set_region(NetId net, std::string label) {
  if (net >= net_count_) throw std::out_of_range("set_region: unknown net");
  if (region_.size() < net_count_) region_.resize(net_count_);
  region_[net] = std::move(label);
}

const std::string& Netlist::region(NetId net) const {
  static const std::string kEmpty;
  if (net < region_.size() && !region_[net].empty()) return region_[net];
  return kEmpty;
}

bool Netlist::has_region_tags() const {
  return std::any_of(region_.begin(), region_.end(),
                     [](const std::string& r) { return !r.empty(); });
}

std::vector<std::string> Netlist::region_labels() const {
  std::vector<std::string> labels;
  std::unordered_set<std::string_view> seen;
  for (const auto& r : region_) {
    if (!r.empty() && seen.insert(r).second) labels.push_back(r);
  }
  return labels;
}

std::vector<NetId> Netlist::nets_in_region(std::string_view label) const {
  std::vector<NetId> nets;
  for (NetId n = 0; n < region_.size(); ++n) {
    if (region_[n] == label) nets.push_back(n);
  }
  return nets;
}

const Port* Netlist::find_input(std::string_view name) const {
  for (const auto& p : inputs_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const Port* Netlist::find_output(std::string_view name) const {
  for (const auto& p : outputs_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

int Netlist::total_input_bits() const {
  int n = 0;
  for (const auto& p : inputs_) n += static_cast<int>(p.bits.size());
  return n;
}

int Netlist::total_output_bits() const {
  int n = 0;
  for (const auto& p : outputs_) n += static_cast<int>(p.bits.size());
  return n;
}

std::vector<NetId> Netlist::flat_input_nets() const {
  std::vector<NetId> nets;
  for (const auto& p : inputs_) nets.insert(nets.end(), p.bits.begin(), p.bits.end());
  return nets;
}

std::vector<NetId> Netlist::flat_output_nets() const {
  std::vector<NetId> nets;
  for (const auto& p : outputs_) nets.insert(nets.end(), p.bits.begin(), p.bits.end());
  return nets;
}

namespace {

/// Kahn order over gates. Returns gate indices; leaves `order` empty when a
/// cycle exists, in which case `cycle_net` names a net on the cycle.
void topo_sort(const Netlist& nl, std::vector<std::uint32_t>& order, NetId& cycle_net) {
  const auto& gates = nl.gates();
  std::vector<std::int32_t> driver(nl.net_count(), -1);
  for (std::uint32_t g = 0; g < gates.size(); ++g) driver[gates[g].out] = static_cast<std::int32_t>(g);

  std::vector<int> pending(gates.size(), 0);
  std::vector<std::vector<std::uint32_t>> dependents(gates.size());
  for (std::uint32_t g = 0; g < gates.size(); ++g) {
    for (NetId in : {gates[g].in0, gates[g].in1}) {
      if (in == kNoNet) continue;
      if (std::int32_t d = driver[in]; d >= 0) {
        ++pending[g];
        dependents[static_cast<std::uint32_t>(d)].push_back(g);
      }
    }
  }

  order.clear();
  order.reserve(gates.size());
  for (std::uint32_t g = 0; g < gates.size(); ++g) {
    if (pending[g] == 0) order.push_back(g);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::uint32_t succ : dependents[order[head]]) {
      if (--pending[succ] == 0) order.push_back(succ);
    }
  }

  if (order.size() != gates.size()) {
    for (std::uint32_t g = 0; g < gates.size(); ++g) {
      if (pending[g] > 0) {
        cycle_net = gates[g].out;
        break;
      }
    }
    order.clear();
  }
}

}  // namespace

Diagnostics validate(const Netlist& nl) {
  const auto& gates = nl.gates();
  const NetId n = nl.net_count();

  for (std::size_t g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    int arity = gate_arity(gate.kind);
    if (gate.out >= n) return {false, "gate " + std::to_string(g) + " drives out-of-range " + net_str(gate.out)};
    if (arity >= 1 && gate.in0 >= n) return {false, "gate " + std::to_string(g) + " reads out-of-range " + net_str(gate.in0)};
    if (arity >= 2 && gate.in1 >= n) return {false, "gate " + std::to_string(g) + " reads out-of-range " + net_str(gate.in1)};
    if ((arity >= 1) != (gate.in0 != kNoNet) || (arity >= 2) != (gate.in1 != kNoNet)) {
      return {false, "gate " + std::to_string(g) + " (" + std::string(gate_name(gate.kind)) + ") has wrong arity"};
    }
  }

  for (const auto& p : nl.input_ports()) {
    if (p.bits.empty()) return {false, "input port " + p.name + " is empty"};
    for (NetId b : p.bits) {
      if (b >= n) return {false, "input port " + p.name + " references out-of-range " + net_str(b)};
    }
  }
  for (const auto& p : nl.output_ports()) {
    if (p.bits.empty()) return {false, "output port " + p.name + " is empty"};
    for (NetId b : p.bits) {
      if (b >= n) return {false, "output port " + p.name + " references out-of-range " + net_str(b)};
    }
  }

  std::vector<std::uint8_t> drive_count(n, 0);
  for (const auto& gate : gates) {
    if (drive_count[gate.out] == 2) continue;
    ++drive_count[gate.out];
  }
  std::vector<std::uint8_t> is_input(n, 0);
  for (const auto& p : nl.input_ports()) {
    for (NetId b : p.bits) {
      if (is_input[b]) return {false, net_str(b) + " appears in more than one input-port position"};
      is_input[b] = 1;
    }
  }
  for (NetId net = 0; net < n; ++net) {
    if (is_input[net] && drive_count[net] > 0) {
      return {false, "input " + net_str(net) + " is also driven by a gate"};
    }
    if (drive_count[net] > 1) return {false, net_str(net) + " has more than one driver"};
    if (!is_input[net] && drive_count[net] == 0) {
      return {false, net_str(net) + " is undriven (neither an input bit nor a gate output)"};
    }
  }

  std::vector<std::uint32_t> order;
  NetId cycle_net = kNoNet;
  topo_sort(nl, order, cycle_net);
  if (order.empty() && !gates.empty()) {
    return {false, "combinational cycle through " + net_str(cycle_net)};
  }

  if (nl.has_region_tags()) {
    for (const auto& gate : gates) {
      if (nl.region(gate.out).empty()) {
        return {false, "region tags present but gate-output " + net_str(gate.out) + " is untagged"};
      }
    }
    for (NetId net = 0; net < n; ++net) {
      if (!nl.region(net).empty() && is_input[net]) {
        return {false, "input " + net_str(net) + " carries a region tag; only gate outputs may"};
      }
    }
  }

  for (const auto& p : nl.output_ports()) {
    for (NetId b : p.bits) {
      if (!is_input[b] && drive_count[b] == 0) {
        return {false, "output port " + p.name + " bit " + net_str(b) + " is undriven"};
      }
    }
  }

  return {true, ""};
}

int depth(const Netlist& nl) {
  std::vector<std::uint32_t> order;
  NetId cycle_net = kNoNet;
  topo_sort(nl, order, cycle_net);
  if (order.empty() && !nl.gates().empty()) {
    throw std::invalid_argument("depth: netlist has a combinational cycle");
  }

  std::vector<int> level(nl.net_count(), 0);
  const auto& gates = nl.gates();
  for (std::uint32_t g : order) {
    const Gate& gate = gates[g];
    if (gate_arity(gate.kind) == 0) {
      level[gate.out] = 0;
      continue;
    }
    int in_level = level[gate.in0];
    if (gate.in1 != kNoNet) in_level = std::max(in_level, level[gate.in1]);
    level[gate.out] = in_level + 1;
  }

  int d = 0;
  for (const auto& p : nl.output_ports()) {
    for (NetId b : p.bits) d = std::max(d, level[b]);
  }
  return d;
}

double gate_count(const Netlist& nl, const GateWeights& weights) {
  double total = 0.0;
  for (const auto& gate : nl.gates()) total += weights[gate.kind];
  return total;
}

Evaluator::Evaluator(const Netlist& netlist) : netlist_(&netlist) {
  Diagnostics diag = validate(netlist);
  if (!diag.ok) throw std::invalid_argument("Evaluator: invalid netlist: " + diag.message);
  flat_inputs_ = netlist.flat_input_nets();
  NetId cycle_net = kNoNet;
  topo_sort(netlist, topo_, cycle_net);
  values_.assign(netlist.net_count(), 0);
  override_.assign(netlist.net_count(), 0);
}

void Evaluator::run_packed(std::span<const std::uint64_t> input_lanes,
                           std::span<const Fault> faults) {
  if (input_lanes.size() != flat_inputs_.size()) {
    throw std::invalid_argument("run_packed: expected " + std::to_string(flat_inputs_.size()) +
                                " input-bit words, got " + std::to_string(input_lanes.size()));
  }
  for (const Fault& f : faults) {
    if (f.net >= netlist_->net_count()) throw std::invalid_argument("fault on unknown " + net_str(f.net));
    if (!f.region.empty() && netlist_->region(f.net) != f.region) {
      throw std::invalid_argument("fault region '" + f.region + "' does not match " + net_str(f.net));
    }
    override_[f.net] = static_cast<std::uint8_t>(f.kind) + 1;
    override_dirty_.push_back(f.net);
  }

  auto apply = [&](NetId net, std::uint64_t computed) -> std::uint64_t {
    switch (override_[net]) {
      case 0:
        return computed;
      case static_cast<int>(FaultKind::StuckAt0) + 1:
        return 0;
      case static_cast<int>(FaultKind::StuckAt1) + 1:
        return ~0ull;
      default:
        return ~computed;
    }
  };

  for (std::size_t i = 0; i < flat_inputs_.size(); ++i) {
    NetId net = flat_inputs_[i];
    values_[net] = apply(net, input_lanes[i]);
  }

  const auto& gates = netlist_->gates();
  for (std::uint32_t g : topo_) {
    const Gate& gate = gates[g];
    std::uint64_t v = 0;
    switch (gate.kind) {
      case GateKind::And:  v = values_[gate.in0] & values_[gate.in1]; break;
      case GateKind::Or:   v = values_[gate.in0] | values_[gate.in1]; break;
      case GateKind::Xor:  v = values_[gate.in0] ^ values_[gate.in1]; break;
      case GateKind::Not:  v = ~values_[gate.in0]; break;
      case GateKind::Nand: v = ~(values_[gate.in0] & values_[gate.in1]); break;
      case GateKind::Nor:  v = ~(values_[gate.in0] | values_[gate.in1]); break;
      case GateKind::Tie0: v = 0; break;
      case GateKind::Tie1: v = ~0ull; break;
      case GateKind::Buf:  v = values_[gate.in0]; break;
    }
    values_[gate.out] = apply(gate.out, v);
  }

  for (NetId net : override_dirty_) override_[net] = 0;
  override_dirty_.clear();
}

std::vector<std::uint64_t> Evaluator::run(std::span<const std::uint64_t> port_inputs,
                                          std::span<const Fault> faults) {
  const auto& in_ports = netlist_->input_ports();
  if (port_inputs.size() != in_ports.size()) {
    throw std::invalid_argument("run: expected " + std::to_string(in_ports.size()) +
                                " port words, got " + std::to_string(port_inputs.size()));
  }
  std::vector<std::uint64_t> lanes;
  lanes.reserve(flat_inputs_.size());
  for (std::size_t p = 0; p < in_ports.size(); ++p) {
    const auto& bits = in_ports[p].bits;
    if (bits.size() < 64 && (port_inputs[p] >> bits.size()) != 0) {
      throw std::invalid_argument("run: value for port " + in_ports[p].name + " exceeds its " +
                                  std::to_string(bits.size()) + "-bit width");
    }
    for (std::size_t b = 0; b < bits.size(); ++b) {
      lanes.push_back(((port_inputs[p] >> b) & 1u) ? ~0ull : 0ull);
    }
  }
  run_packed(lanes, faults);

  std::vector<std::uint64_t> out;
  out.reserve(netlist_->output_ports().size());
  for (const auto& p : netlist_->output_ports()) {
    std::uint64_t word = 0;
    for (std::size_t b = 0; b < p.bits.size(); ++b) {
      word |= (values_[p.bits[b]] & 1u) << b;
    }
    out.push_back(word);
  }
  return out;
}

std::vector<std::uint64_t> Evaluator::run(std::span<const std::uint64_t> port_inputs) {
  return run(port_inputs, {});
}

std::vector<std::uint64_t> evaluate(const Netlist& netlist,
                                    std::span<const std::uint64_t> port_inputs) {
  Evaluator ev(netlist);
  return ev.run(port_inputs);
}

std::vector<std::uint64_t> evaluate_with_fault(const Netlist& netlist,
                                               std::span<const std::uint64_t> port_inputs,
                                               const Fault& fault) {
  Evaluator ev(netlist);
  return ev.run(port_inputs, std::span<const Fault>(&fault, 1));
}

}  // namespace redsim

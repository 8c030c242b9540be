#include "redsim/generators.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>

namespace redsim {

namespace {

constexpr std::array<std::string_view, 4> kSchemeNames = {"single", "tmr", "fac", "mvrpr"};

/// Balanced binary tree of `kind` over `terms`; a single term passes through.
NetId emit_tree(Netlist& nl, GateKind kind, std::vector<NetId> terms, const std::string& region) {
  if (terms.empty()) throw std::invalid_argument("emit_tree: no terms");
  while (terms.size() > 1) {
    std::vector<NetId> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
      NetId out = nl.add_gate(kind, terms[i], terms[i + 1]);
      nl.set_region(out, region);
      next.push_back(out);
    }
    if (terms.size() % 2 != 0) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms[0];
}

/// Lookahead adder over bit nets a/b (LSB first), 4-bit groups with rippled
/// inter-group carries. `cin` is the external carry-in, or kNoNet for none.
/// Returns the n+1 sum nets, LSB first (last is the carry-out).
///
/// Per group: two-level generate G = OR_t( p_{hi}..p_{t+1} & g_t ) and
/// propagate P = AND of the group's p bits; carry-out = G | (P & carry-in),
/// or plain G when the group has no carry-in. Internal bit carries use the
/// same two-level form from the group's carry-in.
std::vector<NetId> emit_cla(Netlist& nl, std::span<const NetId> a, std::span<const NetId> b,
                            NetId cin, const std::string& region) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || a.size() != b.size()) throw std::invalid_argument("emit_cla: bad operand widths");

  std::vector<NetId> g(n), p(n);
  for (int i = 0; i < n; ++i) {
    g[i] = nl.add_gate(GateKind::And, a[i], b[i]);
    nl.set_region(g[i], region);
    p[i] = nl.add_gate(GateKind::Xor, a[i], b[i]);
    nl.set_region(p[i], region);
  }

  std::vector<NetId> sum(n + 1);
  NetId carry = cin;  // carry into the current group
  for (int base = 0; base < n; base += 4) {
    const int sz = std::min(4, n - base);

    for (int j = 0; j < sz; ++j) {
      NetId cj;
      if (j == 0) {
        cj = carry;
      } else {
        std::vector<NetId> terms;
        for (int t = j - 1; t >= 0; --t) {
          std::vector<NetId> prod;
          for (int q = j - 1; q > t; --q) prod.push_back(p[base + q]);
          prod.push_back(g[base + t]);
          terms.push_back(emit_tree(nl, GateKind::And, std::move(prod), region));
        }
        if (carry != kNoNet) {
          std::vector<NetId> prod;
          for (int q = j - 1; q >= 0; --q) prod.push_back(p[base + q]);
          prod.push_back(carry);
          terms.push_back(emit_tree(nl, GateKind::And, std::move(prod), region));
        }
        cj = emit_tree(nl, GateKind::Or, std::move(terms), region);
      }
      if (cj == kNoNet) {
        sum[base + j] = p[base + j];
      } else {
        NetId s = nl.add_gate(GateKind::Xor, p[base + j], cj);
        nl.set_region(s, region);
        sum[base + j] = s;
      }
    }

    std::vector<NetId> g_terms;
    for (int t = sz - 1; t >= 0; --t) {
      std::vector<NetId> prod;
      for (int q = sz - 1; q > t; --q) prod.push_back(p[base + q]);
      prod.push_back(g[base + t]);
      g_terms.push_back(emit_tree(nl, GateKind::And, std::move(prod), region));
    }
    NetId group_g = emit_tree(nl, GateKind::Or, std::move(g_terms), region);
    if (carry == kNoNet) {
      carry = group_g;
    } else {
      std::vector<NetId> prod(p.begin() + base, p.begin() + base + sz);
      NetId group_p = emit_tree(nl, GateKind::And, std::move(prod), region);
      NetId pc = nl.add_gate(GateKind::And, group_p, carry);
      nl.set_region(pc, region);
      carry = nl.add_gate(GateKind::Or, group_g, pc);
      nl.set_region(carry, region);
    }
  }
  sum[n] = carry;
  return sum;
}

/// Lexicographic k-combinations of {0..n-1}.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

/// Bitwise majority of replicas[k][bit]; each output bit ORs the AND of
/// every (r+1)/2-subset of replica bits.
std::vector<NetId> emit_majority(Netlist& nl, const std::vector<std::vector<NetId>>& replicas,
                                 const std::string& region) {
  const int r = static_cast<int>(replicas.size());
  if (r < 3 || r % 2 == 0) throw std::invalid_argument("emit_majority: replicas must be odd, >= 3");
  const std::size_t width = replicas[0].size();
  for (const auto& rep : replicas) {
    if (rep.size() != width) throw std::invalid_argument("emit_majority: replica width mismatch");
  }
  const auto combos = combinations(r, (r + 1) / 2);

  std::vector<NetId> out(width);
  for (std::size_t bit = 0; bit < width; ++bit) {
    std::vector<NetId> terms;
    terms.reserve(combos.size());
    for (const auto& combo : combos) {
      std::vector<NetId> prod;
      prod.reserve(combo.size());
      for (int k : combo) prod.push_back(replicas[k][bit]);
      terms.push_back(emit_tree(nl, GateKind::And, std::move(prod), region));
    }
    out[bit] = emit_tree(nl, GateKind::Or, std::move(terms), region);
  }
  return out;
}

/// Copies all of `unit` into `dst`. input_map[i] gives the dst nets standing
/// in for unit input port i; every other unit net gets a fresh dst net.
/// Copied gate outputs are tagged region_prefix + "." + original tag, or the
/// bare prefix when the unit is untagged. Returns the unit->dst net map.
std::vector<NetId> append_unit(Netlist& dst, const Netlist& unit,
                               const std::vector<std::vector<NetId>>& input_map,
                               const std::string& region_prefix) {
  std::vector<NetId> map(unit.net_count(), kNoNet);
  const auto& ports = unit.input_ports();
  if (input_map.size() != ports.size()) {
    throw std::invalid_argument("append_unit: input map does not cover the unit's input ports");
  }
  for (std::size_t pi = 0; pi < ports.size(); ++pi) {
    if (input_map[pi].size() != ports[pi].bits.size()) {
      throw std::invalid_argument("append_unit: width mismatch on port " + ports[pi].name);
    }
    for (std::size_t bi = 0; bi < ports[pi].bits.size(); ++bi) {
      map[ports[pi].bits[bi]] = input_map[pi][bi];
    }
  }
  for (NetId net = 0; net < unit.net_count(); ++net) {
    if (map[net] == kNoNet) map[net] = dst.add_net();
  }
  for (const Gate& gate : unit.gates()) {
    dst.add_gate_driving(map[gate.out], gate.kind,
                         gate.in0 == kNoNet ? kNoNet : map[gate.in0],
                         gate.in1 == kNoNet ? kNoNet : map[gate.in1]);
    const std::string& tag = unit.region(gate.out);
    dst.set_region(map[gate.out], tag.empty() ? region_prefix : region_prefix + "." + tag);
  }
  return map;
}

void require_valid(const Netlist& nl, const char* what) {
  Diagnostics diag = validate(nl);
  if (!diag.ok) {
    throw std::logic_error(std::string(what) + ": generated netlist invalid: " + diag.message);
  }
}

}  // namespace

std::string_view scheme_name(Scheme scheme) { return kSchemeNames[static_cast<int>(scheme)]; }

std::optional<Scheme> scheme_from_name(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kSchemeNames[i] == name) return static_cast<Scheme>(i);
  }
  return std::nullopt;
}

Netlist build_cla(int width) {
  AdderSpec spec{width, 0, LowPartStrategy::OrBits};
  spec.check();
  Netlist nl;
  auto a = nl.add_input_port("A", width);
  auto b = nl.add_input_port("B", width);
  auto sum = emit_cla(nl, a, b, kNoNet, "cla");
  nl.add_output_port("SUM", std::move(sum));
  require_valid(nl, "build_cla");
  return nl;
}

Netlist build_imprecise_adder(const AdderSpec& spec) {
  spec.check();
  if (spec.is_exact()) {
    throw std::invalid_argument("build_imprecise_adder: approx_width must be > 0 (use build_cla)");
  }
  const int n = spec.width;
  const int l = spec.approx_width;
  Netlist nl;
  auto a = nl.add_input_port("A", n);
  auto b = nl.add_input_port("B", n);

  std::vector<NetId> sum(static_cast<std::size_t>(n) + 1);
  const int or_from = spec.strategy == LowPartStrategy::OrBits ? l - 4 : l;
  for (int i = 0; i < or_from; ++i) {
    sum[i] = nl.add_gate(GateKind::Tie1);
    nl.set_region(sum[i], "ls");
  }
  for (int i = or_from; i < l; ++i) {
    sum[i] = nl.add_gate(GateKind::Or, a[i], b[i]);
    nl.set_region(sum[i], "ls");
  }
  NetId transfer = nl.add_gate(GateKind::And, a[l - 1], b[l - 1]);
  nl.set_region(transfer, "ls");

  auto upper = emit_cla(nl, std::span<const NetId>(a).subspan(l),
                        std::span<const NetId>(b).subspan(l), transfer, "sig");
  for (int i = l; i <= n; ++i) sum[i] = upper[i - l];

  nl.add_output_port("SUM", std::move(sum));
  require_valid(nl, "build_imprecise_adder");
  return nl;
}

Netlist build_voter(int replicas, int width) {
  if (replicas < 3 || replicas % 2 == 0) {
    throw std::invalid_argument("build_voter: replicas must be odd and >= 3");
  }
  if (width < 1 || width > 64) throw std::invalid_argument("build_voter: width must be 1..64");
  Netlist nl;
  std::vector<std::vector<NetId>> reps;
  reps.reserve(replicas);
  for (int k = 0; k < replicas; ++k) {
    reps.push_back(nl.add_input_port("I" + std::to_string(k), width));
  }
  nl.add_output_port("OUT", emit_majority(nl, reps, "voter"));
  require_valid(nl, "build_voter");
  return nl;
}

std::vector<std::string> RedundantCircuit::default_fault_scope() const {
  std::vector<std::string> scope;
  for (const auto& rep : replica_regions) {
    scope.insert(scope.end(), rep.begin(), rep.end());
  }
  scope.insert(scope.end(), shared_regions.begin(), shared_regions.end());
  return scope;
}

int RedundantCircuit::replica_of_region(std::string_view region) const {
  for (std::size_t k = 0; k < replica_regions.size(); ++k) {
    for (const auto& label : replica_regions[k]) {
      if (label == region) return static_cast<int>(k);
    }
  }
  return -1;
}

RedundantCircuit build_single(const AdderSpec& spec) {
  spec.check();
  RedundantCircuit rc;
  rc.netlist = spec.is_exact() ? build_cla(spec.width) : build_imprecise_adder(spec);
  rc.scheme = Scheme::Single;
  rc.unit = spec;
  rc.replica_regions = {rc.netlist.region_labels()};
  rc.replica_outputs = {rc.netlist.find_output("SUM")->bits};
  rc.sum_bits = rc.replica_outputs[0];
  return rc;
}

RedundantCircuit build_tmr(const Netlist& unit, int v2_width) {
  Diagnostics diag = validate(unit);
  if (!diag.ok) throw std::invalid_argument("build_tmr: unit netlist invalid: " + diag.message);
  if (unit.input_ports().empty() || unit.output_ports().empty()) {
    throw std::invalid_argument("build_tmr: unit needs input and output ports");
  }

  RedundantCircuit rc;
  rc.scheme = Scheme::Tmr;
  rc.unit = AdderSpec{0, 0, LowPartStrategy::OrBits};  // width 0: unit is not an adder spec
  Netlist& nl = rc.netlist;

  std::vector<std::vector<NetId>> shared_inputs;
  for (const auto& port : unit.input_ports()) {
    shared_inputs.push_back(nl.add_input_port(port.name, static_cast<int>(port.bits.size())));
  }

  const std::vector<std::string> unit_labels = unit.region_labels();
  for (int k = 0; k < 3; ++k) {
    const std::string prefix = "u" + std::to_string(k);
    auto map = append_unit(nl, unit, shared_inputs, prefix);

    std::vector<NetId> out_bits;
    for (const auto& port : unit.output_ports()) {
      for (NetId bit : port.bits) out_bits.push_back(map[bit]);
    }
    rc.replica_outputs.push_back(std::move(out_bits));

    std::vector<std::string> labels;
    if (unit_labels.empty()) {
      labels.push_back(prefix);
    } else {
      for (const auto& l : unit_labels) labels.push_back(prefix + "." + l);
    }
    rc.replica_regions.push_back(std::move(labels));
  }

  rc.sum_bits = emit_majority(nl, rc.replica_outputs, "voter");
  rc.voter_regions = {"voter"};

  const int total = static_cast<int>(rc.sum_bits.size());
  if (v2_width < 0) v2_width = (total - 1) / 2;
  if (v2_width >= total) {
    throw std::invalid_argument("build_tmr: v2 split must leave at least one bit for V1");
  }
  if (v2_width > 0) {
    nl.add_output_port("V2", {rc.sum_bits.begin(), rc.sum_bits.begin() + v2_width});
  }
  nl.add_output_port("V1", {rc.sum_bits.begin() + v2_width, rc.sum_bits.end()});

  require_valid(nl, "build_tmr");
  return rc;
}

RedundantCircuit build_tmr_adder(const AdderSpec& spec, int v2_width) {
  spec.check();
  Netlist unit = spec.is_exact() ? build_cla(spec.width) : build_imprecise_adder(spec);
  RedundantCircuit rc = build_tmr(unit, v2_width < 0 ? spec.width / 2 : v2_width);
  rc.unit = spec;
  return rc;
}

RedundantCircuit build_fac(const AdderSpec& spec) {
  spec.check();
  if (spec.is_exact()) {
    throw std::invalid_argument("build_fac: needs an approximate low part (approx_width > 0)");
  }
  RedundantCircuit rc = build_tmr(build_imprecise_adder(spec), spec.approx_width);
  rc.netlist.rename_output_port("V2", "V2*");
  rc.scheme = Scheme::Fac;
  rc.unit = spec;
  return rc;
}

RedundantCircuit build_mvrpr(int width) {
  if (width < 4 || width % 2 != 0) {
    throw std::invalid_argument("build_mvrpr: width must be even and >= 4");
  }
  if (width > 62) throw std::invalid_argument("build_mvrpr: width must be <= 62");
  const int half = width / 2;

  RedundantCircuit rc;
  rc.scheme = Scheme::Mvrpr;
  rc.unit = AdderSpec{width, 0, LowPartStrategy::OrBits};
  Netlist& nl = rc.netlist;

  auto a = nl.add_input_port("A", width);
  auto b = nl.add_input_port("B", width);
  std::span<const NetId> a_lo(a.data(), half), a_hi(a.data() + half, half);
  std::span<const NetId> b_lo(b.data(), half), b_hi(b.data() + half, half);

  auto low = emit_cla(nl, a_lo, b_lo, kNoNet, "ls");
  NetId low_carry = low.back();
  low.pop_back();

  for (int k = 0; k < 3; ++k) {
    const std::string region = "u" + std::to_string(k) + ".sig";
    rc.replica_outputs.push_back(emit_cla(nl, a_hi, b_hi, low_carry, region));
    rc.replica_regions.push_back({region});
  }
  auto voted = emit_majority(nl, rc.replica_outputs, "voter");

  rc.sum_bits = low;
  rc.sum_bits.insert(rc.sum_bits.end(), voted.begin(), voted.end());
  rc.shared_regions = {"ls"};
  rc.voter_regions = {"voter"};

  nl.add_output_port("V2", std::move(low));
  nl.add_output_port("V1", std::move(voted));
  require_valid(nl, "build_mvrpr");
  return rc;
}

RedundantCircuit build_scheme(Scheme scheme, const AdderSpec& spec) {
  switch (scheme) {
    case Scheme::Single:
      return build_single(spec);
    case Scheme::Tmr:
      return build_tmr_adder(spec);
    case Scheme::Fac:
      return build_fac(spec);
    case Scheme::Mvrpr:
      if (!spec.is_exact()) {
        throw std::invalid_argument("build_scheme: mvrpr takes no approximate part");
      }
      return build_mvrpr(spec.width);
  }
  throw std::invalid_argument("build_scheme: unknown scheme");
}

}  // namespace redsim

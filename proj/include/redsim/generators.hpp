#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redsim/netlist.hpp"
#include "redsim/word_model.hpp"

namespace redsim {

/// Redundancy architecture of a generated adder circuit.
enum class Scheme : std::uint8_t { Single, Tmr, Fac, Mvrpr };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> scheme_from_name(std::string_view name);

/// Carry-lookahead adder: inputs A, B (width bits), output SUM (width+1
/// bits). Four-bit lookahead groups with rippled inter-group carries; every
/// gate output is tagged with region "cla".
Netlist build_cla(int width);

/// Reduced-logic adder: inputs A, B (spec.width bits), output SUM. The low
/// spec.approx_width bits come from the low-part strategy (tagged "ls",
/// including the transfer AND of the two bit-(L-1) inputs); the remaining
/// bits come from an accurate lookahead adder with that transfer as carry-in
/// (tagged "sig").
Netlist build_imprecise_adder(const AdderSpec& spec);

/// Bitwise majority: inputs I0..I{replicas-1} (width bits each), output OUT
/// (width bits); each output bit is 1 iff at least (replicas+1)/2 replica
/// bits are 1. For three replicas each bit is three 2-input ANDs feeding a
/// binary OR tree. Gates tagged "voter".
Netlist build_voter(int replicas, int width);

/// A generated adder circuit together with its redundancy bookkeeping:
/// which regions belong to which replica, which nets feed the voters, and
/// the final sum bits in LSB-first order.
struct RedundantCircuit {
  Netlist netlist;
  Scheme scheme = Scheme::Single;
  AdderSpec unit;

  /// Region labels per replica (one inner list per replica).
  std::vector<std::vector<std::string>> replica_regions;
  /// Regions outside any replica (e.g. the unprotected low slice).
  std::vector<std::string> shared_regions;
  std::vector<std::string> voter_regions;

  /// Pre-voter sum nets of each replica, LSB first.
  std::vector<std::vector<NetId>> replica_outputs;
  /// Final sum nets (voted where the scheme votes), LSB first.
  std::vector<NetId> sum_bits;

  int replica_count() const { return static_cast<int>(replica_regions.size()); }
  /// Replica and shared regions; never voter regions.
  std::vector<std::string> default_fault_scope() const;
  /// Index of the replica owning `region`, or -1 for shared/voter regions.
  int replica_of_region(std::string_view region) const;
};

/// Unreplicated baseline: the plain adder for `spec` (accurate when
/// spec.approx_width is 0), output port SUM, one replica, no voters.
RedundantCircuit build_single(const AdderSpec& spec);

/// Triplicates an arbitrary single-output-stage unit netlist: input ports
/// are shared, all unit gates are copied three times (regions prefixed
/// "u0."/"u1."/"u2.", or plain "u{k}" when the unit is untagged), and every
/// output bit is majority-voted. The voted bits, flattened in the unit's
/// output-port order, are split into ports V2 (low `v2_width` bits) and V1
/// (the rest); v2_width < 0 selects (total_bits - 1) / 2, and 0 drops V2.
RedundantCircuit build_tmr(const Netlist& unit, int v2_width = -1);

/// build_tmr over the adder for `spec`, with the unit spec recorded.
/// The default split puts the low half of the operand width in V2.
RedundantCircuit build_tmr_adder(const AdderSpec& spec, int v2_width = -1);

/// Triplicated reduced-logic adder with both parts voted: each replica is a
/// full build_imprecise_adder copy (its transfer link internal to the
/// replica), constant-1 bits included in the vote. Voted low-part bits form
/// port "V2*", voted upper bits form "V1".
RedundantCircuit build_fac(const AdderSpec& spec);

/// Reduced-protection adder: the low width/2 bits are one unprotected
/// accurate slice (region "ls", output port V2, unvoted) whose carry feeds
/// three accurate upper slices ("u0.sig".."u2.sig"); the voted upper
/// width/2+1 bits form port V1. Width must be even and >= 4.
RedundantCircuit build_mvrpr(int width);

/// Dispatch by scheme: Single/Tmr/Fac build from `spec`; Mvrpr uses
/// spec.width (spec.approx_width must be 0 for Mvrpr).
RedundantCircuit build_scheme(Scheme scheme, const AdderSpec& spec);

}  // namespace redsim

#include "redsim/netlist_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace redsim {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("netlist text, line " + std::to_string(line) + ": " + what);
}

NetId parse_net(const std::string& tok, int line) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &pos);
  } catch (const std::exception&) {
    fail(line, "expected a net id, got '" + tok + "'");
  }
  if (pos != tok.size() || v >= kNoNet) fail(line, "expected a net id, got '" + tok + "'");
  return static_cast<NetId>(v);
}

}  // namespace

void write_netlist(std::ostream& os, const Netlist& nl) {
  os << "nets " << nl.net_count() << "\n";
  for (const auto& p : nl.input_ports()) {
    os << "input " << p.name;
    for (NetId b : p.bits) os << ' ' << b;
    os << "\n";
  }
  for (const auto& p : nl.output_ports()) {
    os << "output " << p.name;
    for (NetId b : p.bits) os << ' ' << b;
    os << "\n";
  }
  for (const auto& label : nl.region_labels()) {
    os << "region " << label;
    for (NetId b : nl.nets_in_region(label)) os << ' ' << b;
    os << "\n";
  }
  for (const auto& g : nl.gates()) {
    os << gate_name(g.kind) << ' ' << g.out;
    if (g.in0 != kNoNet) os << ' ' << g.in0;
    if (g.in1 != kNoNet) os << ' ' << g.in1;
    os << "\n";
  }
  os << "end\n";
}

std::string write_netlist(const Netlist& nl) {
  std::ostringstream os;
  write_netlist(os, nl);
  return os.str();
}

Netlist read_netlist(std::istream& is) {
  Netlist nl;
  bool saw_nets = false;
  bool saw_end = false;
  bool in_gates = false;
  NetId declared = 0;
  int line_no = 0;
  std::string line;

  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;

    std::vector<std::string> rest;
    for (std::string tok; ls >> tok;) rest.push_back(tok);

    if (head == "end") {
      if (!rest.empty()) fail(line_no, "'end' takes no arguments");
      saw_end = true;
      break;
    }
    if (head == "nets") {
      if (saw_nets) fail(line_no, "duplicate 'nets' line");
      if (in_gates) fail(line_no, "'nets' must precede gate lines");
      if (rest.size() != 1) fail(line_no, "'nets' takes exactly one count");
      declared = parse_net(rest[0], line_no);
      nl.add_nets(static_cast<int>(declared));
      saw_nets = true;
      continue;
    }
    if (!saw_nets) fail(line_no, "'nets' line must come first");

    if (head == "input" || head == "output" || head == "region") {
      if (in_gates) fail(line_no, "'" + head + "' must precede gate lines");
      if (rest.size() < 2) fail(line_no, "'" + head + "' needs a name and at least one net");
      std::vector<NetId> bits;
      for (std::size_t i = 1; i < rest.size(); ++i) {
        NetId b = parse_net(rest[i], line_no);
        if (b >= declared) fail(line_no, "net " + rest[i] + " exceeds declared count");
        bits.push_back(b);
      }
      if (head == "input") {
        nl.add_input_port(rest[0], std::move(bits));
      } else if (head == "output") {
        nl.add_output_port(rest[0], std::move(bits));
      } else {
        for (NetId b : bits) nl.set_region(b, rest[0]);
      }
      continue;
    }

    auto kind = gate_from_name(head);
    if (!kind) fail(line_no, "unknown gate kind '" + head + "'");
    in_gates = true;
    int arity = gate_arity(*kind);
    if (static_cast<int>(rest.size()) != arity + 1) {
      fail(line_no, std::string(gate_name(*kind)) + " takes " + std::to_string(arity) +
                        " input(s) plus an output net");
    }
    NetId nets[3] = {kNoNet, kNoNet, kNoNet};
    for (std::size_t i = 0; i < rest.size(); ++i) {
      nets[i] = parse_net(rest[i], line_no);
      if (nets[i] >= declared) fail(line_no, "net " + rest[i] + " exceeds declared count");
    }
    nl.add_gate_driving(nets[0], *kind, nets[1], nets[2]);
  }

  if (!saw_end) fail(line_no, "missing 'end' line (truncated file?)");
  Diagnostics diag = validate(nl);
  if (!diag.ok) throw std::runtime_error("netlist text: parsed netlist is invalid: " + diag.message);
  return nl;
}

Netlist read_netlist_string(const std::string& text) {
  std::istringstream is(text);
  return read_netlist(is);
}

Netlist load_netlist_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open netlist file: " + path);
  return read_netlist(f);
}

void save_netlist_file(const std::string& path, const Netlist& nl) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write netlist file: " + path);
  write_netlist(f, nl);
  if (!f.good()) throw std::runtime_error("write failed for netlist file: " + path);
}

}  // namespace redsim

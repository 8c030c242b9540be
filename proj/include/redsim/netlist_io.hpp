#pragma once

#include <iosfwd>
#include <string>

#include "redsim/netlist.hpp"

namespace redsim {

/// Plain-text netlist exchange format.
///
///   # comment
///   nets 12
///   input A 0 1 2 3
///   input B 4 5 6 7
///   output SUM 8 9 10 11
///   region core 8 9 10 11
///   AND 8 0 4
///   TIE1 9
///   ...
///   end
///
/// Header lines (`nets`, `input`, `output`, `region`) precede gate lines;
/// a gate line is `KIND out [in1 [in2]]`; bit lists are LSB first. The
/// final `end` line is required, so truncated files are detected.
std::string write_netlist(const Netlist& netlist);
void write_netlist(std::ostream& os, const Netlist& netlist);

/// Parses the format above. Throws std::runtime_error with a line number on
/// malformed input; the returned netlist is validate()-clean.
Netlist read_netlist(std::istream& is);
Netlist read_netlist_string(const std::string& text);

Netlist load_netlist_file(const std::string& path);
void save_netlist_file(const std::string& path, const Netlist& netlist);

}  // namespace redsim

// redsim: redundant-adder circuit generation, fault-injection campaigns,
// fixed-point FFT image processing, and proxy cost reports.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "redsim/cost.hpp"
#include "redsim/faults.hpp"
#include "redsim/fft.hpp"
#include "redsim/generators.hpp"
#include "redsim/image.hpp"
#include "redsim/metrics.hpp"
#include "redsim/netlist_io.hpp"
#include "redsim/word_model.hpp"

namespace {

using nlohmann::ordered_json;
using namespace redsim;

/// Raised by --assert-* style checks; turns into exit code 1.
struct AssertionFailed {
  std::string message;
};

/// Raised for config errors detected after CLI11 parsing; exit code 2.
struct UsageError {
  std::string message;
};

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    os << content;
    if (!os) throw std::runtime_error("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

AdderSpec make_spec(int n, int l, const std::string& strategy) {
  AdderSpec spec;
  spec.width = n;
  spec.approx_width = l;
  if (strategy == "or") {
    spec.strategy = LowPartStrategy::OrBits;
  } else if (strategy == "ones") {
    spec.strategy = LowPartStrategy::ConstantOnes;
  } else {
    throw UsageError{"unknown low-part strategy '" + strategy + "' (expected or|ones)"};
  }
  spec.check();
  return spec;
}

InputSpec make_input_spec(const std::string& inputs, bool seed_given, std::uint64_t seed) {
  if (inputs == "exhaustive") return InputSpec::exhaustive();
  const std::string prefix = "sample:";
  if (inputs.rfind(prefix, 0) == 0) {
    std::uint64_t n = 0;
    try {
      n = std::stoull(inputs.substr(prefix.size()));
    } catch (const std::exception&) {
      throw UsageError{"bad sample count in '--inputs " + inputs + "'"};
    }
    if (n == 0) throw UsageError{"sample count must be positive"};
    if (!seed_given) throw UsageError{"--seed is required for sampled inputs"};
    return InputSpec::sampled(n, seed);
  }
  throw UsageError{"--inputs must be 'exhaustive' or 'sample:<count>'"};
}

double regions_gate_count(const Netlist& netlist, const std::vector<std::string>& regions,
                          const GateWeights& weights) {
  std::unordered_set<std::string> wanted(regions.begin(), regions.end());
  double total = 0.0;
  for (const auto& gate : netlist.gates()) {
    if (wanted.count(netlist.region(gate.out)) != 0) total += weights[gate.kind];
  }
  return total;
}

std::string port_summary(const std::vector<Port>& ports) {
  std::string out;
  for (const auto& port : ports) {
    if (!out.empty()) out += ' ';
    out += port.name + "[" + std::to_string(port.bits.size()) + "]";
  }
  return out;
}

ordered_json psnr_json(const QualityReport& q) {
  if (q.psnr_infinite) return ordered_json("inf");
  return ordered_json(q.psnr_db);
}

std::string psnr_text(const QualityReport& q) {
  return q.psnr_infinite ? std::string("inf") : format_fixed(q.psnr_db);
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string scheme;
  int n = 32;
  int l = 0;
  std::string strategy = "or";
  int replicas = 3;
  std::string out;
};

void run_gen(const GenOptions& opt) {
  const GateWeights weights = GateWeights::defaults();
  std::vector<std::string> stats;
  Netlist netlist;

  auto push = [&stats](const std::string& key, const std::string& value) {
    stats.push_back(key + " " + value);
  };

  if (opt.scheme == "cla") {
    netlist = build_cla(opt.n);
    push("kind", "cla");
  } else if (opt.scheme == "imprecise") {
    netlist = build_imprecise_adder(make_spec(opt.n, opt.l, opt.strategy));
    push("kind", "imprecise");
  } else if (opt.scheme == "voter") {
    netlist = build_voter(opt.replicas, opt.n);
    push("kind", "voter");
    push("replicas", std::to_string(opt.replicas));
  } else {
    auto scheme = scheme_from_name(opt.scheme);
    if (!scheme) {
      throw UsageError{"unknown scheme '" + opt.scheme +
                       "' (expected single|tmr|fac|mvrpr|cla|imprecise|voter)"};
    }
    RedundantCircuit circuit = build_scheme(*scheme, make_spec(opt.n, opt.l, opt.strategy));
    netlist = std::move(circuit.netlist);
    push("kind", std::string(scheme_name(*scheme)));
    if (!circuit.replica_regions.empty()) {
      push("replica_gates",
           format_fixed(regions_gate_count(netlist, circuit.replica_regions[0], weights)));
    }
    if (!circuit.voter_regions.empty()) {
      push("voter_gates",
           format_fixed(regions_gate_count(netlist, circuit.voter_regions, weights)));
    }
    if (!circuit.shared_regions.empty()) {
      push("shared_gates",
           format_fixed(regions_gate_count(netlist, circuit.shared_regions, weights)));
    }
  }

  push("width", std::to_string(opt.n));
  if (opt.l > 0) push("approx_width", std::to_string(opt.l));
  push("nets", std::to_string(netlist.net_count()));
  push("gates", format_fixed(gate_count(netlist, weights)));
  push("depth", std::to_string(depth(netlist)));
  push("inputs", port_summary(netlist.input_ports()));
  push("outputs", port_summary(netlist.output_ports()));

  for (const auto& line : stats) std::cout << line << "\n";

  if (!opt.out.empty()) {
    std::string text;
    for (const auto& line : stats) text += "# " + line + "\n";
    text += write_netlist(netlist);
    atomic_write(opt.out, text);
    std::cout << "wrote " << opt.out << "\n";
  }
}

// ---------------------------------------------------------------------------
// faultcamp

struct FaultcampOptions {
  std::string scheme;
  int n = 8;
  int l = 0;
  std::string strategy = "or";
  std::vector<std::string> scope;
  bool include_voter = false;
  std::string fault_kind = "stuck";
  std::string inputs = "exhaustive";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 1;
  int faulty_unit = -1;
  std::string json_path;
  std::string csv_path;
  bool assert_masked = false;
  bool assert_propagated = false;
};

RedundantCircuit build_campaign_circuit(const std::string& scheme_str, int n, int l,
                                        const std::string& strategy) {
  auto scheme = scheme_from_name(scheme_str);
  if (!scheme) {
    throw UsageError{"unknown scheme '" + scheme_str + "' (expected single|tmr|fac|mvrpr)"};
  }
  AdderSpec spec = make_spec(n, l, strategy);
  return build_scheme(*scheme, spec);
}

void run_faultcamp(const FaultcampOptions& opt) {
  RedundantCircuit circuit = build_campaign_circuit(opt.scheme, opt.n, opt.l, opt.strategy);
  const InputSpec inputs = make_input_spec(opt.inputs, opt.seed_given, opt.seed);

  if (opt.faulty_unit >= 0) {
    if (opt.faulty_unit >= circuit.replica_count()) {
      throw UsageError{"--faulty-unit out of range (circuit has " +
                       std::to_string(circuit.replica_count()) + " replicas)"};
    }
    const UnitTestResult result = faulty_unit_test(circuit, opt.faulty_unit, inputs);
    const bool masked = result == UnitTestResult::Masked;
    std::cout << "scheme " << scheme_name(circuit.scheme) << " faulty_unit "
              << opt.faulty_unit << " inputs " << inputs.describe() << "\n"
              << "replica_corruption " << (masked ? "masked" : "exposed") << "\n";
    if (!opt.json_path.empty()) {
      ordered_json j;
      j["scheme"] = std::string(scheme_name(circuit.scheme));
      j["mode"] = "faulty_unit";
      j["replica"] = opt.faulty_unit;
      j["inputs"] = inputs.describe();
      j["masked"] = masked;
      atomic_write(opt.json_path, j.dump(2) + "\n");
    }
    if (opt.assert_masked && !masked) {
      throw AssertionFailed{"replica corruption propagated to the outputs"};
    }
    if (opt.assert_propagated && masked) {
      throw AssertionFailed{"replica corruption was masked"};
    }
    return;
  }

  std::vector<std::string> scope = opt.scope.empty() ? circuit.default_fault_scope() : opt.scope;
  if (opt.include_voter) {
    scope.insert(scope.end(), circuit.voter_regions.begin(), circuit.voter_regions.end());
  }

  std::vector<Fault> faults;
  if (opt.fault_kind == "stuck") {
    faults = enumerate_faults(circuit, scope);
  } else if (opt.fault_kind == "flip") {
    faults = enumerate_flip_faults(circuit, scope);
  } else {
    throw UsageError{"--fault-kind must be 'stuck' or 'flip'"};
  }

  const FaultCampaignReport report = run_campaign(circuit, faults, inputs, opt.jobs);

  std::cout << "scheme " << scheme_name(report.scheme) << " inputs " << report.input_mode
            << " scope";
  for (const auto& label : report.scope) std::cout << ' ' << label;
  std::cout << "\nfaults " << report.faults_total << " masked " << report.faults_masked
            << " propagated " << report.faults_propagated << " worst_error "
            << report.worst_error << "\n";

  if (!opt.json_path.empty()) {
    ordered_json j;
    j["scheme"] = std::string(scheme_name(report.scheme));
    j["fault_kind"] = opt.fault_kind;
    j["scope"] = report.scope;
    j["inputs"] = report.input_mode;
    j["inputs_tested"] = report.inputs_tested;
    j["faults_total"] = report.faults_total;
    j["faults_masked"] = report.faults_masked;
    j["faults_propagated"] = report.faults_propagated;
    j["worst_error"] = report.worst_error;
    atomic_write(opt.json_path, j.dump(2) + "\n");
  }
  if (!opt.csv_path.empty()) {
    std::ostringstream csv;
    csv << "net,kind,region,masked,worst_error\n";
    for (const auto& outcome : report.outcomes) {
      csv << outcome.fault.net << ',' << fault_kind_name(outcome.fault.kind) << ','
          << outcome.fault.region << ',' << (outcome.masked ? 1 : 0) << ','
          << outcome.worst_error << '\n';
    }
    atomic_write(opt.csv_path, csv.str());
  }

  if (opt.assert_masked && report.faults_propagated != 0) {
    throw AssertionFailed{std::to_string(report.faults_propagated) +
                          " fault(s) propagated to the outputs"};
  }
  if (opt.assert_propagated && report.faults_propagated == 0) {
    throw AssertionFailed{"no fault propagated to the outputs"};
  }
}

// ---------------------------------------------------------------------------
// image-run

struct ImageRunOptions {
  std::string adder;
  int n = 32;
  int l = 10;
  std::string strategy = "or";
  std::string in_path;
  std::string out_path;
  std::string report_path;
  bool assert_quality = false;
  double min_psnr = 30.0;
  double min_ssim = 0.9;
};

AdderModel make_adder_model(const std::string& adder, int n, int l, const std::string& strategy) {
  if (adder == "exact") return AdderModel::exact();
  if (adder == "imprecise") {
    if (n != 32) throw UsageError{"the image pipeline uses 32-bit samples; --N must be 32"};
    return AdderModel::imprecise(make_spec(n, l, strategy));
  }
  throw UsageError{"--adder must be 'exact' or 'imprecise'"};
}

void run_image_run(const ImageRunOptions& opt) {
  AdderModel adder = make_adder_model(opt.adder, opt.n, opt.l, opt.strategy);
  const FixedPointImage input = read_pgm(opt.in_path);
  ProcessStats stats;
  const FixedPointImage output = process_image(input, adder, &stats);
  const QualityReport quality = quality_report(input, output);

  std::cout << "adder " << (adder.is_exact() ? "exact[32]" : adder.spec().describe())
            << " size " << input.width << "x" << input.height << "\n"
            << "psnr " << psnr_text(quality) << " ssim " << format_fixed(quality.ssim)
            << " mse " << format_fixed(quality.mse) << "\n"
            << "additions " << stats.additions << " overflow_adds " << stats.overflow_adds
            << " clamped_pixels " << stats.clamped_pixels << "\n";

  if (!opt.out_path.empty()) {
    write_pgm(opt.out_path, output);
    std::cout << "wrote " << opt.out_path << "\n";
  }
  if (!opt.report_path.empty()) {
    ordered_json j;
    j["adder"] = adder.is_exact() ? std::string("exact[32]") : adder.spec().describe();
    j["width"] = input.width;
    j["height"] = input.height;
    j["psnr"] = psnr_json(quality);
    j["ssim"] = quality.ssim;
    j["mse"] = quality.mse;
    j["additions"] = stats.additions;
    j["overflow_adds"] = stats.overflow_adds;
    j["clamped_pixels"] = stats.clamped_pixels;
    atomic_write(opt.report_path, j.dump(2) + "\n");
    std::cout << "wrote " << opt.report_path << "\n";
  }

  if (opt.assert_quality) {
    if (!quality.psnr_infinite && quality.psnr_db <= opt.min_psnr) {
      throw AssertionFailed{"psnr " + format_fixed(quality.psnr_db) + " <= " +
                            format_fixed(opt.min_psnr)};
    }
    if (quality.ssim < opt.min_ssim) {
      throw AssertionFailed{"ssim " + format_fixed(quality.ssim) + " < " +
                            format_fixed(opt.min_ssim)};
    }
  }
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string l_range;
  std::string in_path;
  int n = 32;
  std::string strategy = "or";
  std::string out_path;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) throw UsageError{"--L range must look like 6..16"};
  int lo = 0;
  int hi = 0;
  try {
    lo = std::stoi(text.substr(0, sep));
    hi = std::stoi(text.substr(sep + 2));
  } catch (const std::exception&) {
    throw UsageError{"--L range must look like 6..16"};
  }
  if (lo > hi) throw UsageError{"--L range is empty (" + text + ")"};
  return {lo, hi};
}

void run_sweep(const SweepOptions& opt) {
  const auto [lo, hi] = parse_range(opt.l_range);
  const FixedPointImage input =
      opt.in_path.empty() ? synth_gradient(256) : read_pgm(opt.in_path);

  std::ostringstream csv;
  csv << "L,psnr_db,ssim\n";
  for (int l = lo; l <= hi; ++l) {
    AdderModel adder = AdderModel::imprecise(make_spec(opt.n, l, opt.strategy));
    const FixedPointImage output = process_image(input, adder);
    const QualityReport quality = quality_report(input, output);
    csv << l << ',' << psnr_text(quality) << ',' << format_fixed(quality.ssim) << '\n';
  }

  if (opt.out_path.empty()) {
    std::cout << csv.str();
  } else {
    atomic_write(opt.out_path, csv.str());
    std::cout << "wrote " << opt.out_path << " (" << (hi - lo + 1) << " rows)\n";
  }
}

// ---------------------------------------------------------------------------
// cost-report

struct CostOptions {
  std::string schemes = "single,tmr,fac";
  int n = 32;
  int l = 10;
  std::string baseline = "tmr";
  std::string csv_path;
  std::string json_path;
};

void run_cost_report(const CostOptions& opt) {
  std::vector<RedundantCircuit> circuits;
  std::stringstream list(opt.schemes);
  std::string token;
  while (std::getline(list, token, ',')) {
    if (token.empty()) continue;
    auto scheme = scheme_from_name(token);
    if (!scheme) throw UsageError{"unknown scheme '" + token + "' in --schemes"};
    const int l = (*scheme == Scheme::Fac) ? opt.l : 0;
    circuits.push_back(build_scheme(*scheme, make_spec(opt.n, l, "or")));
  }
  if (circuits.empty()) throw UsageError{"--schemes selected no circuits"};

  CostReport report;
  try {
    report = cost_report(circuits, opt.baseline);
  } catch (const std::invalid_argument& e) {
    throw UsageError{e.what()};
  }
  const std::string csv = cost_report_csv(report);
  std::cout << csv;

  if (!opt.csv_path.empty()) atomic_write(opt.csv_path, csv);
  if (!opt.json_path.empty()) {
    ordered_json j;
    j["baseline"] = report.baseline;
    j["entries"] = ordered_json::array();
    for (const auto& entry : report.entries) {
      ordered_json e;
      e["scheme"] = entry.scheme;
      e["gates"] = entry.gates;
      e["depth"] = entry.depth;
      e["gate_ratio"] = entry.gate_ratio;
      e["depth_ratio"] = entry.depth_ratio;
      j["entries"].push_back(e);
    }
    atomic_write(opt.json_path, j.dump(2) + "\n");
  }
}

// ---------------------------------------------------------------------------
// gen-image

struct GenImageOptions {
  std::string kind = "all";
  int size = 512;
  std::uint64_t seed = 7;
  int cell = 16;
  std::string out;
  std::string out_dir = ".";
};

void run_gen_image(const GenImageOptions& opt) {
  if (opt.kind == "all") {
    for (const auto& entry : synthetic_corpus(opt.size)) {
      const std::string path =
          (std::filesystem::path(opt.out_dir) / (entry.name + ".pgm")).string();
      write_pgm(path, entry.image);
      std::cout << "wrote " << path << "\n";
    }
    return;
  }

  FixedPointImage image;
  if (opt.kind == "gradient") {
    image = synth_gradient(opt.size);
  } else if (opt.kind == "checker") {
    image = synth_checker(opt.size, opt.cell);
  } else if (opt.kind == "sines") {
    image = synth_sines(opt.size, opt.seed);
  } else if (opt.kind == "noise") {
    image = synth_value_noise(opt.size, opt.seed);
  } else {
    throw UsageError{"--kind must be gradient|checker|sines|noise|all"};
  }
  if (opt.out.empty()) throw UsageError{"--out is required for a single image kind"};
  write_pgm(opt.out, image);
  std::cout << "wrote " << opt.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redundant-adder simulator: circuit generation, fault campaigns, "
               "fixed-point FFT image runs, and cost reports"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate an adder circuit netlist");
  gen->add_option("--scheme", gen_opt.scheme, "single|tmr|fac|mvrpr|cla|imprecise|voter")
      ->required();
  gen->add_option("--N", gen_opt.n, "operand width in bits");
  gen->add_option("--L", gen_opt.l, "reduced-logic low-part width (0 = accurate)");
  gen->add_option("--strategy", gen_opt.strategy, "low-part strategy: or|ones");
  gen->add_option("--replicas", gen_opt.replicas, "voter replica count");
  gen->add_option("--out", gen_opt.out, "netlist output file");

  FaultcampOptions fc_opt;
  auto* fc = app.add_subcommand("faultcamp", "Run a single-fault injection campaign");
  fc->add_option("--scheme", fc_opt.scheme, "single|tmr|fac|mvrpr")->required();
  fc->add_option("--N", fc_opt.n, "operand width in bits");
  fc->add_option("--L", fc_opt.l, "reduced-logic low-part width (0 = accurate)");
  fc->add_option("--strategy", fc_opt.strategy, "low-part strategy: or|ones");
  fc->add_option("--scope", fc_opt.scope,
                 "region labels to fault (default: every replica and shared region)");
  fc->add_flag("--include-voter", fc_opt.include_voter, "also fault voter nets");
  fc->add_option("--fault-kind", fc_opt.fault_kind, "stuck|flip");
  fc->add_option("--inputs", fc_opt.inputs, "exhaustive | sample:<count>");
  auto* seed_opt = fc->add_option("--seed", fc_opt.seed, "RNG seed for sampled inputs");
  fc->add_option("--jobs", fc_opt.jobs, "worker threads");
  fc->add_option("--faulty-unit", fc_opt.faulty_unit,
                 "corrupt every output of this replica instead of injecting net faults");
  fc->add_option("--json", fc_opt.json_path, "write summary JSON here");
  fc->add_option("--csv", fc_opt.csv_path, "write per-fault CSV here");
  fc->add_flag("--assert-masked", fc_opt.assert_masked, "exit 1 unless every fault is masked");
  fc->add_flag("--assert-propagated", fc_opt.assert_propagated,
               "exit 1 unless at least one fault propagates");

  ImageRunOptions ir_opt;
  auto* ir = app.add_subcommand("image-run", "FFT/IFFT round trip of a PGM image");
  ir->add_option("--adder", ir_opt.adder, "exact|imprecise")->required();
  ir->add_option("--N", ir_opt.n, "adder width (the pipeline is 32-bit)");
  ir->add_option("--L", ir_opt.l, "reduced-logic low-part width");
  ir->add_option("--strategy", ir_opt.strategy, "low-part strategy: or|ones");
  ir->add_option("--in", ir_opt.in_path, "input PGM (P5, 8-bit)")->required();
  ir->add_option("--out", ir_opt.out_path, "processed PGM output");
  ir->add_option("--report", ir_opt.report_path, "quality/stats JSON output");
  ir->add_flag("--assert-quality", ir_opt.assert_quality,
               "exit 1 unless psnr > --min-psnr and ssim >= --min-ssim");
  ir->add_option("--min-psnr", ir_opt.min_psnr, "quality gate in dB");
  ir->add_option("--min-ssim", ir_opt.min_ssim, "quality gate");

  SweepOptions sw_opt;
  auto* sw = app.add_subcommand("sweep", "Image quality across a range of L values");
  sw->add_option("--L", sw_opt.l_range, "inclusive range, e.g. 6..16")->required();
  sw->add_option("--in", sw_opt.in_path, "input PGM (default: built-in 256x256 gradient)");
  sw->add_option("--N", sw_opt.n, "adder width (the pipeline is 32-bit)");
  sw->add_option("--strategy", sw_opt.strategy, "low-part strategy: or|ones");
  sw->add_option("--out", sw_opt.out_path, "CSV output (default: stdout)");

  CostOptions co_opt;
  auto* co = app.add_subcommand("cost-report", "Gate-count and depth comparison");
  co->add_option("--schemes", co_opt.schemes, "comma list of single|tmr|fac|mvrpr");
  co->add_option("--N", co_opt.n, "operand width in bits");
  co->add_option("--L", co_opt.l, "reduced-logic low-part width for fac");
  co->add_option("--baseline", co_opt.baseline, "scheme the ratios normalize against");
  co->add_option("--csv", co_opt.csv_path, "write CSV here");
  co->add_option("--json", co_opt.json_path, "write JSON here");

  GenImageOptions gi_opt;
  auto* gi = app.add_subcommand("gen-image", "Write synthetic test images");
  gi->add_option("--kind", gi_opt.kind, "gradient|checker|sines|noise|all");
  gi->add_option("--size", gi_opt.size, "square image side (power of two)");
  gi->add_option("--seed", gi_opt.seed, "seed for sines/noise");
  gi->add_option("--cell", gi_opt.cell, "checker cell side");
  gi->add_option("--out", gi_opt.out, "output PGM (single kind)");
  gi->add_option("--out-dir", gi_opt.out_dir, "output directory for --kind all");

  try {
    app.parse(argc, argv);
    if (*gen) run_gen(gen_opt);
    if (*fc) {
      fc_opt.seed_given = seed_opt->count() > 0;
      run_faultcamp(fc_opt);
    }
    if (*ir) run_image_run(ir_opt);
    if (*sw) run_sweep(sw_opt);
    if (*co) run_cost_report(co_opt);
    if (*gi) run_gen_image(gi_opt);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const AssertionFailed& e) {
    std::cerr << "assertion failed: " << e.message << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

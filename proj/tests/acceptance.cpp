// Acceptance gate: twelve checks, one printed verdict line each, exit 0 only
// if every check passes. Usage: acceptance <cli-binary> <scratch-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "redsim/cost.hpp"
#include "redsim/faults.hpp"
#include "redsim/fft.hpp"
#include "redsim/generators.hpp"
#include "redsim/image.hpp"
#include "redsim/metrics.hpp"
#include "redsim/word_model.hpp"

using namespace redsim;

namespace {

int g_failures = 0;
std::string g_cli;
std::string g_scratch;

void verdict(int criterion, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
  if (!ok) g_failures += 1;
}

int run_cmd(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status < 0 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return "<unreadable:" + path + ">";
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// --- criterion 1: FAC masks every single stuck-at fault ---------------------
void criterion_1() {
  RedundantCircuit fac = build_fac(AdderSpec{8, 5});
  const auto faults = enumerate_faults(fac, fac.default_fault_scope());
  const auto report = run_campaign(fac, faults, InputSpec::exhaustive(), 4);
  const bool ok = report.faults_propagated == 0 && report.faults_total == faults.size() &&
                  report.inputs_tested == 65536 && !faults.empty();
  std::ostringstream what;
  what << "FAC 8/5 exhaustive single-fault campaign: " << report.faults_total
       << " faults x 65536 inputs, " << report.faults_propagated << " propagated";
  verdict(1, ok, what.str());
}

// --- criterion 2: TMR masks faults and full-replica corruption --------------
void criterion_2() {
  RedundantCircuit tmr = build_tmr_adder(AdderSpec{8, 0});
  const auto faults = enumerate_faults(tmr, tmr.default_fault_scope());
  const auto report = run_campaign(tmr, faults, InputSpec::exhaustive(), 4);
  bool ok = report.faults_propagated == 0 && !faults.empty();
  bool units_masked = true;
  for (int replica = 0; replica < tmr.replica_count(); ++replica) {
    units_masked = units_masked &&
                   faulty_unit_test(tmr, replica, InputSpec::sampled(10000, 1234)) ==
                       UnitTestResult::Masked;
  }
  ok = ok && units_masked;
  std::ostringstream what;
  what << "TMR 8 exhaustive campaign (" << report.faults_total
       << " faults, " << report.faults_propagated
       << " propagated) and adversarial replica corruption on 10^4 inputs ("
       << (units_masked ? "masked" : "exposed") << ")";
  verdict(2, ok, what.str());
}

// --- criterion 3: MVRPR tolerates only significant-part faults --------------
void criterion_3() {
  RedundantCircuit mv = build_mvrpr(8);
  const auto low = enumerate_faults(mv, std::vector<std::string>{"ls"});
  const auto low_report = run_campaign(mv, low, InputSpec::exhaustive(), 4);
  const auto sig =
      enumerate_faults(mv, std::vector<std::string>{"u0.sig", "u1.sig", "u2.sig"});
  const auto sig_report = run_campaign(mv, sig, InputSpec::exhaustive(), 4);
  const bool ok = low_report.faults_propagated > 0 && sig_report.faults_propagated == 0;
  std::ostringstream what;
  what << "MVRPR 8: " << low_report.faults_propagated << "/" << low_report.faults_total
       << " low-slice faults propagate, " << sig_report.faults_propagated << "/"
       << sig_report.faults_total << " significant-replica faults propagate";
  verdict(3, ok, what.str());
}

// --- criterion 4: netlist and word model agree ------------------------------
void criterion_4() {
  std::uint64_t mismatches = 0;

  {
    const Netlist cla_nl = build_cla(8);
    const Netlist imp_nl = build_imprecise_adder(AdderSpec{8, 5});
    Evaluator cla(cla_nl);
    Evaluator imp(imp_nl);
    WordAdder word(AdderSpec{8, 5});
    for (std::uint64_t a = 0; a < 256; ++a) {
      for (std::uint64_t b = 0; b < 256; ++b) {
        if (cla.run(std::vector<std::uint64_t>{a, b}).at(0) != a + b) mismatches += 1;
        if (imp.run(std::vector<std::uint64_t>{a, b}).at(0) != word.add(a, b)) {
          mismatches += 1;
        }
      }
    }
  }
  {
    const Netlist cla_nl = build_cla(32);
    const Netlist imp_nl = build_imprecise_adder(AdderSpec{32, 10});
    Evaluator cla(cla_nl);
    Evaluator imp(imp_nl);
    WordAdder word(AdderSpec{32, 10});
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 100000; ++i) {
      const std::uint64_t a = rng() & 0xffffffffull;
      const std::uint64_t b = rng() & 0xffffffffull;
      if (cla.run(std::vector<std::uint64_t>{a, b}).at(0) != a + b) mismatches += 1;
      if (imp.run(std::vector<std::uint64_t>{a, b}).at(0) != word.add(a, b)) {
        mismatches += 1;
      }
    }
  }
  verdict(4, mismatches == 0,
          "netlist/word equivalence, exhaustive 8-bit and 10^5 random 32-bit vectors: " +
              std::to_string(mismatches) + " mismatches");
}

// --- criterion 5: the lookahead adder is integer addition -------------------
void criterion_5() {
  std::uint64_t mismatches = 0;
  {
    const Netlist cla_nl = build_cla(8);
    Evaluator cla(cla_nl);
    for (std::uint64_t a = 0; a < 256; ++a) {
      for (std::uint64_t b = 0; b < 256; ++b) {
        if (cla.run(std::vector<std::uint64_t>{a, b}).at(0) != a + b) mismatches += 1;
      }
    }
  }
  {
    const Netlist cla_nl = build_cla(32);
    Evaluator cla(cla_nl);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100000; ++i) {
      const std::uint64_t a = rng() & 0xffffffffull;
      const std::uint64_t b = rng() & 0xffffffffull;
      if (cla.run(std::vector<std::uint64_t>{a, b}).at(0) != a + b) mismatches += 1;
    }
  }
  verdict(5, mismatches == 0,
          "lookahead adder equals integer addition (exhaustive 8-bit, 10^5 random "
          "32-bit): " +
              std::to_string(mismatches) + " mismatches");
}

// --- criterion 6: voter equals popcount majority ----------------------------
void criterion_6() {
  std::uint64_t mismatches = 0;
  int patterns = 0;
  for (int replicas : {3, 5}) {
    const Netlist voter_nl = build_voter(replicas, 1);
    Evaluator voter(voter_nl);
    for (std::uint64_t pattern = 0; pattern < (1ull << replicas); ++pattern) {
      std::vector<std::uint64_t> in(static_cast<std::size_t>(replicas));
      int ones = 0;
      for (int r = 0; r < replicas; ++r) {
        in[static_cast<std::size_t>(r)] = (pattern >> r) & 1u;
        ones += static_cast<int>((pattern >> r) & 1u);
      }
      const std::uint64_t want = ones > replicas / 2 ? 1u : 0u;
      if (voter.run(in).at(0) != want) mismatches += 1;
      patterns += 1;
    }
  }
  verdict(6, mismatches == 0 && patterns == 40,
          "majority voter equals popcount majority over all " + std::to_string(patterns) +
              " patterns (3 and 5 replicas)");
}

// --- criterion 7: exact adder round trip is lossless ------------------------
void criterion_7() {
  bool ok = true;
  double worst_seconds = 0.0;
  std::string detail;
  for (const auto& entry : synthetic_corpus(512)) {
    AdderModel adder = AdderModel::exact();
    ProcessStats stats;
    const auto start = std::chrono::steady_clock::now();
    const FixedPointImage out = process_image(entry.image, adder, &stats);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    worst_seconds = std::max(worst_seconds, seconds);
    const bool exact = out == entry.image && stats.clamped_pixels == 0 &&
                       stats.overflow_adds == 0 && seconds < 30.0;
    if (!exact) detail += " " + entry.name + "(differs)";
    ok = ok && exact;
  }
  std::ostringstream what;
  what << "exact-adder 512x512 round trip pixel-exact on all 4 corpus images, worst "
       << format_fixed(worst_seconds) << " s" << detail;
  verdict(7, ok, what.str());
}

// --- criterion 8: reduced adder keeps PSNR > 30 dB, SSIM >= 0.9 -------------
void criterion_8() {
  bool ok = true;
  std::ostringstream what;
  what << "imprecise L=10 quality on the corpus:";
  for (const auto& entry : synthetic_corpus(512)) {
    AdderModel adder = AdderModel::imprecise(AdderSpec{32, 10});
    const FixedPointImage out = process_image(entry.image, adder);
    const QualityReport q = quality_report(entry.image, out);
    const bool good = (q.psnr_infinite || q.psnr_db > 30.0) && q.ssim >= 0.9;
    ok = ok && good;
    what << " " << entry.name << "="
         << (q.psnr_infinite ? std::string("inf") : format_fixed(q.psnr_db)) << "dB/"
         << format_fixed(q.ssim);
  }
  verdict(8, ok, what.str());
}

// --- criterion 9: over-approximation degrades quality -----------------------
void criterion_9() {
  const auto corpus = synthetic_corpus(512);
  const auto& entry = corpus.front();  // gradient
  AdderModel a10 = AdderModel::imprecise(AdderSpec{32, 10});
  AdderModel a20 = AdderModel::imprecise(AdderSpec{32, 20});
  const QualityReport q10 = quality_report(entry.image, process_image(entry.image, a10));
  const QualityReport q20 = quality_report(entry.image, process_image(entry.image, a20));
  const double p10 = q10.psnr_infinite ? 1e9 : q10.psnr_db;
  const bool ok = !q20.psnr_infinite && q20.psnr_db < p10;
  std::ostringstream what;
  what << "over-approximation: " << entry.name << " PSNR drops from "
       << (q10.psnr_infinite ? std::string("inf") : format_fixed(q10.psnr_db)) << " dB (L=10) to "
       << format_fixed(q20.psnr_db) << " dB (L=20)";
  verdict(9, ok, what.str());
}

// --- criterion 10: proxy cost orderings -------------------------------------
void criterion_10() {
  std::vector<RedundantCircuit> circuits;
  circuits.push_back(build_single(AdderSpec{32, 0}));
  circuits.push_back(build_tmr_adder(AdderSpec{32, 0}));
  circuits.push_back(build_fac(AdderSpec{32, 10}));
  const CostReport report = cost_report(circuits, "tmr");
  const CostEntry* single = nullptr;
  const CostEntry* tmr = nullptr;
  const CostEntry* fac = nullptr;
  for (const auto& entry : report.entries) {
    if (entry.scheme == "single") single = &entry;
    if (entry.scheme == "tmr") tmr = &entry;
    if (entry.scheme == "fac") fac = &entry;
  }
  const bool ok = single && tmr && fac && single->gates < fac->gates &&
                  fac->gates < tmr->gates && fac->depth < tmr->depth &&
                  fac->depth <= single->depth;
  std::ostringstream what;
  what << "cost orderings: gates " << format_fixed(single->gates) << " (single) < "
       << format_fixed(fac->gates) << " (fac) < " << format_fixed(tmr->gates)
       << " (tmr); depth " << fac->depth << " (fac) < " << tmr->depth
       << " (tmr), <= " << single->depth << " (single)";
  verdict(10, ok, what.str());
}

// --- criterion 11: pinned error statistics ----------------------------------
void criterion_11() {
  const ErrorStats stats = error_stats_exhaustive_low(AdderSpec{32, 10}, 10);
  const bool ok = stats.pairs == 1048576u && stats.error_pairs == 1043392u &&
                  stats.max_error == 575u && stats.total_error == 200014144u &&
                  stats.mean_error == 190.74835205078125 &&
                  stats.error_rate == 0.99505615234375;
  std::ostringstream what;
  what << "32/10 error statistics over 2^20 pairs pinned to the brute-force oracle: max="
       << stats.max_error << " mean=" << stats.mean_error << " rate=" << stats.error_rate;
  verdict(11, ok, what.str());
}

// --- criterion 12: byte-identical outputs across worker counts --------------
void criterion_12() {
  namespace fs = std::filesystem;
  const std::string dir = g_scratch;
  fs::create_directories(dir);
  bool ok = true;
  std::string detail;

  {
    const std::string args = "faultcamp --scheme fac --N 8 --L 5 --inputs exhaustive ";
    ok = ok && run_cmd(args + "--jobs 1 --json " + dir + "/c1.json --csv " + dir + "/c1.csv") == 0;
    ok = ok && run_cmd(args + "--jobs 3 --json " + dir + "/c3.json --csv " + dir + "/c3.csv") == 0;
    if (slurp(dir + "/c1.json") != slurp(dir + "/c3.json")) {
      ok = false;
      detail += " faultcamp-json-differs";
    }
    if (slurp(dir + "/c1.csv") != slurp(dir + "/c3.csv")) {
      ok = false;
      detail += " faultcamp-csv-differs";
    }
  }
  {
    const std::string args = "faultcamp --scheme tmr --N 32 --inputs sample:2000 --seed 99 ";
    ok = ok && run_cmd(args + "--jobs 1 --json " + dir + "/s1.json") == 0;
    ok = ok && run_cmd(args + "--jobs 4 --json " + dir + "/s4.json") == 0;
    if (slurp(dir + "/s1.json") != slurp(dir + "/s4.json")) {
      ok = false;
      detail += " sampled-campaign-differs";
    }
  }
  {
    ok = ok && run_cmd("gen-image --kind noise --size 64 --seed 12 --out " + dir + "/n.pgm") == 0;
    const std::string args =
        "image-run --adder imprecise --L 10 --in " + dir + "/n.pgm ";
    ok = ok && run_cmd(args + "--out " + dir + "/p1.pgm --report " + dir + "/r1.json") == 0;
    ok = ok && run_cmd(args + "--out " + dir + "/p2.pgm --report " + dir + "/r2.json") == 0;
    if (slurp(dir + "/p1.pgm") != slurp(dir + "/p2.pgm") ||
        slurp(dir + "/r1.json") != slurp(dir + "/r2.json")) {
      ok = false;
      detail += " image-run-differs";
    }
  }
  {
    ok = ok && run_cmd("gen --scheme fac --N 8 --L 5 --out " + dir + "/g1.nl") == 0;
    ok = ok && run_cmd("gen --scheme fac --N 8 --L 5 --out " + dir + "/g2.nl") == 0;
    if (slurp(dir + "/g1.nl") != slurp(dir + "/g2.nl")) {
      ok = false;
      detail += " gen-differs";
    }
  }
  verdict(12, ok,
          "byte-identical JSON/CSV/PGM/netlist outputs across worker counts and "
          "repeated runs" + detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <cli-binary> <scratch-dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_scratch = argv[2];

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();

  if (g_failures != 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}

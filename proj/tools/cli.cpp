#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fifosim/config.hpp"
#include "fifosim/engine.hpp"
#include "fifosim/oracle.hpp"
#include "fifosim/report.hpp"
#include "fifosim/trace.hpp"

namespace fifosim {
namespace {

struct GridFlags {
  std::string line_sizes = "4,8,16,32,64";
  std::string set_sizes = "1..16384";
  std::string assocs = "2,4,8,16";
  unsigned lut_bits = kDefaultLutBits;
};

void add_grid_flags(CLI::App* cmd, GridFlags& flags) {
  cmd->add_option("--line-sizes", flags.line_sizes, "Line sizes in bytes (list or lo..hi range)");
  cmd->add_option("--set-sizes", flags.set_sizes, "Set counts (list or lo..hi range)");
  cmd->add_option("--assocs", flags.assocs, "Associativities (list or lo..hi range)");
  cmd->add_option("--lut-bits", flags.lut_bits, "Block directory bucket bits")
      ->check(CLI::Range(0u, 24u));
}

/// One grid per line size, ascending.
std::vector<CacheGrid> make_grids(const GridFlags& flags) {
  auto lines = parse_size_list(flags.line_sizes);
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  auto sets = parse_size_list(flags.set_sizes);
  auto assocs = parse_size_list(flags.assocs);
  std::vector<CacheGrid> grids;
  grids.reserve(lines.size());
  for (auto ls : lines) grids.push_back(validate_grid(ls, sets, assocs));
  return grids;
}

std::vector<BlockAddress> to_blocks(std::span<const ByteAddress> bytes, std::uint64_t line_size) {
  std::vector<BlockAddress> blocks(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) blocks[i] = to_block(bytes[i], line_size);
  return blocks;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SimReport reference_as_report(const CacheGrid& grid, const std::vector<RefCounts>& counts,
                              std::uint64_t accesses, double wall_seconds) {
  SimReport r;
  r.grid = grid;
  r.stats.resize(counts.size());
  r.wall_seconds = wall_seconds;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    r.stats[c].accesses = accesses;
    r.stats[c].hits = counts[c].hits;
    r.stats[c].misses = counts[c].misses;
  }
  return r;
}

struct SimulateOpts {
  std::string trace;
  std::string format = "text";
  std::string engine = "fast";
  std::string out;
  std::string summary;
  GridFlags grid;
};

int cmd_simulate(const SimulateOpts& opts) {
  if (opts.engine != "fast" && opts.engine != "naive")
    throw ConfigError("unknown engine '" + opts.engine + "'");
  auto grids = make_grids(opts.grid);
  auto bytes = read_trace_file(opts.trace, parse_trace_format(opts.format));

  std::vector<SimReport> reports;
  reports.reserve(grids.size());
  for (const CacheGrid& grid : grids) {
    auto blocks = to_blocks(bytes, grid.line_size());
    if (opts.engine == "fast") {
      Engine engine(grid, opts.grid.lut_bits);
      reports.push_back(run(engine, blocks));
    } else {
      auto start = std::chrono::steady_clock::now();
      auto counts = simulate_reference(blocks, grid);
      reports.push_back(reference_as_report(grid, counts, blocks.size(), seconds_since(start)));
    }
  }

  std::ofstream out(opts.out, std::ios::binary);
  if (!out) throw TraceError("cannot open output file '" + opts.out + "'");
  write_csv(out, reports);
  if (!out) throw TraceError("write failed for '" + opts.out + "'");

  if (!opts.summary.empty()) {
    std::ofstream sum(opts.summary, std::ios::binary);
    if (!sum) throw TraceError("cannot open summary file '" + opts.summary + "'");
    sum << summary_json(reports, opts.trace, bytes.size(), opts.engine, opts.grid.lut_bits)
        << '\n';
  }
  return 0;
}

struct GenOpts {
  std::string out;
  std::string format = "text";
  std::string model;
  std::uint64_t length = 10000;
  std::uint64_t seed = 1;
  std::uint64_t line_size = 4;
  std::uint64_t span = 1 << 20;
  std::uint64_t blocks = 1024;
  std::uint64_t stride = 1;
  double exponent = 1.0;
};

std::vector<ByteAddress> generate_for(const GenOpts& opts) {
  if (opts.model == "uniform") return generate_uniform(opts.span, opts.seed, opts.length);
  if (opts.model == "loop")
    return generate_loop(opts.blocks, opts.stride, opts.line_size, opts.length);
  if (opts.model == "zipf" || opts.model == "zipf_ws")
    return generate_zipf(opts.blocks, opts.exponent, opts.line_size, opts.seed, opts.length);
  throw ConfigError("unknown trace model '" + opts.model + "'");
}

int cmd_gen(const GenOpts& opts) {
  auto addrs = generate_for(opts);
  write_trace_file(opts.out, parse_trace_format(opts.format), addrs);
  std::printf("wrote %zu addresses to %s\n", addrs.size(), opts.out.c_str());
  return 0;
}

struct VerifyOpts {
  std::string trace;
  std::string format = "text";
  bool audit = false;
  std::uint64_t seeds = 0;
  bool selftest_flip = false;
  GenOpts gen;  // trace model for --seeds campaigns
  GridFlags grid;
};

struct VerifyTotals {
  std::uint64_t mismatches = 0;
  std::uint64_t violations = 0;
  std::uint64_t p1 = 0, p2 = 0, p3 = 0;
  std::uint64_t inclusion = 0;
  bool scanned = false;
  int printed = 0;
};

constexpr int kMaxDetailLines = 20;

void verify_one(const std::vector<ByteAddress>& bytes, const CacheGrid& grid,
                const VerifyOpts& opts, VerifyTotals& totals) {
  auto blocks = to_blocks(bytes, grid.line_size());

  SimReport report;
  std::vector<RefCounts> reference;
  if (opts.audit) {
    AuditResult res = audit_run(blocks, grid, opts.grid.lut_bits);
    report = std::move(res.report);
    reference = std::move(res.reference);
    totals.p1 += res.audit.p1_firings;
    totals.p2 += res.audit.p2_firings;
    totals.p3 += res.audit.p3_firings;
    totals.scanned |= res.audit.inclusion_scanned;
    totals.inclusion += res.audit.inclusion_violations;
    totals.violations += res.audit.violations.size();
    for (const auto& v : res.audit.violations) {
      if (totals.printed >= kMaxDetailLines) break;
      ++totals.printed;
      std::printf("VIOLATION access=%" PRIu64 " property=%d line_size=%" PRIu64
                  " set_size=%" PRIu64 " assoc=%" PRIu32 " block=0x%" PRIx64 "\n",
                  v.access_index, v.property, grid.line_size(),
                  grid.set_size(grid.level_of(v.config_id)),
                  grid.assoc(grid.assoc_index_of(v.config_id)), v.block);
    }
  } else {
    Engine engine(grid, opts.grid.lut_bits);
    report = run(engine, blocks);
    reference = simulate_reference(blocks, grid);
  }

  if (opts.selftest_flip && !report.stats.empty()) {
    // Harness self-check: a deliberately corrupted counter must be caught.
    report.stats[0].hits += 1;
  }

  auto mismatches = diff_reports(report, reference);
  totals.mismatches += mismatches.size();
  for (const auto& m : mismatches) {
    if (totals.printed >= kMaxDetailLines) break;
    ++totals.printed;
    std::printf("MISMATCH line_size=%" PRIu64 " set_size=%" PRIu64 " assoc=%" PRIu32
                " engine_hits=%" PRIu64 " engine_misses=%" PRIu64 " ref_hits=%" PRIu64
                " ref_misses=%" PRIu64 "\n",
                grid.line_size(), grid.set_size(grid.level_of(m.config_id)),
                grid.assoc(grid.assoc_index_of(m.config_id)), m.engine.hits, m.engine.misses,
                m.reference.hits, m.reference.misses);
  }
}

int cmd_verify(const VerifyOpts& opts) {
  if (opts.trace.empty() && opts.seeds == 0)
    throw ConfigError("verify needs --trace or --seeds");
  auto grids = make_grids(opts.grid);
  VerifyTotals totals;

  if (!opts.trace.empty()) {
    auto bytes = read_trace_file(opts.trace, parse_trace_format(opts.format));
    for (const CacheGrid& grid : grids) verify_one(bytes, grid, opts, totals);
  }
  for (std::uint64_t s = 0; s < opts.seeds; ++s) {
    GenOpts gen = opts.gen;
    gen.seed = opts.gen.seed + s;
    auto bytes = generate_for(gen);
    for (const CacheGrid& grid : grids) verify_one(bytes, grid, opts, totals);
  }

  if (opts.audit)
    std::printf("FIRINGS p1=%" PRIu64 " p2=%" PRIu64 " p3=%" PRIu64 "\n", totals.p1, totals.p2,
                totals.p3);
  if (totals.scanned) std::printf("INCLUSION_VIOLATIONS=%" PRIu64 "\n", totals.inclusion);
  std::printf("MISMATCHES=%" PRIu64 " VIOLATIONS=%" PRIu64 "\n", totals.mismatches,
              totals.violations);
  return totals.mismatches + totals.violations > 0 ? 3 : 0;
}

struct BenchOpts {
  std::string trace;
  std::string format = "text";
  std::string engine = "fast";
  std::string out;
  unsigned repeat = 5;
  GridFlags grid;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

int cmd_bench(const BenchOpts& opts) {
  if (opts.engine != "fast" && opts.engine != "naive")
    throw ConfigError("unknown engine '" + opts.engine + "'");
  if (opts.repeat == 0) throw ConfigError("--repeat must be positive");
  auto grids = make_grids(opts.grid);
  auto bytes = read_trace_file(opts.trace, parse_trace_format(opts.format));

  std::vector<std::vector<BlockAddress>> blocks;
  blocks.reserve(grids.size());
  for (const CacheGrid& grid : grids) blocks.push_back(to_blocks(bytes, grid.line_size()));

  std::vector<double> fast_times, naive_times;
  for (unsigned rep = 0; rep < opts.repeat; ++rep) {
    auto start = std::chrono::steady_clock::now();
    for (std::size_t g = 0; g < grids.size(); ++g) {
      if (opts.engine == "fast") {
        Engine engine(grids[g], opts.grid.lut_bits);
        for (BlockAddress b : blocks[g]) engine.access(b);
      } else {
        simulate_reference(blocks[g], grids[g]);
      }
    }
    fast_times.push_back(seconds_since(start));

    start = std::chrono::steady_clock::now();
    for (std::size_t g = 0; g < grids.size(); ++g) simulate_reference(blocks[g], grids[g]);
    naive_times.push_back(seconds_since(start));
  }

  nlohmann::json j;
  j["trace"] = opts.trace;
  j["accesses"] = bytes.size();
  j["repeat"] = opts.repeat;
  j["engine"] = opts.engine;
  j["fast"] = {{"seconds", fast_times},
               {"min_seconds", *std::min_element(fast_times.begin(), fast_times.end())},
               {"median_seconds", median(fast_times)}};
  j["naive"] = {{"seconds", naive_times},
                {"min_seconds", *std::min_element(naive_times.begin(), naive_times.end())},
                {"median_seconds", median(naive_times)}};
  j["speedup_median"] = median(naive_times) / median(fast_times);
  j["speedup_min"] = *std::min_element(naive_times.begin(), naive_times.end()) /
                     *std::min_element(fast_times.begin(), fast_times.end());

  std::string text = j.dump(2) + "\n";
  if (opts.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(opts.out, std::ios::binary);
    if (!out) throw TraceError("cannot open output file '" + opts.out + "'");
    out << text;
  }
  return 0;
}

void add_gen_model_flags(CLI::App* cmd, GenOpts& opts, bool require_model) {
  auto* model =
      cmd->add_option("--model", opts.model, "Trace model: uniform, loop or zipf (alias zipf_ws)");
  if (require_model) model->required();
  cmd->add_option("--length", opts.length, "Number of accesses");
  cmd->add_option("--seed", opts.seed, "Generator seed");
  cmd->add_option("--line-size,--gen-line-size", opts.line_size,
                  "Line size used to scale generated blocks");
  cmd->add_option("--span", opts.span, "uniform: byte-address span");
  cmd->add_option("--blocks", opts.blocks, "loop/zipf: working-set block count");
  cmd->add_option("--stride", opts.stride, "loop: stride between blocks");
  cmd->add_option("--exponent", opts.exponent, "zipf: rank exponent (> 0)");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Multi-configuration FIFO cache simulator"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a trace and write per-config CSV");
  simulate->add_option("--trace", sim.trace, "Trace file")->required();
  simulate->add_option("--format", sim.format, "Trace format: text or bin");
  simulate->add_option("--engine", sim.engine, "fast (single pass) or naive (reference)");
  simulate->add_option("--out", sim.out, "CSV output path")->required();
  simulate->add_option("--summary", sim.summary, "JSON summary path");
  add_grid_flags(simulate, sim.grid);

  VerifyOpts ver;
  auto* verify = app.add_subcommand("verify", "Differential check of engine vs reference");
  verify->add_option("--trace", ver.trace, "Trace file");
  verify->add_option("--format", ver.format, "Trace format: text or bin");
  verify->add_flag("--audit", ver.audit, "Check every fast-path hit against reference state");
  verify->add_option("--seeds", ver.seeds, "Run a campaign over this many generated traces");
  verify->add_flag("--selftest-flip", ver.selftest_flip,
                   "Corrupt one counter to prove mismatches are caught")
      ->group("");  // hidden
  add_gen_model_flags(verify, ver.gen, false);
  ver.gen.model = "uniform";
  add_grid_flags(verify, ver.grid);

  BenchOpts ben;
  auto* bench = app.add_subcommand("bench", "Time engine vs reference on one trace");
  bench->add_option("--trace", ben.trace, "Trace file")->required();
  bench->add_option("--format", ben.format, "Trace format: text or bin");
  bench->add_option("--engine", ben.engine, "What to time against the reference: fast or naive");
  bench->add_option("--repeat", ben.repeat, "Repetitions per side");
  bench->add_option("--out", ben.out, "JSON output path (default stdout)");
  add_grid_flags(bench, ben.grid);

  GenOpts gen;
  auto* generate = app.add_subcommand("gen", "Generate a synthetic trace");
  generate->add_option("--out", gen.out, "Output path")->required();
  generate->add_option("--format", gen.format, "Trace format: text or bin");
  add_gen_model_flags(generate, gen, true);

  int rc = 0;
  simulate->callback([&] { rc = cmd_simulate(sim); });
  verify->callback([&] { rc = cmd_verify(ver); });
  bench->callback([&] { rc = cmd_bench(ben); });
  generate->callback([&] { rc = cmd_gen(gen); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const TraceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}

}  // namespace fifosim

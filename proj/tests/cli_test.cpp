#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* bin_path() {
  const char* p = std::getenv("FIFOSIM_BIN");
  REQUIRE_MESSAGE(p != nullptr, "FIFOSIM_BIN must point at the CLI binary");
  return p;
}

fs::path tmp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("fifosim_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Cmd {
  int code = -1;
  std::string output;  // stdout and stderr interleaved

  bool has(const std::string& needle) const { return output.find(needle) != std::string::npos; }
};

Cmd run_cli(const std::string& args) {
  std::string full = std::string(bin_path()) + " " + args + " 2>&1";
  FILE* pipe = ::popen(full.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Cmd result;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  int status = ::pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

// A four-access trace whose blocks at line size 4 are [0,1,0,1].
fs::path pair_trace() {
  static fs::path p = [] {
    fs::path path = tmp_dir() / "pair.trace";
    auto r = run_cli("gen --out " + quoted(path) + " --model loop --blocks 2 --length 4");
    REQUIRE(r.code == 0);
    return path;
  }();
  return p;
}

}  // namespace

TEST_CASE("no subcommand is a usage error") {
  auto r = run_cli("");
  CHECK(r.code == 1);
}

TEST_CASE("unknown flags are usage errors") {
  auto r = run_cli("simulate --no-such-flag");
  CHECK(r.code == 1);
}

TEST_CASE("gen writes the loop pattern it promises") {
  fs::path out = tmp_dir() / "loop.trace";
  auto r = run_cli("gen --out " + quoted(out) + " --model loop --blocks 2 --length 6 --line-size 16");
  CHECK(r.code == 0);
  CHECK(r.has("wrote 6 addresses"));
  CHECK(read_file(out) == "0x0\n0x10\n0x0\n0x10\n0x0\n0x10\n");

  fs::path again = tmp_dir() / "loop2.trace";
  run_cli("gen --out " + quoted(again) + " --model loop --blocks 2 --length 6 --line-size 16");
  CHECK(read_file(again) == read_file(out));
}

TEST_CASE("gen round trips a binary zipf trace") {
  fs::path out = tmp_dir() / "zipf.bin";
  auto r = run_cli("gen --out " + quoted(out) +
                   " --model zipf_ws --blocks 64 --length 10000 --format bin");
  CHECK(r.code == 0);
  CHECK(fs::file_size(out) == 10000 * 8);
}

TEST_CASE("gen rejects bad model parameters") {
  fs::path out = tmp_dir() / "never.trace";
  CHECK(run_cli("gen --out " + quoted(out) + " --model loop --blocks 0").code == 1);
  CHECK(run_cli("gen --out " + quoted(out) + " --model nosuch").code == 1);
}

TEST_CASE("simulate writes the exact per-config csv") {
  fs::path csv = tmp_dir() / "tiny.csv";
  auto r = run_cli("simulate --trace " + quoted(pair_trace()) + " --out " + quoted(csv) +
                   " --line-sizes 4 --set-sizes 1,2 --assocs 2,4");
  CHECK(r.code == 0);
  CHECK(read_file(csv) ==
        "line_size,set_size,assoc,accesses,hits,misses,miss_rate,p1_hits,p2_hits,p3_hits,dup_hits\n"
        "4,1,2,4,2,2,0.500000,0,0,0,0\n"
        "4,1,4,4,2,2,0.500000,0,0,1,0\n"
        "4,2,2,4,2,2,0.500000,0,0,1,0\n"
        "4,2,4,4,2,2,0.500000,0,1,1,0\n");
}

TEST_CASE("naive engine writes the same hit counts") {
  fs::path csv = tmp_dir() / "naive.csv";
  auto r = run_cli("simulate --engine naive --trace " + quoted(pair_trace()) + " --out " +
                   quoted(csv) + " --line-sizes 4 --set-sizes 1,2 --assocs 2,4");
  CHECK(r.code == 0);
  CHECK(read_file(csv) ==
        "line_size,set_size,assoc,accesses,hits,misses,miss_rate,p1_hits,p2_hits,p3_hits,dup_hits\n"
        "4,1,2,4,2,2,0.500000,0,0,0,0\n"
        "4,1,4,4,2,2,0.500000,0,0,0,0\n"
        "4,2,2,4,2,2,0.500000,0,0,0,0\n"
        "4,2,4,4,2,2,0.500000,0,0,0,0\n");
}

TEST_CASE("a single cold access yields one row of misses") {
  fs::path trace = tmp_dir() / "one.trace";
  std::ofstream(trace) << "0x40\n";
  fs::path csv = tmp_dir() / "one.csv";
  auto r = run_cli("simulate --trace " + quoted(trace) + " --out " + quoted(csv) +
                   " --line-sizes 8 --set-sizes 1 --assocs 2");
  CHECK(r.code == 0);
  CHECK(read_file(csv) ==
        "line_size,set_size,assoc,accesses,hits,misses,miss_rate,p1_hits,p2_hits,p3_hits,dup_hits\n"
        "8,1,2,1,0,1,1.000000,0,0,0,0\n");
}

TEST_CASE("the default sweep covers three hundred configurations") {
  fs::path csv = tmp_dir() / "sweep.csv";
  auto r = run_cli("simulate --trace " + quoted(pair_trace()) + " --out " + quoted(csv));
  CHECK(r.code == 0);
  std::string text = read_file(csv);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 301);
  CHECK(text.rfind("line_size,", 0) == 0);
  CHECK(text.find("\n4,1,2,") != std::string::npos);
  CHECK(text.find("\n64,16384,16,") != std::string::npos);

  fs::path csv2 = tmp_dir() / "sweep2.csv";
  run_cli("simulate --trace " + quoted(pair_trace()) + " --out " + quoted(csv2));
  CHECK(read_file(csv2) == text);
}

TEST_CASE("summary json names every engine") {
  fs::path csv = tmp_dir() / "sum.csv";
  fs::path sum = tmp_dir() / "sum.json";
  auto r = run_cli("simulate --trace " + quoted(pair_trace()) + " --out " + quoted(csv) +
                   " --summary " + quoted(sum) +
                   " --line-sizes 4,8 --set-sizes 1,2 --assocs 2,4");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(read_file(sum));
  CHECK(j["engine"] == "fast");
  CHECK(j["accesses"] == 4);
  REQUIRE(j["engines"].size() == 2);
  CHECK(j["engines"][0]["line_size"] == 4);
  CHECK(j["engines"][1]["line_size"] == 8);
  CHECK(j["engines"][0]["num_configs"] == 4);
}

TEST_CASE("malformed traces exit with the trace error code") {
  fs::path bad = tmp_dir() / "bad.trace";
  std::ofstream(bad) << "zzz\n";
  fs::path csv = tmp_dir() / "bad.csv";
  auto r = run_cli("simulate --trace " + quoted(bad) + " --out " + quoted(csv) +
                   " --set-sizes 1 --assocs 2");
  CHECK(r.code == 2);
  CHECK(r.has("line 1"));
}

TEST_CASE("missing trace files exit with the trace error code") {
  fs::path csv = tmp_dir() / "missing.csv";
  auto r = run_cli("simulate --trace /no/such/file --out " + quoted(csv) +
                   " --set-sizes 1 --assocs 2");
  CHECK(r.code == 2);
}

TEST_CASE("invalid grids exit with the usage code") {
  fs::path csv = tmp_dir() / "grid.csv";
  std::string base =
      "simulate --trace " + quoted(pair_trace()) + " --out " + quoted(csv) + " --set-sizes 1 ";
  CHECK(run_cli(base + "--assocs 1").code == 1);
  CHECK(run_cli(base + "--assocs 6").code == 1);
  CHECK(run_cli(base + "--assocs ' '").code == 1);
  CHECK(run_cli("simulate --trace " + quoted(pair_trace()) + " --out " + quoted(csv) +
                " --set-sizes 3 --assocs 2")
            .code == 1);
}

TEST_CASE("verify passes a clean engine") {
  auto r = run_cli("verify --trace " + quoted(pair_trace()) +
                   " --line-sizes 4 --set-sizes 1,2 --assocs 2,4");
  CHECK(r.code == 0);
  CHECK(r.has("MISMATCHES=0 VIOLATIONS=0"));
}

TEST_CASE("verify audit reports firings on the pair trace") {
  auto r = run_cli("verify --audit --trace " + quoted(pair_trace()) +
                   " --line-sizes 4 --set-sizes 1,2 --assocs 2,4");
  CHECK(r.code == 0);
  CHECK(r.has("FIRINGS p1=0 p2=1 p3=3"));
  CHECK(r.has("INCLUSION_VIOLATIONS=0"));
  CHECK(r.has("MISMATCHES=0 VIOLATIONS=0"));
}

TEST_CASE("verify catches a corrupted counter") {
  auto r = run_cli("verify --selftest-flip --trace " + quoted(pair_trace()) +
                   " --line-sizes 4 --set-sizes 1,2 --assocs 2,4");
  CHECK(r.code == 3);
  CHECK(r.has("MISMATCHES=1"));
  CHECK(r.has("MISMATCH "));
}

TEST_CASE("verify runs seeded campaigns") {
  auto r = run_cli(
      "verify --seeds 3 --model uniform --span 4096 --length 300"
      " --audit --line-sizes 4 --set-sizes 1,2 --assocs 2,4");
  CHECK(r.code == 0);
  CHECK(r.has("MISMATCHES=0 VIOLATIONS=0"));
}

TEST_CASE("verify without input is a usage error") {
  auto r = run_cli("verify --line-sizes 4 --set-sizes 1 --assocs 2");
  CHECK(r.code == 1);
}

TEST_CASE("bench emits timing json") {
  fs::path trace = tmp_dir() / "bench.trace";
  run_cli("gen --out " + quoted(trace) + " --model uniform --span 65536 --length 20000");
  auto r = run_cli("bench --repeat 1 --trace " + quoted(trace) +
                   " --line-sizes 4 --set-sizes 1,2,4 --assocs 2,4");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["repeat"] == 1);
  CHECK(j["fast"]["seconds"].size() == 1);
  CHECK(j["naive"]["seconds"].size() == 1);
  CHECK(j["speedup_median"].get<double>() > 0.0);
}

TEST_CASE("bench of the reference against itself is near parity") {
  fs::path trace = tmp_dir() / "bench2.trace";
  run_cli("gen --out " + quoted(trace) + " --model uniform --span 65536 --length 20000");
  auto r = run_cli("bench --engine naive --repeat 3 --trace " + quoted(trace) +
                   " --line-sizes 4 --set-sizes 1,2,4 --assocs 2,4");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.output);
  double ratio = j["speedup_median"].get<double>();
  CHECK(ratio > 0.2);
  CHECK(ratio < 5.0);
}

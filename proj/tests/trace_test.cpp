#include "fifosim/trace.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

#include "fifosim/config.hpp"

using namespace fifosim;

TEST_CASE("byte addresses map to line-aligned blocks") {
  CHECK(to_block(0, 64) == 0);
  CHECK(to_block(63, 64) == 0);
  CHECK(to_block(64, 64) == 1);
  CHECK(to_block(0xffff, 16) == 0xfff);
  CHECK(to_block(7, 1) == 7);
}

TEST_CASE("block mapping is monotone in the byte address") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t a = rng() >> (rng() % 32);
    std::uint64_t b = a + (rng() % 4096);
    std::uint64_t line = std::uint64_t{1} << (rng() % 7);
    CHECK(to_block(a, line) <= to_block(b, line));
  }
}

TEST_CASE("text traces accept comments, blanks and either hex spelling") {
  std::istringstream in(
      "0x10\n"
      "# comment line\n"
      "20\n"
      "\n"
      "   \t  \n"
      "0XdeadBEEF\n"
      "  ff  \n");
  auto got = read_trace(in, TraceFormat::text);
  CHECK(got == std::vector<ByteAddress>{0x10, 0x20, 0xdeadbeef, 0xff});
}

TEST_CASE("malformed text lines name their line number") {
  std::istringstream bad1("xyz\n");
  CHECK_THROWS_WITH_AS(read_trace(bad1, TraceFormat::text),
                       doctest::Contains("line 1"), TraceError);

  std::istringstream bad3("10\n# fine\n0x\n");
  CHECK_THROWS_WITH_AS(read_trace(bad3, TraceFormat::text),
                       doctest::Contains("line 3"), TraceError);

  std::istringstream junk("12 34\n");
  CHECK_THROWS_AS(read_trace(junk, TraceFormat::text), TraceError);

  std::istringstream overflow("0x1ffffffffffffffff\n");
  CHECK_THROWS_AS(read_trace(overflow, TraceFormat::text), TraceError);
}

TEST_CASE("binary traces are consecutive little-endian words") {
  std::string raw(
      "\x10\x00\x00\x00\x00\x00\x00\x00"
      "\x20\x00\x00\x00\x00\x00\x00\x00",
      16);
  std::istringstream in(raw);
  auto got = read_trace(in, TraceFormat::binary);
  CHECK(got == std::vector<ByteAddress>{0x10, 0x20});

  std::istringstream truncated(std::string("\x10\x00\x00", 3));
  CHECK_THROWS_WITH_AS(read_trace(truncated, TraceFormat::binary),
                       doctest::Contains("truncated"), TraceError);
}

TEST_CASE("writing then reading returns the identical stream") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 20; ++round) {
    std::vector<ByteAddress> addrs(rng() % 200);
    for (auto& a : addrs) a = rng() >> (rng() % 40);
    for (TraceFormat fmt : {TraceFormat::text, TraceFormat::binary}) {
      std::stringstream buf;
      write_trace(buf, fmt, addrs);
      CHECK(read_trace(buf, fmt) == addrs);
    }
  }
}

TEST_CASE("format names") {
  CHECK(parse_trace_format("text") == TraceFormat::text);
  CHECK(parse_trace_format("bin") == TraceFormat::binary);
  CHECK(parse_trace_format("binary") == TraceFormat::binary);
  CHECK_THROWS_AS(parse_trace_format("csv"), ConfigError);
}

TEST_CASE("loop model cycles through its working set") {
  auto t = generate_loop(2, 1, 16, 6);
  CHECK(t == std::vector<ByteAddress>{0, 16, 0, 16, 0, 16});
  auto strided = generate_loop(3, 4, 8, 4);
  CHECK(strided == std::vector<ByteAddress>{0, 32, 64, 0});
}

TEST_CASE("uniform model is deterministic and bounded") {
  auto a = generate_uniform(4096, 9, 5000);
  auto b = generate_uniform(4096, 9, 5000);
  CHECK(a == b);
  for (auto v : a) CHECK(v < 4096);
  CHECK(generate_uniform(4096, 10, 5000) != a);
}

TEST_CASE("zipf model is deterministic, bounded and head-heavy") {
  auto a = generate_zipf(128, 1.0, 4, 3, 8000);
  CHECK(a == generate_zipf(128, 1.0, 4, 3, 8000));
  std::size_t head = 0;
  for (auto v : a) {
    CHECK(v < 128 * 4);
    CHECK(v % 4 == 0);
    if (v == 0) ++head;
  }
  // Rank 1 carries weight 1/H(128) of the mass, about 18 percent at s=1.
  CHECK(head > 8000 / 10);
}

TEST_CASE("generators reject invalid parameters") {
  CHECK_THROWS_AS(generate_uniform(0, 1, 10), ConfigError);
  CHECK_THROWS_AS(generate_loop(0, 1, 4, 10), ConfigError);
  CHECK_THROWS_AS(generate_loop(4, 0, 4, 10), ConfigError);
  CHECK_THROWS_AS(generate_zipf(0, 1.0, 4, 1, 10), ConfigError);
  CHECK_THROWS_AS(generate_zipf(4, 0.0, 4, 1, 10), ConfigError);
  CHECK_THROWS_AS(generate_zipf(4, -1.0, 4, 1, 10), ConfigError);
}

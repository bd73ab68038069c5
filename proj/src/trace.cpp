#include "fifosim/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "fifosim/config.hpp"

namespace fifosim {

TraceFormat parse_trace_format(const std::string& name) {
  if (name == "text") return TraceFormat::text;
  if (name == "bin" || name == "binary") return TraceFormat::binary;
  throw ConfigError("unknown trace format '" + name + "'");
}

TraceReader::TraceReader(std::istream& in, TraceFormat format) : in_(in), format_(format) {}

namespace {

constexpr const char* kSpace = " \t\r\v\f";

std::optional<ByteAddress> parse_hex_line(const std::string& line, std::size_t line_no) {
  std::size_t begin = line.find_first_not_of(kSpace);
  if (begin == std::string::npos) return std::nullopt;  // blank
  if (line[begin] == '#') return std::nullopt;          // comment
  std::size_t end = line.find_last_not_of(kSpace) + 1;

  const char* first = line.data() + begin;
  const char* last = line.data() + end;
  if (last - first >= 2 && first[0] == '0' && (first[1] == 'x' || first[1] == 'X')) first += 2;

  ByteAddress value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value, 16);
  if (ec != std::errc{} || ptr != last || first == last)
    throw TraceError("trace line " + std::to_string(line_no) + ": malformed address '" +
                     line.substr(begin, end - begin) + "'");
  return value;
}

}  // namespace

std::optional<ByteAddress> TraceReader::next() {
  if (format_ == TraceFormat::text) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto v = parse_hex_line(line, line_no_)) return v;
    }
    return std::nullopt;
  }
  unsigned char raw[8];
  in_.read(reinterpret_cast<char*>(raw), 8);
  auto got = in_.gcount();
  if (got == 0) return std::nullopt;
  if (got != 8)
    throw TraceError("binary trace truncated: trailing " + std::to_string(got) +
                     " bytes are not a full 8-byte address");
  ByteAddress v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | raw[i];
  return v;
}

std::vector<ByteAddress> read_trace(std::istream& in, TraceFormat format) {
  TraceReader reader(in, format);
  std::vector<ByteAddress> out;
  while (auto v = reader.next()) out.push_back(*v);
  return out;
}

std::vector<ByteAddress> read_trace_file(const std::string& path, TraceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError("cannot open trace file '" + path + "'");
  return read_trace(in, format);
}

void write_trace(std::ostream& out, TraceFormat format, std::span<const ByteAddress> addresses) {
  if (format == TraceFormat::text) {
    char buf[32];
    for (auto a : addresses) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a, 16);
      out << "0x";
      out.write(buf, ptr - buf);
      out.put('\n');
    }
    return;
  }
  for (auto a : addresses) {
    char raw[8];
    for (int i = 0; i < 8; ++i) raw[i] = static_cast<char>((a >> (8 * i)) & 0xff);
    out.write(raw, 8);
  }
}

void write_trace_file(const std::string& path, TraceFormat format,
                      std::span<const ByteAddress> addresses) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TraceError("cannot open output file '" + path + "'");
  write_trace(out, format, addresses);
  if (!out) throw TraceError("write failed for '" + path + "'");
}

namespace {

// Multiply-shift bounded draw; keeps generated traces identical across
// standard libraries (uniform_int_distribution is not pinned by the
// standard).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<ByteAddress> generate_uniform(std::uint64_t span_bytes, std::uint64_t seed,
                                          std::size_t length) {
  if (span_bytes == 0) throw ConfigError("uniform model: span must be positive");
  std::mt19937_64 rng(seed);
  std::vector<ByteAddress> out(length);
  for (auto& a : out) a = bounded(rng, span_bytes);
  return out;
}

std::vector<ByteAddress> generate_loop(std::uint64_t block_count, std::uint64_t stride_blocks,
                                       std::uint64_t line_size_bytes, std::size_t length) {
  if (block_count == 0) throw ConfigError("loop model: block count must be positive");
  if (stride_blocks == 0) throw ConfigError("loop model: stride must be positive");
  if (line_size_bytes == 0) throw ConfigError("loop model: line size must be positive");
  std::vector<ByteAddress> out(length);
  for (std::size_t i = 0; i < length; ++i)
    out[i] = (i % block_count) * stride_blocks * line_size_bytes;
  return out;
}

std::vector<ByteAddress> generate_zipf(std::uint64_t block_count, double exponent,
                                       std::uint64_t line_size_bytes, std::uint64_t seed,
                                       std::size_t length) {
  if (block_count == 0) throw ConfigError("zipf model: block count must be positive");
  if (!(exponent > 0.0)) throw ConfigError("zipf model: exponent must be positive");
  if (line_size_bytes == 0) throw ConfigError("zipf model: line size must be positive");

  // Cumulative weights over ranks 1..N; rank r maps to block r-1.
  std::vector<double> cum(block_count);
  double total = 0.0;
  for (std::uint64_t r = 0; r < block_count; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    cum[r] = total;
  }

  std::mt19937_64 rng(seed);
  std::vector<ByteAddress> out(length);
  for (auto& a : out) {
    double u = unit_double(rng) * total;
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    std::uint64_t block = static_cast<std::uint64_t>(it - cum.begin());
    if (block >= block_count) block = block_count - 1;
    a = block * line_size_bytes;
  }
  return out;
}

}  // namespace fifosim

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fifosim {

using ByteAddress = std::uint64_t;
using BlockAddress = std::uint64_t;

/// Thrown for unreadable or malformed trace input.  Messages for text
/// traces name the offending 1-based line number.
struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline BlockAddress to_block(ByteAddress addr, std::uint64_t line_size_bytes) {
  return addr / line_size_bytes;
}

enum class TraceFormat { text, binary };

/// Accepts "text", "bin" or "binary".
TraceFormat parse_trace_format(const std::string& name);

/// Pull-based reader over an open stream.  Text format: one hex address per
/// line, optional 0x/0X prefix, either letter case; blank lines and lines
/// whose first non-space character is '#' are skipped.  Binary format:
/// consecutive 8-byte little-endian values.  next() throws TraceError on a
/// malformed line or a truncated binary tail.
class TraceReader {
 public:
  TraceReader(std::istream& in, TraceFormat format);
  std::optional<ByteAddress> next();

 private:
  std::istream& in_;
  TraceFormat format_;
  std::size_t line_no_ = 0;
};

std::vector<ByteAddress> read_trace_file(const std::string& path, TraceFormat format);
std::vector<ByteAddress> read_trace(std::istream& in, TraceFormat format);

void write_trace(std::ostream& out, TraceFormat format, std::span<const ByteAddress> addresses);
void write_trace_file(const std::string& path, TraceFormat format,
                      std::span<const ByteAddress> addresses);

/// Synthetic access patterns.  All are deterministic functions of their
/// parameters (and seed, where one is taken).
///
///   uniform: independent byte addresses uniform in [0, span_bytes)
///   loop:    blocks 0, stride, 2*stride, ... (block_count-1)*stride, repeated
///   zipf:    block ranks drawn with probability proportional to 1/rank^exponent
///
/// loop and zipf emit block indices scaled to byte addresses by the given
/// line size.  Invalid parameters (zero span, zero blocks, exponent <= 0)
/// throw ConfigError.
std::vector<ByteAddress> generate_uniform(std::uint64_t span_bytes, std::uint64_t seed,
                                          std::size_t length);
std::vector<ByteAddress> generate_loop(std::uint64_t block_count, std::uint64_t stride_blocks,
                                       std::uint64_t line_size_bytes, std::size_t length);
std::vector<ByteAddress> generate_zipf(std::uint64_t block_count, double exponent,
                                       std::uint64_t line_size_bytes, std::uint64_t seed,
                                       std::size_t length);

}  // namespace fifosim

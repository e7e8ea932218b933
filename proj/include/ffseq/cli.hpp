#pragma once

// Command-line front end: generate, verify and expsum.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ffseq::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitUsage = 64;

inline constexpr const char* kSequenceSchema = "ffprng-sequences/1";

struct RunConfig {
  /// generate | verify | expsum.
  std::string command;
  /// rational | elliptic.
  std::string construction = "rational";
  std::uint32_t p = 2;
  unsigned e = 1;
  unsigned d = 2;
  /// Curve trace, #E = q + 1 + t.
  std::int64_t t = 0;
  /// Elliptic pole-order cap; for expsum, the largest pole order drawn.
  unsigned k = 1;
  /// exhaustive | sample.
  std::string mode = "sample";
  std::uint64_t count = 100;
  std::uint64_t seed = 0;
  /// NL_m degree; 0 disables.
  unsigned m = 0;
  /// Pattern arities; empty disables.
  std::vector<unsigned> r;
  std::size_t pairs = 100;
  std::size_t pattern_sequences = 20;
  std::size_t pattern_tuples = 50;
  std::size_t nl_sequences = 10;
  std::uint64_t cap = 5000;
  /// Empty writes to the output stream.
  std::string out;
  /// csv | json; empty selects the command default.
  std::string format;

  nlohmann::ordered_json to_json() const;
  static RunConfig from_json(const nlohmann::ordered_json& j);
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// RFC-4180 field quoting: quoted iff the field holds a comma, quote or line break.
std::string csv_field(const std::string& s);
/// Shortest round-trip decimal form.
std::string format_double(double x);

/// Parses argv and runs one command. Returns one of the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_generate(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_expsum(const RunConfig& cfg, std::ostream& out);

}  // namespace ffseq::cli

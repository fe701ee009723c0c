#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace nullbound::cli {

enum class Command { length, sequence, bound, report, verify, hilbert, oracle };
const char* to_string(Command c);

enum class OutputFormat { json, text };

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitHypothesis = 4;

/// One invocation. Numeric fields hold numlit text so that symbolic inputs pass through.
struct JobSpec {
  Command command = Command::length;
  std::optional<std::string> f;
  std::optional<unsigned> m;
  std::optional<unsigned> n;
  std::optional<std::string> l;
  std::optional<std::string> D;
  std::optional<unsigned> d;
  std::optional<std::string> a;
  std::optional<std::string> c;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> emit_limit;
  std::optional<std::uint64_t> tail;
  std::optional<std::uint64_t> h;
  std::optional<std::uint64_t> i;
  std::optional<std::string> input;
  bool force = false;
  OutputFormat output = OutputFormat::json;
  std::optional<std::string> cache_path;

  /// Compact JSON with sorted keys; unset fields are omitted.
  std::string to_json() const;
  /// Inverse of to_json. Throws ParseError on unknown fields or bad values.
  static JobSpec from_json(const std::string& text);
  /// to_json without the fields that do not affect the result (output, cache).
  std::string canonical() const;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Parses "nullbound <command> [flags]" (argv[0] is skipped). Throws ParseError.
JobSpec parse_args(int argc, const char* const* argv);

/// The cache file in effect: NULLBOUND_CACHE if set, else spec.cache_path.
std::optional<std::string> cache_file(const JobSpec& spec);

/// Executes the job and writes its JSON (or text) document to out. Input sequences for verify
/// and hilbert come from spec.input, "-" meaning in.
int run(const JobSpec& spec, std::ostream& out, std::istream& in);

/// parse_args then run; parse errors and --help are handled here.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace nullbound::cli

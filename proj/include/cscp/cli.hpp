#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cscp/synth.hpp"

namespace cscp::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,  // bad flags, invalid configuration or malformed input file
  kIo = 3,
};

/// Runs one `cscp` command. `args` holds the full command line including the
/// program name. Diagnostics go to `err`, help text to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a generator config JSON document. Absent keys keep their defaults;
/// unknown keys and ill-typed values raise ConfigError.
GeneratorConfig parse_generator_config(std::string_view json_text);

}  // namespace cscp::cli

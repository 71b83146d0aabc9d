#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace nos::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kFail = 1, kInconclusive = 2, kUsage = 3 };

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Integer list from "a..b" (inclusive, empty when b < a) or "a,b,c".
std::vector<std::uint64_t> parse_range(const std::string& text);

}  // namespace nos::cli

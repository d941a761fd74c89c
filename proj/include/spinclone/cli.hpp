// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace spinclone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses a config bundle: either a JSON object or flat `key = value` lines
/// (blank lines and `#` comments ignored). JSON arrays become comma-joined
/// values; nested objects are skipped. Throws std::runtime_error on bad syntax.
std::map<std::string, std::string> parse_config(const std::string& text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace spinclone::cli

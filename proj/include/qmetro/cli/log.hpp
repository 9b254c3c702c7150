// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef QMETRO_CLI_LOG_HPP_
#define QMETRO_CLI_LOG_HPP_

#include <cstdlib>
#include <iostream>
#include <string>

namespace qmetro::cli {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from the LAB_LOG_LEVEL environment variable; default warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("LAB_LOG_LEVEL");
    const std::string v = env ? env : "";
    if (v == "error") return LogLevel::error;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

inline void log(LogLevel level, const std::string& msg) {
  if (level > log_level()) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

}  // namespace qmetro::cli

#endif  // QMETRO_CLI_LOG_HPP_

#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace pdcw {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

/// Level from the PDCW_LOG environment variable ("info" or "debug").
inline LogLevel log_level() {
    static const LogLevel lvl = [] {
        const char* env = std::getenv("PDCW_LOG");
        if (!env) return LogLevel::quiet;
        const std::string s(env);
        if (s == "debug") return LogLevel::debug;
        if (s == "info") return LogLevel::info;
        return LogLevel::quiet;
    }();
    return lvl;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[pdcw] " << msg << '\n';
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << "[pdcw:debug] " << msg << '\n';
}

}  // namespace pdcw

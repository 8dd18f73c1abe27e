#include "hoikit/log.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>

#include <json.hpp>

namespace hoikit {

namespace {

std::atomic<int> g_level{-1};  // -1 = not resolved yet
std::mutex g_mutex;

LogLevel resolve_level() {
    int lvl = g_level.load();
    if (lvl >= 0) return static_cast<LogLevel>(lvl);
    const char* env = std::getenv("HOI_KIT_LOG");
    LogLevel resolved = LogLevel::warn;
    if (env) {
        const std::string s(env);
        if (s == "error") resolved = LogLevel::error;
        else if (s == "warn") resolved = LogLevel::warn;
        else if (s == "info") resolved = LogLevel::info;
        else if (s == "debug") resolved = LogLevel::debug;
    }
    g_level.store(static_cast<int>(resolved));
    return resolved;
}

void emit(LogLevel level, const char* name, const std::string& msg) {
    if (static_cast<int>(level) > static_cast<int>(resolve_level())) return;
    nlohmann::json record{{"level", name}, {"msg", msg}};
    std::lock_guard<std::mutex> lock(g_mutex);
    std::fprintf(stderr, "%s\n", record.dump().c_str());
}

}  // namespace

void set_log_level(LogLevel level) { g_level.store(static_cast<int>(level)); }

LogLevel log_level() { return resolve_level(); }

void log_error(const std::string& msg) { emit(LogLevel::error, "error", msg); }
void log_warn(const std::string& msg) { emit(LogLevel::warn, "warn", msg); }
void log_info(const std::string& msg) { emit(LogLevel::info, "info", msg); }
void log_debug(const std::string& msg) { emit(LogLevel::debug, "debug", msg); }

}  // namespace hoikit

#pragma once

#include <string>

namespace hoikit {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Level comes from HOI_KIT_LOG (error|warn|info|debug) the first time a
/// message is emitted; set_log_level overrides it. Messages go to stderr as
/// one-line JSON records: {"level":"warn","msg":"..."}.
void set_log_level(LogLevel level);
LogLevel log_level();

void log_error(const std::string& msg);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace hoikit

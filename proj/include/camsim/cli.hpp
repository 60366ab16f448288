#pragma once

#include <mutex>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

namespace camsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

enum class LogLevel { kDebug, kInfo, kWarning, kError };

LogLevel parse_log_level(const std::string& name);

/// Line-delimited JSON logger. Events carry a "level" field ("debug", "info",
/// "warning" or "error"); a "ts" field is added when `timestamps` is set.
class JsonLogger {
 public:
  JsonLogger(std::ostream& out, LogLevel threshold = LogLevel::kInfo,
             bool timestamps = true);

  void log(nlohmann::json event);
  void info(const std::string& event, nlohmann::json fields = nlohmann::json::object());
  void warning(const std::string& event, nlohmann::json fields = nlohmann::json::object());
  void error(const std::string& event, nlohmann::json fields = nlohmann::json::object());

 private:
  std::ostream& out_;
  LogLevel threshold_;
  bool timestamps_;
  std::mutex mutex_;
};

/// Runs the camsim command line. `args` excludes the program name. Returns
/// kExitOk, kExitUsage for bad flags or values, kExitData for unreadable or
/// unusable inputs.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace camsim::cli

#include <chrono>
#include <ctime>

#include "camsim/cli.hpp"
#include "camsim/core/errors.hpp"

namespace camsim::cli {
namespace {

LogLevel level_of(const nlohmann::json& event) {
  const auto it = event.find("level");
  if (it == event.end() || !it->is_string()) return LogLevel::kInfo;
  try {
    return parse_log_level(it->get<std::string>());
  } catch (const ValueError&) {
    return LogLevel::kInfo;
  }
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch()) % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  const auto n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%.*s.%03dZ", static_cast<int>(n), buf,
                static_cast<int>(ms.count()));
  return out;
}

}  // namespace

LogLevel parse_log_level(const std::string& name) {
  if (name == "debug") return LogLevel::kDebug;
  if (name == "info") return LogLevel::kInfo;
  if (name == "warning" || name == "warn") return LogLevel::kWarning;
  if (name == "error") return LogLevel::kError;
  throw ValueError("unknown log level '" + name + "'");
}

JsonLogger::JsonLogger(std::ostream& out, LogLevel threshold, bool timestamps)
    : out_(out), threshold_(threshold), timestamps_(timestamps) {}

void JsonLogger::log(nlohmann::json event) {
  if (!event.contains("level")) event["level"] = "info";
  if (level_of(event) < threshold_) return;
  if (timestamps_) event["ts"] = utc_now();
  std::lock_guard lock(mutex_);
  out_ << event.dump() << '\n';
  out_.flush();
}

void JsonLogger::info(const std::string& event, nlohmann::json fields) {
  fields["level"] = "info";
  fields["event"] = event;
  log(std::move(fields));
}

void JsonLogger::warning(const std::string& event, nlohmann::json fields) {
  fields["level"] = "warning";
  fields["event"] = event;
  log(std::move(fields));
}

void JsonLogger::error(const std::string& event, nlohmann::json fields) {
  fields["level"] = "error";
  fields["event"] = event;
  log(std::move(fields));
}

}  // namespace camsim::cli

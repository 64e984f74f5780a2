#pragma once

#include <functional>
#include <string_view>

namespace topicforge {

enum class LogLevel { Info, Warning };

using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide sink. Passing an empty function restores the
/// default, which writes warnings to stderr and drops info messages.
void set_log_sink(LogSink sink);

void log_info(std::string_view message);
void log_warning(std::string_view message);

}  // namespace topicforge

#include "topicforge/error.hpp"
#include "topicforge/log.hpp"

#include <iostream>
#include <mutex>

namespace topicforge {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Config: return "config error";
        case ErrorKind::Data: return "data error";
        case ErrorKind::Numeric: return "numeric failure";
        case ErrorKind::Io: return "I/O error";
        case ErrorKind::Format: return "format error";
        case ErrorKind::Corruption: return "corruption error";
        case ErrorKind::EmptyInput: return "empty input";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::Http: return "HTTP error";
        case ErrorKind::DimensionMismatch: return "dimension mismatch";
    }
    return "unknown error";
}

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Config:
        case ErrorKind::InvalidArgument:
            return 1;
        case ErrorKind::Numeric:
            return 3;
        default:
            return 2;
    }
}

namespace {

std::mutex sink_mutex;
LogSink current_sink;

void emit(LogLevel level, std::string_view message) {
    std::lock_guard lock(sink_mutex);
    if (current_sink) {
        current_sink(level, message);
        return;
    }
    if (level == LogLevel::Warning) {
        std::cerr << "warning: " << message << '\n';
    }
}

}  // namespace

void set_log_sink(LogSink sink) {
    std::lock_guard lock(sink_mutex);
    current_sink = std::move(sink);
}

void log_info(std::string_view message) { emit(LogLevel::Info, message); }
void log_warning(std::string_view message) { emit(LogLevel::Warning, message); }

}  // namespace topicforge

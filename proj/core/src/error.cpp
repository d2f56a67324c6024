#include "hurst/error.hpp"

namespace hurst {

Error::Error(ErrorKind kind, std::string module, const std::string& message)
    : std::runtime_error(module + ": " + message), kind_(kind), module_(std::move(module)) {}

void throw_usage(const std::string& module, const std::string& message) {
    throw Error(ErrorKind::Usage, module, message);
}

void throw_data(const std::string& module, const std::string& message) {
    throw Error(ErrorKind::Data, module, message);
}

void throw_internal(const std::string& module, const std::string& message) {
    throw Error(ErrorKind::Internal, module, message);
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Data: return "data";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace hurst
